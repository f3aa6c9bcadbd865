"""Core model of value formation on an m x n agent-option influence network.

State is an m x n real array Z, entry z_ij being the value agent i assigns
to option j.  Every node receives three kinds of input: the other entries of
its own row, the other entries of its own column, and all remaining entries.
The vector field treats inputs of the same kind identically, so permuting
agents and/or options permutes the field output the same way (the map is
equivariant under S_m x S_n).

The linearization at the origin block-diagonalizes over four invariant
subspaces (synchronous / consensus / deadlock / dissensus), giving four
closed-form eigenvalues.  This module provides the field itself plus all of
that linear algebra: the 4x4 conversion between interaction gains and the
per-subspace growth coefficients, analytic eigenvalues with multiplicities,
bifurcation thresholds, and the orthogonal projections onto the four
subspaces.

Exactness conventions: the multiset reductions inside ``vector_field`` use
``math.fsum``, which is correctly rounded and therefore independent of
summand order.  As a consequence equivariance and the invariance of
synchrony subspaces hold *bitwise*, not merely to rounding tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "NetworkShape",
    "GainParams",
    "CriticalCoefficients",
    "SigmoidParams",
    "ModelConfig",
    "IrrepDecomposition",
    "ThresholdInfo",
    "sigmoid_eval",
    "vector_field",
    "interaction_matrix",
    "interaction_matrix_det",
    "coefficients_from_gains",
    "gains_from_coefficients",
    "analytic_eigenvalues",
    "bifurcation_threshold",
    "irrep_project",
    "as_state",
]

IRREPS = ("dissensus", "consensus", "deadlock", "sync")


@dataclass(frozen=True)
class NetworkShape:
    """Agent count m and option count n, both at least 2."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"need m, n >= 2, got {self.m}x{self.n}")

    @property
    def cells(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class GainParams:
    """Interaction gains: self (alpha), row arrows (beta), column arrows
    (gamma), diagonal arrows (delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"gain {name} must be finite")

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class CriticalCoefficients:
    """Linear growth coefficients on the four invariant subspaces."""

    c_d: float
    c_c: float
    c_dl: float
    c_s: float

    def __post_init__(self):
        for name in ("c_d", "c_c", "c_dl", "c_s"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"coefficient {name} must be finite")

    def as_tuple(self):
        return (self.c_d, self.c_c, self.c_dl, self.c_s)

    def get(self, which: str) -> float:
        return {"dissensus": self.c_d, "consensus": self.c_c,
                "deadlock": self.c_dl, "sync": self.c_s}[which]


@dataclass(frozen=True)
class SigmoidParams:
    """Offsets of the two saturations; zero offsets are rejected because they
    kill the quadratic terms the bifurcation analysis relies on."""

    s1: float
    s2: float

    def __post_init__(self):
        if self.s1 == 0.0 or self.s2 == 0.0:
            raise ValueError("sigmoid offsets must be nonzero")


@dataclass(frozen=True)
class ModelConfig:
    shape: NetworkShape
    gains: GainParams
    sigmoids: SigmoidParams
    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")


@dataclass(frozen=True)
class ThresholdInfo:
    """1/c for one subspace coefficient; `first` marks the bifurcation that
    is reached first as lambda grows, `reachable` that the threshold is
    positive at all."""

    which: str
    lam: float
    first: bool
    reachable: bool


def as_state(values, shape: NetworkShape) -> np.ndarray:
    """Validate and return a float state array for the given shape."""
    Z = np.asarray(values, dtype=float)
    if Z.shape != (shape.m, shape.n):
        raise ValueError(f"state shape {Z.shape} does not match network {shape.m}x{shape.n}")
    if not np.isfinite(Z).all():
        raise ValueError("state contains non-finite entries")
    return Z


def sigmoid_eval(s: float, x: float) -> float:
    """Saturation S(x) = (tanh(x - s) + tanh(s)) / (1 - tanh(s)^2).

    Normalized so S(0) = 0 and S'(0) = 1; the offset s controls the sign and
    size of the curvature at the origin and must be nonzero.
    """
    if s == 0.0:
        raise ValueError("sigmoid offset must be nonzero")
    t = math.tanh(s)
    return (math.tanh(x - s) + t) / (1.0 - t * t)


@lru_cache(maxsize=64)
def _compiled_field(cfg: ModelConfig):
    """Closure evaluating the vector field for a fixed config.

    Column sums and the per-row sums of saturated inputs are accumulated with
    math.fsum so that the result is a function of the input *multisets*:
    this is what makes equivariance and synchrony invariance exact.
    """
    m, n = cfg.shape.m, cfg.shape.n
    a, b, g, d = cfg.gains.as_tuple()
    s1, s2 = cfg.sigmoids.s1, cfg.sigmoids.s2
    lam = cfg.lam
    t1, t2 = math.tanh(s1), math.tanh(s2)
    den1, den2 = 1.0 - t1 * t1, 1.0 - t2 * t2
    fsum = math.fsum

    def field(Z: np.ndarray) -> np.ndarray:
        cols = Z.T.tolist()
        C = np.array([fsum(col) for col in cols])
        U = a * Z + g * (C - Z)
        S1 = (np.tanh(U - s1) + t1) / den1
        W = b * Z + d * (C - Z)
        S2 = (np.tanh(W - s2) + t2) / den2
        T = np.array([[fsum(row)] for row in S2.tolist()])
        return -Z + lam * (S1 + T - S2)

    return field


def vector_field(Z, cfg: ModelConfig) -> np.ndarray:
    """Time derivative of the value state.

    dz_ij/dt = -z_ij + lam * ( S1(alpha z_ij + gamma * sum_{k!=i} z_kj)
                               + sum_{l!=j} S2(beta z_il + delta * sum_{k!=i} z_kl) )
    """
    Z = as_state(Z, cfg.shape)
    return _compiled_field(cfg)(Z)


def interaction_matrix(shape: NetworkShape) -> list[list[int]]:
    """Integer matrix L mapping (alpha, beta, gamma, delta) to
    (c_d, c_c, c_dl, c_s)."""
    m, n = shape.m, shape.n
    return [
        [1, -1, -1, 1],
        [1, -1, m - 1, 1 - m],
        [1, n - 1, -1, 1 - n],
        [1, n - 1, m - 1, (m - 1) * (n - 1)],
    ]


def interaction_matrix_det(shape: NetworkShape) -> Fraction:
    """Determinant of L, computed exactly (equals -m^2 n^2)."""
    mat = [[Fraction(x) for x in row] for row in interaction_matrix(shape)]
    det = Fraction(1)
    for c in range(4):
        piv = next((r for r in range(c, 4) if mat[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, 4):
            f = mat[r][c] * inv
            for k in range(c, 4):
                mat[r][k] -= f * mat[c][k]
    return det


def coefficients_from_gains(g: GainParams, shape: NetworkShape) -> CriticalCoefficients:
    """Growth coefficients of the four invariant subspaces, c = L @ gains."""
    m, n = shape.m, shape.n
    a, b, gm, d = g.as_tuple()
    return CriticalCoefficients(
        c_d=a - b - gm + d,
        c_c=a - b + (m - 1) * (gm - d),
        c_dl=a - gm + (n - 1) * (b - d),
        c_s=a + (n - 1) * b + (m - 1) * gm + (m - 1) * (n - 1) * d,
    )


def gains_from_coefficients(c: CriticalCoefficients, shape: NetworkShape) -> GainParams:
    """Unique gains realizing the given coefficients (L is invertible for all
    m, n >= 2, det L = -m^2 n^2)."""
    L = np.array(interaction_matrix(shape), dtype=float)
    sol = np.linalg.solve(L, np.array(c.as_tuple()))
    return GainParams(*sol)


def analytic_eigenvalues(c: CriticalCoefficients, lam: float,
                         shape: NetworkShape) -> list[tuple[float, int]]:
    """Eigenvalues of the linearization at the origin with multiplicities,
    ordered (dissensus, consensus, deadlock, sync)."""
    m, n = shape.m, shape.n
    return [
        (-1.0 + lam * c.c_d, (m - 1) * (n - 1)),
        (-1.0 + lam * c.c_c, n - 1),
        (-1.0 + lam * c.c_dl, m - 1),
        (-1.0 + lam * c.c_s, 1),
    ]


def bifurcation_threshold(c: CriticalCoefficients, which: str) -> ThresholdInfo:
    """Critical lambda = 1/c for one subspace.

    `first` is set when that coefficient is the strict maximum among the
    positive ones, i.e. its eigenvalue crosses zero before any other as
    lambda increases from 0.  A nonpositive coefficient has no positive
    threshold; zero has none at all and is rejected.
    """
    val = c.get(which)
    if val == 0.0:
        raise ValueError(f"coefficient for {which!r} is zero: no finite threshold")
    positives = [x for x in c.as_tuple() if x > 0.0]
    first = val > 0.0 and all(val > x for x in positives if x != val) \
        and positives.count(val) == 1
    return ThresholdInfo(which=which, lam=1.0 / val, first=first, reachable=val > 0.0)


@dataclass(frozen=True)
class IrrepDecomposition:
    """Orthogonal components of a state: constant part, identical zero-sum
    rows, identical zero-sum columns, and the doubly zero-sum remainder."""

    sync: np.ndarray
    consensus: np.ndarray
    deadlock: np.ndarray
    dissensus: np.ndarray

    def recombined(self) -> np.ndarray:
        return self.sync + self.consensus + self.deadlock + self.dissensus


def irrep_project(Z) -> IrrepDecomposition:
    """Split Z into its four invariant-subspace components.

    sync: grand mean everywhere;  consensus: column means minus grand mean,
    copied down rows;  deadlock: row means minus grand mean, copied across
    columns;  dissensus: what is left (all row and column sums zero).
    """
    Z = np.asarray(Z, dtype=float)
    m, n = Z.shape
    grand = Z.mean()
    colmean = Z.mean(axis=0, keepdims=True)
    rowmean = Z.mean(axis=1, keepdims=True)
    sync = np.full_like(Z, grand)
    consensus = np.broadcast_to(colmean - grand, Z.shape).copy()
    deadlock = np.broadcast_to(rowmean - grand, Z.shape).copy()
    dissensus = Z - sync - consensus - deadlock
    return IrrepDecomposition(sync=sync, consensus=consensus,
                              deadlock=deadlock, dissensus=dissensus)
