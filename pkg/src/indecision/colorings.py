"""Exact combinatorics of synchrony patterns on the m x n influence grid.

Everything here that decides a yes/no question (balance, subspace
dimensions, axiality, conjugacy, orbital versus exotic) is computed in exact
integer or rational arithmetic; floating point appears only in the numeric
verification half of the stable-equilibrium synthesis.

Contents:

* balance checking and the grid-tiling normal form (every balanced coloring
  is conjugate to a grid of Latin rectangles with pairwise disjoint colors);
* the dimension of a synchrony subspace inside the doubly-zero-sum
  (dissensus) subspace, by rational rank;
* structural enumeration of all axial colorings (dimension exactly 1),
  which come in three families:
    A: optional one-color column block forced to value 0, next to a
       two-color Latin rectangle on the remaining columns;
    B: the transpose arrangement (one-color row block on top);
    C: a 2 x 2 grid of one-color blocks;
* isotropy subgroups in S_m x S_n, their cell orbits, and the resulting
  orbital/exotic verdict (orbital = the pattern is exactly the fixed cells
  of its isotropy group);
* the 4-row sufficiency test for exotic two-color Latin rectangles via
  column-pair multiplicities;
* exact value assignments spanning each axial pattern's line;
* synthesis of an admissible map with a prescribed linearly stable
  equilibrium on any balanced coloring (Hermite interpolation in the node's
  own variable).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .integrate import fd_jacobian
from .patterns import Coloring

__all__ = [
    "NotBalancedError",
    "SearchBudgetError",
    "LatinRectangleBlock",
    "RectangleTiling",
    "AxialColoring",
    "AxialCatalog",
    "IsotropyReport",
    "StablePolynomialMap",
    "SynthesisReport",
    "is_balanced",
    "balance_witness",
    "is_latin_rectangle",
    "tiling_decomposition",
    "dim_Vd_intersection",
    "dissensus_intersection_basis",
    "is_axial_Vd",
    "canonical_form",
    "enumerate_axial",
    "isotropy_subgroup",
    "classify_orbital_exotic",
    "column_pair_multiplicities",
    "column_type_counts",
    "exotic_sufficient_4xn",
    "axial_values",
    "axial_value_matrix",
    "synthesize_stable_admissible",
    "all_colorings",
]


class NotBalancedError(ValueError):
    """Raised when a tiling decomposition is requested for an unbalanced
    coloring; carries a witness pair of same-colored cells whose input
    multisets differ."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"coloring is not balanced: cells {witness[0]} and "
                         f"{witness[1]} have the same color but different "
                         f"{witness[2]} input multisets")


class SearchBudgetError(RuntimeError):
    """A permutation search would exceed its configured budget."""


# ---------------------------------------------------------------------------
# balance and the tiling normal form
# ---------------------------------------------------------------------------

def _input_signatures(c: Coloring):
    """Per cell: color count vectors of its row inputs, column inputs and
    diagonal inputs (own cell excluded from row/column, included back in the
    complement count)."""
    m, n, K = c.m, c.n, c.num_colors
    rowcnt = [[0] * K for _ in range(m)]
    colcnt = [[0] * K for _ in range(n)]
    total = [0] * K
    for i in range(m):
        for j in range(n):
            col = c.cells[i][j]
            rowcnt[i][col] += 1
            colcnt[j][col] += 1
            total[col] += 1
    sigs = {}
    for i in range(m):
        for j in range(n):
            col = c.cells[i][j]
            row = tuple(rowcnt[i][k] - (k == col) for k in range(K))
            cln = tuple(colcnt[j][k] - (k == col) for k in range(K))
            diag = tuple(total[k] - rowcnt[i][k] - colcnt[j][k] + (k == col)
                         for k in range(K))
            sigs[(i, j)] = (row, cln, diag)
    return sigs


def balance_witness(c: Coloring):
    """None when balanced, otherwise ((i1,j1), (i2,j2), kind) for one pair of
    same-colored cells with differing input multisets."""
    sigs = _input_signatures(c)
    rep: dict[int, tuple] = {}
    for i in range(c.m):
        for j in range(c.n):
            col = c.cells[i][j]
            if col not in rep:
                rep[col] = (i, j)
                continue
            ri, rj = rep[col]
            ref, cur = sigs[(ri, rj)], sigs[(i, j)]
            if ref != cur:
                kind = ("row", "column", "diagonal")[
                    next(k for k in range(3) if ref[k] != cur[k])]
                return ((ri, rj), (i, j), kind)
    return None


def is_balanced(c: Coloring) -> bool:
    """Same-colored cells must see the same color multisets through each of
    the three arrow types (row, column, diagonal)."""
    return balance_witness(c) is None


def is_latin_rectangle(block) -> bool:
    """Each color appears the same number of times in every row and the same
    number of times in every column of the block."""
    rows = [tuple(r) for r in (block.cells if isinstance(block, Coloring) else block)]
    if not rows or not rows[0]:
        return False
    colors = sorted({x for r in rows for x in r})

    def counts(line):
        return tuple(sum(1 for x in line if x == col) for col in colors)

    row_counts = {counts(r) for r in rows}
    col_counts = {counts(col) for col in zip(*rows)}
    return len(row_counts) == 1 and len(col_counts) == 1


@dataclass(frozen=True)
class LatinRectangleBlock:
    """One tile: which rows and columns it occupies (original indices, in
    conjugated order) and its sub-array of color ids."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    colors: tuple[tuple[int, ...], ...]

    @property
    def color_set(self) -> frozenset:
        return frozenset(x for row in self.colors for x in row)


@dataclass(frozen=True)
class RectangleTiling:
    """Grid tiling of a balanced coloring.  `conjugation` is (row_perm,
    col_perm) with perm[k] = original index placed at position k; applying
    it makes the blocks contiguous, row groups stacked, column groups side
    by side."""

    blocks: tuple[LatinRectangleBlock, ...]
    conjugation: tuple[tuple[int, ...], tuple[int, ...]]
    row_groups: tuple[tuple[int, ...], ...]
    col_groups: tuple[tuple[int, ...], ...]

    @property
    def color_counts(self) -> tuple[int, ...]:
        return tuple(len(b.color_set) for b in self.blocks)

    def axial_dimension_count(self) -> int:
        """sum of per-block color counts - (#row groups) - (#col groups) + 1."""
        return sum(self.color_counts) - len(self.row_groups) - len(self.col_groups) + 1


def tiling_decomposition(c: Coloring) -> RectangleTiling:
    """Decompose a balanced coloring into its grid of Latin rectangles.

    Row groups are the distinct row supports of the colors, column groups
    the distinct column supports; each (row group, column group) block must
    be a Latin rectangle and distinct blocks automatically use disjoint
    colors.  Raises NotBalancedError (with witness) when any of this fails.
    """
    m, n = c.m, c.n
    rows_of: dict[int, frozenset] = {}
    cols_of: dict[int, frozenset] = {}
    for col in range(c.num_colors):
        rows_of[col] = frozenset(i for i in range(m)
                                 if any(x == col for x in c.cells[i]))
        cols_of[col] = frozenset(j for j in range(n)
                                 if any(c.cells[i][j] == col for i in range(m)))

    def fail():
        witness = balance_witness(c)
        assert witness is not None, "tiling failed on a balanced coloring"
        raise NotBalancedError(witness)

    row_sets = set(rows_of.values())
    col_sets = set(cols_of.values())
    for a, b in combinations(row_sets, 2):
        if a & b:
            fail()
    for a, b in combinations(col_sets, 2):
        if a & b:
            fail()

    # every cell's color must live exactly on (row group of i) x (col group of j)
    row_group_of = {}
    for rs in row_sets:
        for i in rs:
            row_group_of[i] = rs
    col_group_of = {}
    for cs in col_sets:
        for j in cs:
            col_group_of[j] = cs
    for i in range(m):
        for j in range(n):
            col = c.cells[i][j]
            if rows_of[col] != row_group_of[i] or cols_of[col] != col_group_of[j]:
                fail()

    row_groups = sorted(row_sets, key=min)
    col_groups = sorted(col_sets, key=min)
    blocks = []
    for rs in row_groups:
        for cs in col_groups:
            rr, cc = sorted(rs), sorted(cs)
            sub = tuple(tuple(c.cells[i][j] for j in cc) for i in rr)
            if not is_latin_rectangle(sub):
                fail()
            blocks.append(LatinRectangleBlock(rows=tuple(rr), cols=tuple(cc),
                                              colors=sub))
    row_perm = tuple(i for rs in row_groups for i in sorted(rs))
    col_perm = tuple(j for cs in col_groups for j in sorted(cs))
    return RectangleTiling(blocks=tuple(blocks),
                           conjugation=(row_perm, col_perm),
                           row_groups=tuple(tuple(sorted(rs)) for rs in row_groups),
                           col_groups=tuple(tuple(sorted(cs)) for cs in col_groups))


# ---------------------------------------------------------------------------
# exact linear algebra on color values
# ---------------------------------------------------------------------------

def _sum_constraints(c: Coloring) -> list[list[int]]:
    """Rows: per grid row and per grid column, the count of each color."""
    K = c.num_colors
    rows = []
    for i in range(c.m):
        v = [0] * K
        for j in range(c.n):
            v[c.cells[i][j]] += 1
        rows.append(v)
    for j in range(c.n):
        v = [0] * K
        for i in range(c.m):
            v[c.cells[i][j]] += 1
        rows.append(v)
    return rows


def _exact_rref(rows: list[list[Fraction]]):
    """In-place reduced row echelon form; returns pivot column list."""
    if not rows:
        return []
    ncol = len(rows[0])
    piv_cols = []
    r = 0
    for col in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    return piv_cols


def dim_Vd_intersection(c: Coloring) -> int:
    """Dimension (exact, over the rationals) of the space of color-constant
    states whose row sums and column sums all vanish."""
    mat = [[Fraction(x) for x in row] for row in _sum_constraints(c)]
    rank = len(_exact_rref(mat))
    return c.num_colors - rank


def dissensus_intersection_basis(c: Coloring) -> list[tuple[Fraction, ...]]:
    """Exact basis (per-color value vectors) of the same space."""
    mat = [[Fraction(x) for x in row] for row in _sum_constraints(c)]
    piv_cols = _exact_rref(mat)
    K = c.num_colors
    free = [k for k in range(K) if k not in piv_cols]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * K
        vec[fc] = Fraction(1)
        for r, pc in enumerate(piv_cols):
            vec[pc] = -mat[r][fc]
        basis.append(tuple(vec))
    return basis


def is_axial_Vd(c: Coloring) -> bool:
    """Balanced and meeting the dissensus subspace in exactly one dimension
    (the diagonal of fully synchronous states meets it only at 0, so no
    separate check is needed for that)."""
    return is_balanced(c) and dim_Vd_intersection(c) == 1


# ---------------------------------------------------------------------------
# canonical forms and conjugacy
# ---------------------------------------------------------------------------

def _column_word_min(cols: list[tuple[int, ...]], m: int, n: int):
    """Lexicographically minimal relabeled column-major word over column
    orders, colors renumbered by first occurrence.  Only columns achieving
    the minimal next chunk are expanded; identical columns are expanded
    once."""
    best = None
    stack = [(tuple(range(n)), {}, ())]
    while stack:
        remaining, mapping, word = stack.pop()
        if not remaining:
            if best is None or word < best:
                best = word
            continue
        if best is not None and word > best[:len(word)]:
            continue
        by_chunk: dict[tuple, list] = {}
        for idx in remaining:
            mp = dict(mapping)
            chunk = []
            for v in cols[idx]:
                if v not in mp:
                    mp[v] = len(mp)
                chunk.append(mp[v])
            by_chunk.setdefault(tuple(chunk), []).append((idx, mp))
        min_chunk = min(by_chunk)
        seen = set()
        for idx, mp in by_chunk[min_chunk]:
            if cols[idx] in seen:
                continue
            seen.add(cols[idx])
            rest = tuple(x for x in remaining if x != idx)
            stack.append((rest, mp, word + min_chunk))
    return best


@lru_cache(maxsize=4096)
def canonical_form(c: Coloring, budget: float = 1e9) -> Coloring:
    """Canonical representative of a coloring under row and column
    permutations.

    The representative minimizes the column-major word of the grid after
    dense relabeling in first-occurrence order, over all row permutations
    and column orders; two colorings are conjugate iff their canonical
    forms are equal.
    """
    m, n = c.m, c.n
    if factorial(m) * factorial(n) > budget:
        raise SearchBudgetError(f"canonical form search for {m}x{n} exceeds budget {budget:g}")
    cols0 = [tuple(c.cells[i][j] for i in range(m)) for j in range(n)]
    best = None
    for sigma in permutations(range(m)):
        cols = [tuple(col[s] for s in sigma) for col in cols0]
        word = _column_word_min(cols, m, n)
        if best is None or word < best:
            best = word
    grid = [[best[j * m + i] for j in range(n)] for i in range(m)]
    return Coloring.from_rows(grid)


# ---------------------------------------------------------------------------
# two-color Latin rectangles
# ---------------------------------------------------------------------------

def _two_color_latin_indicators(p: int, q: int):
    """All p x q 0/1 arrays with constant row sums and constant column sums,
    both symbols present.  DFS over rows with column-capacity pruning."""
    out = []
    for a in range(1, q):
        if (a * p) % q:
            continue
        b = a * p // q
        if not 1 <= b <= p - 1:
            continue
        row_choices = list(combinations(range(q), a))
        colcnt = [0] * q

        def dfs(i, acc):
            if i == p:
                out.append(tuple(acc))
                return
            for comb in row_choices:
                if any(colcnt[j] + 1 > b for j in comb):
                    continue
                for j in comb:
                    colcnt[j] += 1
                acc.append(comb)
                dfs(i + 1, acc)
                acc.pop()
                for j in comb:
                    colcnt[j] -= 1

        dfs(0, [])
    grids = []
    for mat in out:
        grids.append(tuple(tuple(1 if j in mat[i] else 0 for j in range(q))
                           for i in range(p)))
    return grids


def _indicator_key(g) -> tuple:
    """Conjugacy key of a 0/1 grid up to row perms, column perms and symbol
    swap: the sorted column tuples, minimized over row permutations and the
    complement."""
    p, q = len(g), len(g[0])
    best = None
    comp = tuple(tuple(1 - x for x in row) for row in g)
    for mat in (g, comp):
        for sigma in permutations(range(p)):
            key = tuple(sorted(tuple(mat[s][j] for s in sigma) for j in range(q)))
            if best is None or key < best:
                best = key
    return best


def _two_color_latin_reps(p: int, q: int):
    reps = {}
    for g in _two_color_latin_indicators(p, q):
        key = _indicator_key(g)
        if key not in reps:
            reps[key] = g
    return [reps[k] for k in sorted(reps)]


# ---------------------------------------------------------------------------
# axial colorings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxialColoring:
    """One axial pattern: its structural case, the coloring, and the data
    needed to write down the exact value line.

    red_color / blue_color / yellow_color are ids in `coloring` (cases A/B);
    block_colors maps the four case-C blocks (11, 12, 21, 22) to ids.
    """

    case: str
    coloring: Coloring
    zero_block: tuple[int, ...] | None = None
    latin_block: LatinRectangleBlock | None = None
    split: tuple[int, int] | None = None
    rho: Fraction | None = None
    red_color: int | None = None
    blue_color: int | None = None
    yellow_color: int | None = None
    block_colors: tuple[int, int, int, int] | None = None

    def describe(self) -> str:
        if self.case == "C":
            return f"case C split {self.split}"
        z = len(self.zero_block or ())
        axis = "columns" if self.case == "A" else "rows"
        zb = f", zero block of {z} {axis}" if z else ""
        return f"case {self.case} rho={self.rho}{zb}"


class AxialCatalog:
    """Axial colorings of one shape, deduplicated up to conjugacy and sorted
    by canonical form; supports canonical-form lookup of observed patterns."""

    def __init__(self, shape, entries):
        self.shape = shape
        self.entries = tuple(entries)
        self._by_canonical = {canonical_form(e.coloring): idx
                              for idx, e in enumerate(self.entries)}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    def index_of(self, e: AxialColoring) -> int:
        return self._by_canonical[canonical_form(e.coloring)]

    def match(self, c: Coloring) -> AxialColoring | None:
        idx = self._by_canonical.get(canonical_form(c))
        return None if idx is None else self.entries[idx]

    def export_json(self) -> str:
        items = []
        for e in self.entries:
            items.append({
                "case": e.case,
                "coloring": [list(row) for row in e.coloring.cells],
                "rho": None if e.rho is None else str(e.rho),
                "split": None if e.split is None else list(e.split),
                "verdict": classify_orbital_exotic(e.coloring),
            })
        return json.dumps(items, sort_keys=True, indent=2)


def _case_c_coloring(m, n, r, s) -> Coloring:
    grid = [[(0 if i < r else 2) + (0 if j < s else 1) for j in range(n)]
            for i in range(m)]
    return Coloring.from_rows(grid)


@lru_cache(maxsize=32)
def enumerate_axial(shape, max_cells: int = 42) -> AxialCatalog:
    """All axial colorings of the shape, up to conjugacy.  The returned
    catalog is cached per shape and must be treated as read-only.

    Case C runs over all block splits (r, s); the split with r = m/2 and
    s = n/2 is skipped because its value line coincides with the coarser
    two-color Latin rectangle of the same block layout, and a branch follows
    the pattern with fewest colors.  Cases A and B run over conjugacy
    representatives of all two-color Latin rectangles, bordered by the
    forced-zero block when they do not fill the grid.
    """
    m, n = shape.m, shape.n
    if m * n > max_cells:
        raise SearchBudgetError(
            f"axial enumeration for {m}x{n} exceeds the {max_cells}-cell guard")

    raw: list[AxialColoring] = []

    for r in range(1, m):
        for s in range(1, n):
            if 2 * r == m and 2 * s == n:
                continue
            col = _case_c_coloring(m, n, r, s)
            raw.append(AxialColoring(
                case="C", coloring=col, split=(r, s),
                block_colors=(col.cells[0][0], col.cells[0][n - 1],
                              col.cells[m - 1][0], col.cells[m - 1][n - 1])))

    for q in range(2, n + 1):
        z = n - q
        for L in _two_color_latin_reps(m, q):
            grid = [[0] * z + [1 + L[i][j] for j in range(q)] for i in range(m)]
            if z == 0:
                grid = [[L[i][j] for j in range(q)] for i in range(m)]
            col = Coloring.from_rows(grid).relabeled()
            ri, rj = next((i, z + j) for i in range(m) for j in range(q)
                          if L[i][j] == 1)
            bi, bj = next((i, z + j) for i in range(m) for j in range(q)
                          if L[i][j] == 0)
            a = sum(L[0])
            raw.append(AxialColoring(
                case="A", coloring=col,
                zero_block=tuple(range(z)) if z else None,
                latin_block=LatinRectangleBlock(
                    rows=tuple(range(m)), cols=tuple(range(z, n)),
                    colors=tuple(tuple(col.cells[i][z:]) for i in range(m))),
                rho=Fraction(a, q),
                red_color=col.cells[ri][rj],
                blue_color=col.cells[bi][bj],
                yellow_color=col.cells[0][0] if z else None))

    for p in range(2, m):
        zr = m - p
        for L in _two_color_latin_reps(p, n):
            grid = [[0] * n for _ in range(zr)] + \
                   [[1 + L[i][j] for j in range(n)] for i in range(p)]
            col = Coloring.from_rows(grid).relabeled()
            ri, rj = next((zr + i, j) for i in range(p) for j in range(n)
                          if L[i][j] == 1)
            bi, bj = next((zr + i, j) for i in range(p) for j in range(n)
                          if L[i][j] == 0)
            a = sum(L[0])
            raw.append(AxialColoring(
                case="B", coloring=col,
                zero_block=tuple(range(zr)),
                latin_block=LatinRectangleBlock(
                    rows=tuple(range(zr, m)), cols=tuple(range(n)),
                    colors=tuple(tuple(col.cells[zr + i]) for i in range(p))),
                rho=Fraction(a, n),
                red_color=col.cells[ri][rj],
                blue_color=col.cells[bi][bj],
                yellow_color=col.cells[0][0]))

    dedup: dict[Coloring, AxialColoring] = {}
    for e in raw:
        can = canonical_form(e.coloring)
        if can not in dedup:
            dedup[can] = e
    ordered = [dedup[k] for k in sorted(dedup, key=lambda col: col.cells)]
    return AxialCatalog(shape, ordered)


# ---------------------------------------------------------------------------
# isotropy subgroups and the orbital / exotic split
# ---------------------------------------------------------------------------

@dataclass
class IsotropyReport:
    group_order: int
    generators: list[tuple[tuple[int, ...], tuple[int, ...]]]
    orbit_partition: tuple[frozenset, ...]
    verdict: str  # "Orbital" | "Exotic"


def _perm_compose(a, b):
    return tuple(a[x] for x in b)


def _closure_sm(gens, m):
    """Subgroup of S_m generated by gens (tuples)."""
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                e2 = _perm_compose(g, el)
                if e2 not in seen:
                    seen.add(e2)
                    nxt.append(e2)
        frontier = nxt
    return seen


def isotropy_subgroup(c: Coloring, budget: float = 1e9) -> IsotropyReport:
    """All (sigma, tau) in S_m x S_n with color(sigma(i), tau(j)) =
    color(i, j), reported as order, a generating set, and the cell-orbit
    partition.

    The search loops over row permutations only: for a fixed sigma, the
    admissible tau are exactly the column matchings of the sigma-permuted
    column vectors, so the pruned search size is m! * (m n) rather than
    m! * n!.  The verdict is Orbital when the cell orbits coincide with the
    color classes (the pattern equals the fixed set of its own isotropy
    group) and Exotic otherwise.
    """
    m, n = c.m, c.n
    if factorial(m) * (2 * m * n) > budget:
        raise SearchBudgetError(f"isotropy search for {m}x{n} exceeds budget {budget:g}")

    cols = [tuple(c.cells[i][j] for i in range(m)) for j in range(n)]
    groups: dict[tuple, list[int]] = {}
    for j, v in enumerate(cols):
        groups.setdefault(v, []).append(j)
    col_counts = {v: len(g) for v, g in groups.items()}

    matching_sigmas = []
    taus = {}
    for sigma in permutations(range(m)):
        target = []
        ok = True
        cnt: dict[tuple, int] = {}
        for j in range(n):
            v = [0] * m
            colj = cols[j]
            for i in range(m):
                v[sigma[i]] = colj[i]
            tv = tuple(v)
            if tv not in col_counts:
                ok = False
                break
            cnt[tv] = cnt.get(tv, 0) + 1
            if cnt[tv] > col_counts[tv]:
                ok = False
                break
            target.append(tv)
        if not ok:
            continue
        matching_sigmas.append(sigma)
        used = {v: 0 for v in groups}
        tau = [0] * n
        for j, tv in enumerate(target):
            tau[j] = groups[tv][used[tv]]
            used[tv] += 1
        taus[sigma] = tuple(tau)

    stab = 1
    for g in groups.values():
        stab *= factorial(len(g))
    order = len(matching_sigmas) * stab

    # generators: column transpositions within equal-column groups, plus one
    # coset representative per generator of the row-permutation image
    gens: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    ident_rows = tuple(range(m))
    for g in groups.values():
        for a, b in zip(g, g[1:]):
            tau = list(range(n))
            tau[a], tau[b] = tau[b], tau[a]
            gens.append((ident_rows, tuple(tau)))
    image_gens = []
    closed = {ident_rows}
    for sigma in matching_sigmas:
        if sigma not in closed:
            image_gens.append(sigma)
            closed = _closure_sm(image_gens, m)
    gens.extend((sigma, taus[sigma]) for sigma in image_gens)

    # orbits of the generated group = components of the generator moves
    parent = list(range(m * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sigma, tau in gens:
        for i in range(m):
            for j in range(n):
                a, b = find(i * n + j), find(sigma[i] * n + tau[j])
                if a != b:
                    parent[a] = b
    orbits: dict[int, set] = {}
    for i in range(m):
        for j in range(n):
            orbits.setdefault(find(i * n + j), set()).add((i, j))
    orbit_partition = tuple(sorted((frozenset(s) for s in orbits.values()),
                                   key=lambda s: sorted(s)))
    colors = tuple(sorted(c.color_classes(), key=lambda s: sorted(s)))
    verdict = "Orbital" if orbit_partition == colors else "Exotic"
    return IsotropyReport(group_order=order, generators=gens,
                          orbit_partition=orbit_partition, verdict=verdict)


@lru_cache(maxsize=4096)
def classify_orbital_exotic(c: Coloring, budget: float = 1e9) -> str:
    """Orbital / Exotic verdict for an axial coloring."""
    if not is_axial_Vd(c):
        raise ValueError("coloring is not axial relative to the dissensus subspace")
    return isotropy_subgroup(c, budget=budget).verdict


# ---------------------------------------------------------------------------
# 4 x n sufficiency for exotic Latin rectangles
# ---------------------------------------------------------------------------

def column_pair_multiplicities(c: Coloring) -> dict[frozenset, int]:
    """For a two-color 4 x n Latin rectangle with 2+2 columns: how many
    columns carry each unordered {rows-of-one-color, complement} pair.
    Keyed by the pair, a frozenset of two frozen row sets."""
    if c.m != 4:
        raise ValueError("column multiplicities are defined for 4-row grids")
    if c.num_colors != 2:
        raise ValueError("need a two-color coloring")
    if not is_latin_rectangle(c.cells):
        raise ValueError("coloring is not a Latin rectangle")
    mu: dict[frozenset, int] = {}
    for j in range(c.n):
        rows0 = frozenset(i for i in range(4) if c.cells[i][j] == 0)
        if len(rows0) != 2:
            raise ValueError("columns must split 2+2 (equal color proportions)")
        key = frozenset({rows0, frozenset(range(4)) - rows0})
        mu[key] = mu.get(key, 0) + 1
    return mu


def column_type_counts(c: Coloring) -> dict[frozenset, int]:
    """Count of columns per column type, a type being the frozen set of rows
    carrying color 0 in that column."""
    counts: dict[frozenset, int] = {}
    for j in range(c.n):
        rows0 = frozenset(i for i in range(c.m) if c.cells[i][j] == 0)
        counts[rows0] = counts.get(rows0, 0) + 1
    return counts


def exotic_sufficient_4xn(c: Coloring) -> bool:
    """Sufficient test for a 4 x n equal-proportion two-color Latin rectangle
    to be exotic: two occurring complementary column pairs have different
    multiplicities.

    Within one pair the two complementary column types occur equally often
    (the pairing law), so the pair multiplicity is well defined.  The test
    is silent (False) when all occurring pairs tie, which includes the
    single-pair block patterns.
    """
    mu = column_pair_multiplicities(c)
    type_counts = column_type_counts(c)
    multiplicities = []
    for pair in mu:
        a, b = tuple(pair)
        cnt_a, cnt_b = type_counts.get(a, 0), type_counts.get(b, 0)
        if cnt_a != cnt_b:
            raise ValueError("pairing law violated: not a Latin rectangle?")
        multiplicities.append(cnt_a)
    return len(set(multiplicities)) >= 2


# ---------------------------------------------------------------------------
# exact axial value lines
# ---------------------------------------------------------------------------

def axial_values(a: AxialColoring, amplitude) -> list[list[Fraction]]:
    """The unique element of the pattern's line with the red (case A/B) or
    top-left block (case C) value equal to `amplitude`; exact rationals,
    all row and column sums are exactly zero."""
    amp = Fraction(amplitude)
    if amp == 0:
        raise ValueError("amplitude must be nonzero")
    c = a.coloring
    if a.case in ("A", "B"):
        rho = a.rho
        values = {a.red_color: amp, a.blue_color: -rho / (1 - rho) * amp}
        if a.yellow_color is not None:
            values[a.yellow_color] = Fraction(0)
    elif a.case == "C":
        r, s = a.split
        m, n = c.m, c.n
        b11, b12, b21, b22 = a.block_colors
        values = {
            b11: amp,
            b12: -Fraction(s, n - s) * amp,
            b21: -Fraction(r, m - r) * amp,
            b22: Fraction(s, n - s) * Fraction(r, m - r) * amp,
        }
    else:
        raise ValueError(f"unknown case {a.case!r}")
    return [[values[col] for col in row] for row in c.cells]


def axial_value_matrix(a: AxialColoring, amplitude: float) -> np.ndarray:
    """Float view of axial_values, for simulation and matching."""
    return np.array([[float(x) for x in row]
                     for row in axial_values(a, Fraction(amplitude))])


# ---------------------------------------------------------------------------
# stable equilibrium synthesis on any balanced coloring
# ---------------------------------------------------------------------------

@dataclass
class StablePolynomialMap:
    """Admissible map g(Z)_ij = f(z_ij) where f is the Hermite interpolant
    with f(v) = 0 and f'(v) = -1 at each prescribed level v.  Because each
    component depends only on its own node value, the map is admissible for
    any arrangement of arrows."""

    coeffs: tuple[Fraction, ...]  # ascending powers, exact
    levels: tuple[Fraction, ...]

    def __call__(self, x: float) -> float:
        acc = 0.0
        for coef in reversed(self.coeffs):
            acc = acc * x + float(coef)
        return acc

    def field(self, Z: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(Z, dtype=float)
        for coef in reversed(self.coeffs):
            acc = acc * Z + float(coef)
        return acc

    def eval_exact(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for coef in reversed(self.coeffs):
            acc = acc * x + coef
        return acc

    def derivative_exact(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * x + k * self.coeffs[k]
        return acc


@dataclass
class SynthesisReport:
    residual_max: float
    jacobian_eigenvalues: list[complex]
    max_eigenvalue_deviation: float
    exact_roots: bool
    exact_slopes: bool


def _hermite_double_nodes(levels: list[Fraction]) -> tuple[Fraction, ...]:
    """Newton-form Hermite interpolation with f(v)=0, f'(v)=-1 at every v,
    expanded to monomial coefficients, all exact."""
    nodes: list[Fraction] = []
    for v in levels:
        nodes.extend((v, v))
    N = len(nodes)
    # divided difference table with repeated nodes
    table = [[Fraction(0)] * N for _ in range(N)]
    for i in range(N):
        table[i][0] = Fraction(0)  # f(v) = 0
    for order in range(1, N):
        for i in range(N - order):
            if nodes[i + order] == nodes[i]:
                # only order 1 can hit this with doubled nodes
                table[i][order] = Fraction(-1)
            else:
                table[i][order] = (table[i + 1][order - 1] - table[i][order - 1]) \
                    / (nodes[i + order] - nodes[i])
    # expand newton form sum_k c_k prod_{l<k} (x - nodes[l])
    coeffs = [Fraction(0)] * N
    basis = [Fraction(1)]  # coefficients of prod so far
    for k in range(N):
        ck = table[0][k]
        for p, b in enumerate(basis):
            coeffs[p] += ck * b
        new_basis = [Fraction(0)] * (len(basis) + 1)
        for p, b in enumerate(basis):
            new_basis[p + 1] += b
            new_basis[p] -= nodes[k] * b
        basis = new_basis
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def synthesize_stable_admissible(c: Coloring, y,
                                 h_fd: float = 1e-3) -> tuple[StablePolynomialMap, SynthesisReport]:
    """Build an admissible map with a linearly stable equilibrium exactly at
    the state y, whose synchrony pattern is the coloring c.

    y must be generic for c: entries are equal iff their cells share a
    color.  One polynomial f interpolates f(v) = 0, f'(v) = -1 at each of
    the distinct levels; the induced map acts cellwise, so the Jacobian at
    y is exactly minus the identity.  The report carries float-level
    residuals and a finite-difference eigenvalue check (Richardson-refined
    central differences at h_fd and h_fd/2, which keeps the verifier's own
    truncation error well below the interpolant's exactness).
    """
    if not is_balanced(c):
        raise ValueError("coloring must be balanced")
    y_arr = [[Fraction(v) for v in row] for row in
             (y.tolist() if isinstance(y, np.ndarray) else y)]
    if len(y_arr) != c.m or any(len(r) != c.n for r in y_arr):
        raise ValueError("state shape does not match coloring")
    level_of: dict[int, Fraction] = {}
    for i in range(c.m):
        for j in range(c.n):
            col = c.cells[i][j]
            if col in level_of:
                if level_of[col] != y_arr[i][j]:
                    raise ValueError("y is not generic: unequal values on one color")
            else:
                level_of[col] = y_arr[i][j]
    levels = [level_of[k] for k in range(c.num_colors)]
    if len(set(levels)) != len(levels):
        raise ValueError("y is not generic: two colors share a value")

    fmap = StablePolynomialMap(coeffs=_hermite_double_nodes(levels),
                               levels=tuple(levels))

    exact_roots = all(fmap.eval_exact(v) == 0 for v in levels)
    exact_slopes = all(fmap.derivative_exact(v) == -1 for v in levels)
    Zf = np.array([[float(v) for v in row] for row in y_arr])
    residual = float(np.abs(fmap.field(Zf)).max())
    J_h = fd_jacobian(fmap.field, Zf, h_fd)
    J_h2 = fd_jacobian(fmap.field, Zf, h_fd / 2.0)
    J = (4.0 * J_h2 - J_h) / 3.0
    eigs = np.linalg.eigvals(J)
    dev = float(np.abs(eigs + 1.0).max())
    report = SynthesisReport(residual_max=residual,
                             jacobian_eigenvalues=[complex(v) for v in eigs],
                             max_eigenvalue_deviation=dev,
                             exact_roots=exact_roots,
                             exact_slopes=exact_slopes)
    return fmap, report


# ---------------------------------------------------------------------------
# exhaustive coloring generation (for oracles and small-grid checks)
# ---------------------------------------------------------------------------

def all_colorings(m: int, n: int):
    """Every coloring of the m x n grid (all set partitions of the cells,
    as restricted-growth strings, relabeled row-major)."""
    N = m * n
    rgs = [0] * N
    maxv = [0] * N
    while True:
        yield Coloring(tuple(tuple(rgs[i * n + j] for j in range(n))
                             for i in range(m)))
        i = N - 1
        while i > 0 and rgs[i] == maxv[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        mv = maxv[i - 1]
        if rgs[i] > mv:
            mv = rgs[i]
        maxv[i] = mv
        for k in range(i + 1, N):
            rgs[k] = 0
            maxv[k] = mv
