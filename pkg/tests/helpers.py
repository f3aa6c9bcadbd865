"""Shared test utilities: independent oracles and input generators."""

from fractions import Fraction

import numpy as np

from indecision import (
    Coloring,
    all_colorings,
    canonical_form,
    dim_Vd_intersection,
    dissensus_intersection_basis,
    is_balanced,
)
from indecision.colorings import _two_color_latin_indicators

# the known exotic 4x6 two-color pattern (columns: one complementary pair
# once, another pair twice) and the generators of its symmetry group
EXOTIC_4X6 = Coloring.from_rows([
    [0, 1, 0, 0, 1, 1],
    [0, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 1],
    [1, 0, 1, 1, 0, 0],
])

EXOTIC_4X6_GENERATORS = [
    ((2, 3, 0, 1), (1, 0, 2, 3, 4, 5)),      # swap row pairs, swap first two cols
    ((1, 0, 3, 2), (0, 1, 5, 4, 3, 2)),      # swap rows 1-2 and 3-4, reverse cols 3..6
    ((0, 1, 2, 3), (0, 1, 3, 2, 4, 5)),      # swap equal cols 3,4
    ((0, 1, 2, 3), (0, 1, 2, 3, 5, 4)),      # swap equal cols 5,6
]


def compose_pair(a, b):
    """(sigma_a, tau_a) o (sigma_b, tau_b)."""
    return (tuple(a[0][x] for x in b[0]), tuple(a[1][x] for x in b[1]))


def closure_pairs(gens, m, n):
    """Subgroup of S_m x S_n generated by permutation pairs."""
    ident = (tuple(range(m)), tuple(range(n)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                e2 = compose_pair(g, el)
                if e2 not in seen:
                    seen.add(e2)
                    nxt.append(e2)
        frontier = nxt
    return seen


def preserves_coloring(c: Coloring, pair) -> bool:
    sigma, tau = pair
    return all(c.cells[sigma[i]][tau[j]] == c.cells[i][j]
               for i in range(c.m) for j in range(c.n))


def line_of(c: Coloring):
    """The 1-dimensional dissensus intersection as a normalized exact grid."""
    basis = dissensus_intersection_basis(c)
    assert len(basis) == 1
    vec = basis[0]
    flat = [vec[col] for row in c.cells for col in row]
    lead = next(x for x in flat if x != 0)
    return tuple(tuple(vec[col] / lead for col in row) for row in c.cells)


def refines(fine: Coloring, coarse: Coloring) -> bool:
    """True when every color class of `fine` sits inside one class of
    `coarse` (same grid)."""
    mapping = {}
    for i in range(fine.m):
        for j in range(fine.n):
            a, b = fine.cells[i][j], coarse.cells[i][j]
            if mapping.setdefault(a, b) != b:
                return False
    return True


def brute_force_axial(m: int, n: int) -> set:
    """Independent enumeration of the axial classes of a small grid.

    Scans every coloring, keeps the balanced ones whose dissensus
    intersection is one-dimensional, and where several such colorings share
    one line keeps the coarsest (a bifurcating branch follows the pattern
    with fewest colors).  Returns the set of canonical forms.
    """
    found = [c for c in all_colorings(m, n)
             if is_balanced(c) and dim_Vd_intersection(c) == 1]
    by_line = {}
    for c in found:
        by_line.setdefault(line_of(c), []).append(c)
    reps = []
    for group in by_line.values():
        best = min(group, key=lambda c: c.num_colors)
        assert sum(1 for c in group if c.num_colors == best.num_colors) == 1, \
            "ambiguous fewest-colors pick"
        for other in group:
            assert refines(other, best)
        reps.append(best)
    return {canonical_form(c) for c in reps}


def random_balanced_coloring(m: int, n: int, rng) -> Coloring:
    """Random grid tiling by Latin rectangles with disjoint colors: random
    row/column group sizes, each block either one color or a random
    two-color Latin rectangle when one exists."""

    def composition(total):
        sizes = []
        left = total
        while left:
            k = int(rng.integers(1, left + 1))
            sizes.append(k)
            left -= k
        return sizes

    row_sizes = composition(m)
    col_sizes = composition(n)
    grid = [[0] * n for _ in range(m)]
    color = 0
    i0 = 0
    for p in row_sizes:
        j0 = 0
        for q in col_sizes:
            two = _two_color_latin_indicators(p, q)
            if two and rng.random() < 0.6:
                L = two[int(rng.integers(0, len(two)))]
                for di in range(p):
                    for dj in range(q):
                        grid[i0 + di][j0 + dj] = color + L[di][dj]
                color += 2
            else:
                for di in range(p):
                    for dj in range(q):
                        grid[i0 + di][j0 + dj] = color
                color += 1
            j0 += q
        i0 += p
    return Coloring.from_rows(grid).relabeled()


def random_generic_levels(num: int, rng) -> list[Fraction]:
    """Distinct rationals with spacing at least 1/2, shuffled."""
    base = [Fraction(k, 2) - Fraction(num, 4) for k in range(num)]
    offsets = [Fraction(int(rng.integers(0, 3)), 16) for _ in range(num)]
    levels = [b + o for b, o in zip(base, offsets)]
    assert len(set(levels)) == num
    order = list(rng.permutation(num))
    return [levels[k] for k in order]


def sample_balanced_coloring(rng, max_colors=5, max_cells=12):
    """Random balanced coloring with a bounded color count (finite-difference
    verification of the synthesized maps degrades for very high interpolation
    degrees)."""
    while True:
        m = int(rng.integers(2, 5))
        n = int(rng.integers(2, 5))
        if m * n > max_cells:
            continue
        c = random_balanced_coloring(m, n, rng)
        if c.num_colors <= max_colors:
            return c


def clustered_spectrum(eigs, tol=1e-6):
    """Sort real parts and merge within tol: [(mean, count), ...]."""
    vals = sorted(float(np.real(v)) for v in eigs)
    groups = [[vals[0]]]
    for v in vals[1:]:
        if v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(sum(g) / len(g), len(g)) for g in groups]
