"""The complete catalog of axial synchrony patterns for small networks.

An axial pattern is a balanced coloring whose synchrony subspace cuts a
single line out of the doubly-zero-sum (dissensus) subspace; each one is
guaranteed to carry a bifurcating branch.  They come in three structural
families: a two-color Latin rectangle next to a forced-zero column block
(case A), the transposed arrangement (case B), and 2x2 grids of one-color
blocks (case C).  Patterns that are the fixed set of their own symmetry
subgroup are orbital; the rest are exotic.
"""

from fractions import Fraction

from indecision import NetworkShape, axial_values, catalog_rows

for m, n in ((2, 4), (3, 3), (3, 6), (4, 6)):
    cat, rows = catalog_rows(NetworkShape(m, n))
    by_verdict = {}
    for row in rows:
        by_verdict[row["verdict"]] = by_verdict.get(row["verdict"], 0) + 1
    print(f"\n=== {m}x{n}: {len(rows)} axial classes, {by_verdict} ===")
    for row in rows:
        extra = f"rho={row['rho']}" if row["rho"] else f"split={row['split']}"
        print(f"#{row['index']} case {row['case']} ({extra}) {row['verdict']}")
        for line in row["coloring"].splitlines():
            print("    " + line)

# the exact value line of one pattern: amplitudes balance so that every row
# and column sums to zero
cat, _ = catalog_rows(NetworkShape(3, 6))
entry = cat[0]
print(f"\nvalue line of a 3x6 entry (case {entry.case}), red value 1:")
for row in axial_values(entry, Fraction(1)):
    print("   ", [str(v) for v in row])
