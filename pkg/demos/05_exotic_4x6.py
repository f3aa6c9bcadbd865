"""Anatomy of an exotic pattern.

A 4x6 two-color Latin rectangle whose complementary column pairs occur with
unequal multiplicities cannot be the fixed set of any symmetry subgroup:
every symmetry preserves pair multiplicities, so none can merge the two
pairs, yet transitivity on one color would require it.  This script builds
the standard example, verifies the multiplicity argument, computes the full
isotropy subgroup by search, and shows that its cell orbits are strictly
coarser than the two color classes.
"""

from indecision import (
    Coloring,
    classify_orbital_exotic,
    column_type_counts,
    exotic_sufficient_4xn,
    is_axial_Vd,
    isotropy_subgroup,
)

pattern = Coloring.from_rows([
    [0, 1, 0, 0, 1, 1],
    [0, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 1],
    [1, 0, 1, 1, 0, 0],
])
print("pattern (0 = red/low, 1 = blue/high):")
print(pattern.to_text())
print("\naxial:", is_axial_Vd(pattern))

print("\ncolumn types (rows carrying color 0) and their counts:")
for rows0, count in sorted(column_type_counts(pattern).items(), key=lambda kv: sorted(kv[0])):
    print(f"  rows {sorted(r + 1 for r in rows0)}: {count} column(s)")
print("pair multiplicities differ ->", exotic_sufficient_4xn(pattern))

rep = isotropy_subgroup(pattern)
print(f"\nisotropy subgroup order: {rep.group_order}")
print("generators (row permutation, column permutation):")
for sigma, tau in rep.generators:
    print(f"  rows {sigma} cols {tau}")
print(f"\ncell orbits: {len(rep.orbit_partition)} "
      f"(color classes: {pattern.num_colors})")
for orbit in rep.orbit_partition:
    print("  orbit:", sorted((i + 1, j + 1) for i, j in orbit))
print("\nverdict:", classify_orbital_exotic(pattern))
