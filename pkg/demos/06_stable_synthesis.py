"""Every balanced coloring supports a linearly stable equilibrium.

Given a balanced coloring and a generic target state (equal entries exactly
on the color classes), a single-variable polynomial with value 0 and slope
-1 at each level defines an admissible map whose Jacobian at the target is
exactly minus the identity.  Here: a plain block pattern, and the exotic
4x6 pattern with its exact axial values.
"""

from fractions import Fraction

from indecision import (
    Coloring,
    NetworkShape,
    axial_values,
    classify_orbital_exotic,
    enumerate_axial,
    synthesize_stable_admissible,
)

block = Coloring.from_rows([[0, 0, 1], [0, 0, 1], [2, 2, 3]])
y = [[Fraction(1), Fraction(1), Fraction(-2)],
     [Fraction(1), Fraction(1), Fraction(-2)],
     [Fraction(-1, 2), Fraction(-1, 2), Fraction(3)]]
fmap, rep = synthesize_stable_admissible(block, y)
print("block pattern, levels", [str(v) for v in fmap.levels])
print(f"  polynomial degree {len(fmap.coeffs) - 1}, residual {rep.residual_max:.2e}, "
      f"max |eig + 1| = {rep.max_eigenvalue_deviation:.2e}")
print(f"  exact roots: {rep.exact_roots}, exact slopes: {rep.exact_slopes}")

catalog = enumerate_axial(NetworkShape(4, 6))
exotic = next(e for e in catalog
              if classify_orbital_exotic(e.coloring) == "Exotic")
y = axial_values(exotic, 1)
fmap, rep = synthesize_stable_admissible(exotic.coloring, y)
print("\nexotic 4x6 pattern with its exact axial values as the equilibrium:")
print(f"  levels {[str(v) for v in fmap.levels]}")
print(f"  residual {rep.residual_max:.2e}, max |eig + 1| = "
      f"{rep.max_eigenvalue_deviation:.2e}")
print("  -> a linearly stable equilibrium with exactly this synchrony pattern")
