"""Residues of a quaternion class over Q(i)(u, v).

The class below comes from a conic bundle over the (u, v)-plane.  It ramifies
along u = 0 and v = 0 only; the other six divisors in its support carry
residue 1 or -1, and -1 is a square once i is around.
"""

from brauerconic.parse import parse_class
from brauerconic.residues import residue_profile, residue_table

alpha = parse_class("sym(u*v*(u^2-1)*(v^2-1), u*(v^2-1)*(v^2-u^2))")
print("alpha =", alpha)
print()
for row in residue_table(alpha):
    flag = "trivial" if row.trivial else "NONTRIVIAL"
    print(f"  {str(row.divisor):>6} = 0   residue {str(row.value):>3} in Q(i)({row.divisor.residue_var})*   {flag}")

# adding (u, v) cancels both nontrivial residues
diff = alpha + parse_class("sym(u, v)")
print()
print("profile of alpha + (u, v):", dict(residue_profile(diff)) or "empty, the sum is unramified")
