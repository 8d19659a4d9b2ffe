"""Deciding equality of two classes on the plane.

An unramified class on the affine plane is constant, so it is enough to pull
it back to a curve, evaluate at a point and decide the resulting constant
symbol.  Every step leaves a justification that can be re-checked.
"""

from brauerconic.brclass import class_equal_certified
from brauerconic.parse import parse_class, parse_curve, parse_point

alpha = parse_class("sym(u*v*(u^2-1)*(v^2-1), u*(v^2-1)*(v^2-u^2))")
uv = parse_class("sym(u, v)")
curve, point = parse_curve("v=1-u"), parse_point("u=0")

r = class_equal_certified(alpha, uv, curve, point)
ext = r.extraction
print("verdict:", r.verdict)
print("restricted to", curve, ":", ext.restricted)
for j in ext.killed:
    print("  dropped", j.symbol, "by", j.rule)
print("left over:", ext.surviving)
print("at", point, ":", ext.constant)
for j in r.decision.steps:
    print("  decided by", j.rule, "re-check:", j.check())

# a negative control: (u, 2v) differs from (u, v) by (u, 2), ramified along u = 0
bad = class_equal_certified(uv, parse_class("sym(u, 2*v)"), curve, point)
p, cls = bad.witness
print()
print("(u, v) vs (u, 2v):", bad.verdict, "with residue", cls.value(), "along", p, "= 0")
