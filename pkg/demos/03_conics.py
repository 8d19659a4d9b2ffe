"""Conics over Q(i) and Q(i)(u, v): symbols, points, parametrizations."""

from brauerconic.conics import (
    TernaryForm,
    conic_symbol,
    conics_isomorphic,
    model_bundle_chart,
    parametrize,
    point_search,
)
from brauerconic.parse import parse_curve, parse_form, parse_point
from brauerconic.poly import U, V

q = parse_form("v*(v^2 - 1)*S^2 - u*(u^2 - 1)*T^2 + u*v*(u^2 - v^2)*R^2")
print("form:  ", q)
print("symbol:", conic_symbol(q))

model = TernaryForm.diagonal(1, -U, -V)
r = conics_isomorphic(q, model, parse_curve("v=1-u"), parse_point("u=0"))
print("same class as S^2 - u T^2 - v R^2:", r.verdict)

# over Q(i) the smallest point of X^2 - 2Y^2 - 3T^2 sits in the first height shell
c = TernaryForm.diagonal(1, -2, -3)
pt = point_search(c, 2)
print()
print("point on", c, ":", pt)
par = parametrize(c, pt)
print("parametrization:")
for k, coord in zip("XYT", par.to_dict()["coordinates"]):
    print(f"  {k} = {coord}")
print("identically on the conic:", par.verification_polynomial() == {})

chart = model_bundle_chart()
print()
print("chart from A^3 onto", chart.to_dict()["equation"])
print("identities:", chart.to_dict()["image_identity"], chart.to_dict()["round_trip_identity"])
