"""Comparing 2-component links with the Hopf link at the abelian level.

Run: python3 demos/hopf_obstruction.py
"""

from linkgate.laurent import format_poly, parse_poly
from linkgate.link_codec import builtin
from linkgate.obstruction import exact_norm_test, hopf_test, hopf_test_poly, pair_test

for name in ("hopf", "hopf_r2", "hopf_braid", "hopf_trefoil"):
    r = hopf_test(builtin(name), link=name)
    print(f"{name:<13} rank {r.rank}  Δ = {format_poly(r.torsion_poly):<16} norm {r.norm.status:<4} -> {r.verdict}")

# polynomial fixtures: a norm, a non-norm, and one failing at (1, 1)
for text in ("-2*t + 5 - 2*t^-1", "t^2 - t + 1", "t1*t2 - t1 - t2 + 3"):
    r = hopf_test_poly(parse_poly(text), link=text)
    v = r.norm
    extra = f"f = {format_poly(v.witness)}" if v.witness is not None else v.reason
    print(f"{text:<22} -> {r.verdict:<15} ({extra})")

v = exact_norm_test(parse_poly("(2*t - 1)^2 * (2*t^-1 - 1)^2 * (t^2 - t + 1)^2"))
print("\nnorm witness for a larger product:", format_poly(v.witness))

v = pair_test(parse_poly("1"), parse_poly("-2*t + 5 - 2*t^-1"))
print("pair test 1 vs -2t+5-2t^-1:", v.status, [format_poly(f) for f in v.witness])
