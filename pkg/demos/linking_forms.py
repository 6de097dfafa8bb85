"""Finite linking forms, metabolizers and Witt equivalence.

Run: python3 demos/linking_forms.py
"""

from linkgate.laurent import parse_poly
from linkgate.exact_linalg import PolyMatrix
from linkgate.linkforms import (
    format_subgroup,
    from_presentation,
    metabolizers,
    verify_neutral_certificate,
    witt_equivalent,
)

for A in ([[9]], [[3]], [[0, 2], [2, 0]], [[0, 3], [3, 1]], [[4, 2], [2, 10]]):
    F = from_presentation(A)
    mets = metabolizers(F)
    print(f"A = {A}: group Z/{' + Z/'.join(map(str, F.moduli))}, "
          f"{len(mets)} metabolizer(s) {[format_subgroup(F, P) for P in mets]}")

z3, z9 = from_presentation([[3]]), from_presentation([[9]])
print("\nZ/3 ~ Z/3:", witt_equivalent(z3, z3), "  Z/9 ~ Z/3:", witt_equivalent(z9, z3))

# a neutral pairing over Z[t, t^-1]: b(x, y) = conj(x) A^-1 y on coker A
A = PolyMatrix([[parse_poly("-2*t + 5 - 2*t^-1")]], 1)
print("\ncertificate N = <2t - 1>:", verify_neutral_certificate(A, [[parse_poly("2*t - 1")]]))
print("certificate N = <1>:     ", verify_neutral_certificate(A, [[parse_poly("1")]]))
