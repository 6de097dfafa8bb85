"""Admissible prime-power covers of M_L and their first homology.

Run: python3 demos/prime_power_covers.py
"""

from linkgate.covers import cover_h1, format_abelian, link_covers, reidemeister_schreier
from linkgate.link_codec import builtin
from linkgate.presentation import abelianize, link_ML

for name in ("hopf", "hopf_trefoil"):
    Q, _ = link_ML(builtin(name))
    print(f"{name}: M_L has {len(Q.generators)} generators, {len(Q.relators)} relators, "
          f"H1 = {format_abelian(abelianize(Q)[0])}")
    for p, i, j in ((2, 1, 1), (3, 1, 0)):
        covers = link_covers(builtin(name), p, i, j)
        groups = [format_abelian(cover_h1(c)) for c in covers]
        print(f"  (p, i, j) = {(p, i, j)}: {len(covers)} covers: {groups}")
    c = link_covers(builtin(name), 2, 1, 1)[0]
    S = reidemeister_schreier(c)
    print(f"  first 4-fold cover: {len(S.generators)} Schreier generators, {len(S.relators)} relators")
