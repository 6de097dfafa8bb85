"""Twisted versus mod-q homology dimensions on random complexes over Z[Z].

Run: python3 demos/twisted_dimension_inequality.py
"""

from collections import Counter

from linkgate.twisted import FreeChainComplex, GroupRingMatrix, check_thm23, induce, random_instances, run_instance

C = FreeChainComplex((1, 1), (GroupRingMatrix.parse([["t - 1"]]),))
for q in (2, 3):
    c = check_thm23(C, induce(2), q, [], 0)
    print(f"Z[Z] -(t-1)-> Z[Z], index 2, q = {q}: {c.left} <= {c.right}")

slack = Counter()
held = 0
for inst in random_instances(100, 1):
    r = run_instance(inst)
    held += r.holds
    slack[r.right - r.left] += 1
print(f"\n{held}/100 random instances hold")
print("distribution of right - left:", dict(sorted(slack.items())))
