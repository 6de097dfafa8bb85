"""Rank and torsion Alexander polynomial for the built-in corpus.

Run: python3 demos/alexander_invariants.py
"""

from linkgate.alexander import alexander_data, symmetry_holds
from linkgate.laurent import format_poly
from linkgate.link_codec import BUILTINS, builtin, linking_matrix

print(f"{'link':<14} {'mu':>2} {'rank':>4}  {'symmetric':<9}  torsion polynomial")
for name in sorted(BUILTINS):
    D = builtin(name)
    J, rank, delta = alexander_data(D)
    print(f"{name:<14} {D.num_components:>2} {rank:>4}  {str(symmetry_holds(delta)):<9}  {format_poly(delta)}")

# the Fox matrix itself, for the trefoil
J, _, _ = alexander_data(builtin("trefoil"))
print("\ntrefoil Fox matrix (rows = Wirtinger relators):")
for row in J.matrix.entries:
    print("  ", [format_poly(x) for x in row])
print("fundamental identity holds:", J.identity_holds())
print("Whitehead linking matrix:", linking_matrix(builtin("whitehead")).tolist())
