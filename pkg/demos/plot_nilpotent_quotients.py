"""
Lower central series quotients and Milnor invariants
====================================================

The quotient pi_2 / pi_3 of a link group depends only on the linking
matrix.  Its torsion decides which prime the family construction uses.
"""

from concordia import corpus
from concordia.groups import mu_table, pi2_mod_pi3
from concordia.link import linking_matrix

for n in range(-4, 5):
    print(f"lk = {n:2d}:  pi2/pi3 = {pi2_mod_pi3([[0, n], [n, 0]])}")

# Borromean rings: all linking numbers vanish, the triple invariant does not.
d = corpus.load("borromean")
print("borromean lk:", linking_matrix(d).tolist())
print("borromean pi2/pi3:", pi2_mod_pi3(linking_matrix(d)))
for key, value in sorted(mu_table(d).items()):
    if value.value:
        print("  mu", "".join(map(str, key)), "=", value.value)
