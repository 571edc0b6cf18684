"""
Infection along a site
======================

Tie a knot into the (2,4) torus link along its recorded site and compare
the invariants that the operation must preserve.
"""

from concordia import corpus
from concordia.alexander import alexander_polynomial
from concordia.link import linking_matrix, to_pd
from concordia.satellite import infect, verify_homology_invariance

d = corpus.load("t2_4")
site = d.sites[0]
print("site", site.text(), "null-homologous:", site.null_homologous(d))

out = infect(d, site, "figure8")
print(to_pd(out))
print("crossings", d.crossing_count, "->", out.crossing_count)
print("Delta before:", alexander_polynomial(d).to_text())
print("Delta after: ", alexander_polynomial(out).to_text())
print("lk after:", linking_matrix(out).tolist())
print(verify_homology_invariance(d, site, "trefoil").to_json())
