"""
Alexander polynomials of the bundled links
==========================================

Load every corpus diagram, print its multivariable Alexander polynomial,
the value at (1, ..., 1) and the linking matrix.
"""

from concordia import corpus
from concordia.alexander import alexander_polynomial, torres_check
from concordia.link import linking_matrix

for name, d in corpus.load_all().items():
    delta = alexander_polynomial(d)
    print(f"{name:14s} m={d.m}  crossings={d.crossing_count:2d}  Delta = {delta.to_text()}")
    print(f"{'':14s} Delta(1..1) = {delta.augmentation()}  lk = {linking_matrix(d).tolist()}")

# Two components: setting the second variable to 1 recovers the first
# component's knot polynomial times a cyclotomic-like factor.
for name in ("hopf", "t2_4", "t2_6", "trefoil_hopf"):
    print(name, torres_check(corpus.load(name)))
