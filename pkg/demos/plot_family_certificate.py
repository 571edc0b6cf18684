"""
Certifying a family of infected links
=====================================

Classify a link, build a family of patterns whose rho values are spread
far enough apart, and check the pairwise inequalities exactly.
"""

from concordia import corpus
from concordia.family import FamilyCertificate, FamilyConfig, build_family, classify, rho_bookkeeping

for name in ("hopf", "whitehead", "borromean", "t2_4"):
    v = classify(corpus.load(name))
    print(f"{name:10s} -> {v.regime.value}")

cert = build_family(FamilyConfig(100, p=3, count=5), "nilpotent")
print(cert.report())

# The certificate survives a JSON round trip and re-verifies from scratch.
back = FamilyCertificate.from_json(cert.dumps())
print("round trip equal:", back == cert, " reverify:", back.reverify())

# Blanchfield route with two satellite curves
cert = build_family(FamilyConfig(10, N=2, count=4), "blanchfield")
print([m.k for m in cert.members])
for entry in rho_bookkeeping(cert)[:3]:
    print(entry)
