"""
Levine-Tristram signature profile of the trefoil
================================================

The signature function is piecewise constant on the circle, with jumps at
roots of the Alexander polynomial.  Its average over the circle and over
p-th roots of unity give the rho invariants.
"""

from concordia.signature import builtin, rho_integral, rho_zp, signature_profile, trefoil_sum

V = builtin("trefoil_rh")
prof = signature_profile(V)
print("jumps:", [j.label() for j in prof.jumps])
for a, b, value in prof.arcs():
    print(f"  arc {a} .. {b}: {value}")

print("rho integral:", rho_integral(V).to_json())
print("rho over Z/3:", rho_zp(V, 3).to_json())

# rho is additive under connected sum
for k in (1, 2, 5, 10):
    print(k, "trefoils:", rho_zp(trefoil_sum(k), 3).value)

# Write the step plot next to this script.
with open("trefoil_signature.svg", "w") as fh:
    fh.write(prof.to_svg())
