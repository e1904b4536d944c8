"""
Finding the apex numerically and proving it exactly
===================================================

Because e3 is affine in delta2, the double equality e3 = e4 = 0 becomes a scalar
root problem in rho1. Bisection gives a float; continued fractions turn it into
a small rational; exact arithmetic then decides.
"""

from eulerfan import find_and_certify, witness_data, witness_law, apex_residual

data, law = witness_data(), witness_law()

# h(rho1) changes sign once on [1.5, 3]
for r in (1.5, 2.0, 2.1, 2.2, 3.0):
    print(f"h({r}) = {apex_residual(r, data, law):+.4f}")

cert = find_and_certify(data, law, bracket=(1.5, 3.0), tol=1e-10)
print("float root:", cert.apex.point.rho1, cert.apex.point.delta2, f"({cert.apex.iterations} bisection steps)")
print("snapped   :", cert.snapped.rho1, cert.snapped.delta2)
print("outcome   :", cert.outcome)
print("exact zeros:", ", ".join(cert.report.exact_zeros()))
