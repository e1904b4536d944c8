"""
Certifying the energy conserving fan in exact arithmetic
========================================================

The lower state has density 1 and moves upward at 2*sqrt2, the upper state has
density 4 and rests. Every constant of the fan candidate lies in Q(sqrt2), so
all eleven conditions can be checked without rounding.
"""

import dataclasses

from eulerfan import condition_residuals, format_exact, witness_candidate, witness_data, witness_law

data, law, cand = witness_data(), witness_law(), witness_candidate()
print("mu0 =", format_exact(cand.mu0), " rho1 =", format_exact(cand.rho1), " C1 =", format_exact(cand.C1))

# the report keeps the residual of each condition as an exact number
report = condition_residuals(data, cand, law, mode="exact")
print(report.format())

# nudging C1 breaks the third normal jump relation on both sides and the energy relation
shifted = dataclasses.replace(cand, C1=cand.C1 + 1)
rep2 = condition_residuals(data, shifted, law, mode="exact")
for name in ("rhl3", "rhr3", "enl"):
    print(name, format_exact(rep2.residual(name)))
