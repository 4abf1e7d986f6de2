"""
How hard is an instance?  Lower-bound exploration
=================================================

The asymptotic regret lower bound tells you, per suboptimal arm, whether
the cheaper identification route runs through reward samples or through
duels — and therefore how much fusing the two feedback channels can buy.
"""

from drbandits.analysis import lower_bound_general, lower_bound_simplified
from drbandits.instances import builtin_instance

inst = builtin_instance("appendix-f-k16")

for alpha in (0.1, 0.5, 0.9):
    report = lower_bound_general(inst, alpha)
    print(f"\nalpha = {alpha}: per-arm ln(T) coefficients")
    print(f"  {'arm':>3} {'reward':>9} {'dueling':>9} {'min':>9}  cheapest route")
    for k in sorted(report.per_arm_terms):
        r, d, m = report.per_arm_terms[k]
        route = "reward" if r <= d else f"duel vs arm {report.best_competitor[k]}"
        print(f"  {k:>3} {r:9.3f} {d:9.3f} {m:9.3f}  {route}")
    print(f"  total: {report.total_general:.3f}")

# The simplified gap-ratio form is a faster, cruder summary of the same
# trade-off; it agrees with min{alpha/gap_R, (1-alpha)/gap_D} per arm.
simp = lower_bound_simplified(inst, 0.5)
print(f"\nsimplified total at alpha=0.5: {simp.total_simplified:.3f}")
