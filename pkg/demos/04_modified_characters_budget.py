#!/usr/bin/env python3
"""Modified characters: deviation budgets, greedy plans, and distance.

A completely multiplicative g built from chi_3 may deviate from it at a
controlled set of primes.  This demo measures the deviation sum S(x)
against the budget C x^(1/2) exp(-c sqrt(log x)), greedily builds the
densest admissible flip set, and reports the pretentious distance and
the log-power growth of the completed character's partial sums.
"""

import math

from kfreesums import (
    DeviationBudget,
    ModificationPlan,
    build_real_character,
    character_rule,
    completed_character,
    deviation_sum,
    greedy_plan,
    growth_report,
    modified_character,
    pretentious_distance,
    sieve_primes,
    verify_deviation_budget,
)

print("=" * 70)
print(" Modification budgets and the pretentious distance")
print("=" * 70)

chi3 = build_real_character(3)
g0 = completed_character(chi3)       # flips nothing, g(3) = +1
budget = DeviationBudget(big_c=2.0, small_c=1.0, k=2, x0=10)

# --- the forced deviation of the completion --------------------------------
print("\ndeviation sum of the completion (only p = 3 contributes):")
for x in (2, 3, 10, 10**3, 10**6):
    print(f"  S({x:>7}) = {deviation_sum(g0, chi3, x)}   budget = {budget.value(max(x, 2)):10.3f}")

report = verify_deviation_budget(g0, chi3, budget, 10**6)
print(f"verifier on [10, 1e6]: passed = {report.passed}")

# --- a plan that flips too much ---------------------------------------------
flips = tuple(int(p) for p in sieve_primes(1000) if p != 3)
g_all = modified_character(ModificationPlan(character=chi3, flipped_primes=flips))
bad = verify_deviation_budget(g_all, chi3, budget, 10**3)
x, s, b = bad.first_violation
print(f"\nflipping every prime below 1000: first violation at x = {x} "
      f"(S = {s} > budget {b:.3f})")

# --- greedy admissible plan ---------------------------------------------------
loose = DeviationBudget(big_c=10.0, small_c=0.5, k=2, x0=10)
plan = greedy_plan(chi3, loose, 10**6)
print(f"\ngreedy plan under C=10, c=0.5 up to 1e6: {len(plan.flipped_primes)} flips")
print(f"  first flips: {plan.flipped_primes[:10]}")
print(f"  re-verified: {verify_deviation_budget(modified_character(plan), chi3, loose, 10**6).passed}")

# --- pretentious distance -----------------------------------------------------
chi_rule = character_rule(chi3)
print("\npretentious distance from chi_3 (squared):")
print(f"  completion:      D^2 = {pretentious_distance(g0, chi_rule, 10**6)**2:.12f}"
      f"   (exactly 1/3 = {1 / 3:.12f})")
g5 = modified_character(ModificationPlan(character=chi3, flipped_primes=(5,)))
print(f"  flip {{5}}, x=10:  D^2 = {pretentious_distance(g5, chi_rule, 10)**2:.12f}"
      f"   (1/3 + 2/5 = {1 / 3 + 2 / 5:.12f})")
gg = modified_character(plan)
print(f"  greedy plan:     D^2 = {pretentious_distance(gg, chi_rule, 10**6)**2:.6f}")

# --- growth of the completed character's partial sums -------------------------
rep = growth_report(g0, chi3, 10**6)
print(f"\n|M_g(x)| / (log x)^1 along the schedule (g the completion):")
print(f"  max ratio on [1e3, 1e6]: {rep.max_ratio:.4f} at x = {rep.max_ratio_at}")
print(f"  limiting ceiling max|M_chi| / log 3 = {rep.limit_bound:.4f}")
print(f"  (1 / log 3 = {1 / math.log(3):.4f})")

print("\ndone.")
