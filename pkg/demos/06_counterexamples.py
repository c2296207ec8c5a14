"""The four machine-checked counterexample constructions.

Each returns a report whose claims re-verify from the parameters alone; a
failed claim would mean the construction (or the library) is wrong.
"""

from fractions import Fraction as F

from acceptset import (
    PiecewiseLinear,
    es_surplus_counterexample,
    strict_sandwich_construction,
    uniform_numeraire_counterexample,
    weak_star_step_approximation,
)


def show(report):
    print(f"[{report.name}]  parameters: {dict(report.parameters)}")
    for claim in report.claims:
        mark = "ok " if claim.verified else "FAIL"
        print(f"  {mark} {claim.description}")
    for note in report.notes:
        print(f"  note: {note}")
    print()


print("1. a currency change can break the uniform-strict family:")
show(uniform_numeraire_counterexample(F(3, 5)))

print("2. a set strictly between the strict and uniform-strict families")
print("   (so the sandwich in the characterization cannot be tightened):")
show(strict_sandwich_construction(F(1, 2)))

print("3. expected shortfall fails surplus invariance at every level:")
show(es_surplus_counterexample())

print("4. oscillating step positions approach a rejected constant in pairing")
print("   value while staying accepted (an approximation-in-pairings effect):")
for m in (1, 4, 16):
    report = weak_star_step_approximation(F(1, 2), m, (PiecewiseLinear.identity(),))
    gap = dict(report.claims[2].evidence)["gap"]
    print(f"   m={m:2d}: pairing gap {gap}")
show(weak_star_step_approximation(F(1, 2), 4))
