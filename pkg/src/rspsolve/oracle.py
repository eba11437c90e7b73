"""Exhaustive search over every schedule; ground truth for small instances."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded
from .model import Instance, scaled_levels

DEFAULT_ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class OracleResult:
    best_times: tuple
    best_peak: Fraction
    assignments_evaluated: int


def enumerate_assignments(instance: Instance):
    """Every first-order time vector, in lexicographic order."""
    return itertools.product(*(range(1, c + 1) for c in instance.cycles))


def brute_force_optimum(instance: Instance,
                        enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET) -> OracleResult:
    total = math.prod(instance.cycles)
    if total > enumeration_budget:
        raise BudgetExceeded(
            f"{total} assignments exceed the enumeration budget of {enumeration_budget}", total)
    best = None
    best_times = None
    count = 0
    for times in enumerate_assignments(instance):
        count += 1
        peak = max(scaled_levels(instance, times))
        if best is None or peak < best:
            best, best_times = peak, times
    return OracleResult(best_times, Fraction(best, instance.joint_cycle), count)
