"""Scaling approximation scheme for the multi-cycle problem with a fixed joint cycle.

Reorder sizes are divided by ``M = eps*D/(k*n)`` (with ``eps = eps'/2``) and
floored; the scaled problem has demand ``D' = k*n/eps`` regardless of the
input, so the DP state space depends only on ``n``, ``k`` and ``eps``.  The
schedule it returns is evaluated with the original sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .exact import DEFAULT_STATE_BUDGET, DiscreteProblem, DpSolution, solve_discrete
from .model import Instance, cascading_check, inventory_profile, objective_z, order_quantities


def parse_rational(text) -> Fraction:
    """Exact rational from ``"p/q"``, a decimal string, an int or a Fraction."""
    if isinstance(text, float):
        raise InvalidInput("pass eps as a string or Fraction, not a float")
    try:
        return Fraction(str(text).strip()) if isinstance(text, str) else Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidInput(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class ScaleParams:
    eps_prime: Fraction
    eps: Fraction
    factor: Fraction
    scaled_sizes: tuple
    scaled_demand: Fraction
    scaled_caps: tuple


@dataclass(frozen=True)
class ApproxResult:
    times: tuple
    value: Fraction
    lower_bound: Fraction
    ratio_bound: Fraction
    scale: ScaleParams
    dp: DpSolution


def scale_instance(instance: Instance, eps_prime) -> ScaleParams:
    eps_prime = parse_rational(eps_prime)
    if eps_prime <= 0:
        raise InvalidInput(f"eps' must be positive, got {eps_prime}")
    eps = eps_prime / 2
    k, n = instance.joint_cycle, instance.n
    factor = eps * instance.total_demand / (k * n)
    sizes = tuple(math.floor(s / factor) for s in instance.sizes)
    demand = instance.total_demand / factor
    caps = tuple(math.floor(ell * demand) for ell in range(1, k + 1))
    return ScaleParams(eps_prime, eps, factor, sizes, demand, caps)


def relaxed_feasible(instance: Instance, times, eps) -> bool:
    eps = parse_rational(eps)
    if eps < 0:
        raise InvalidInput(f"eps must be nonnegative, got {eps}")
    ok, _ = cascading_check(instance, times, eps * instance.total_demand)
    return ok


def certify(instance: Instance, times, eps):
    """Return ``(upper, lower_bound, ratio_bound)`` for a schedule.

    ``upper`` is the schedule's peak.  The lower bound on the optimum is the
    larger of ``D`` and ``V_k - eps*D``; the second term is only a valid
    bound for schedules coming out of the scaled DP.
    """
    eps = parse_rational(eps)
    if eps < 0:
        raise InvalidInput(f"eps must be nonnegative, got {eps}")
    prof = inventory_profile(instance, times)
    d = instance.total_demand
    lower = max(d, prof.levels[-1] - eps * d)
    return prof.peak, lower, prof.peak / lower


def scaled_objective(instance: Instance, scale: ScaleParams, times) -> int:
    """``z'`` of a schedule under the scaled sizes."""
    k = instance.joint_cycle
    z = 0
    for s, c, t in zip(scale.scaled_sizes, instance.cycles, times):
        z += s * sum(k - j + 1 for j in range(t, k + 1, c))
    return z


def scaled_feasible(instance: Instance, scale: ScaleParams, times) -> bool:
    """Whether a schedule meets the cascading caps of the scaled problem."""
    k = instance.joint_cycle
    q = [0] * k
    for s, c, t in zip(scale.scaled_sizes, instance.cycles, times):
        for j in range(t, k + 1, c):
            q[j - 1] += s
    prefix = 0
    for ell in range(k):
        prefix += q[ell]
        if prefix > scale.scaled_caps[ell]:
            return False
    return True


def zz_bounds_check(instance: Instance, scale: ScaleParams, times) -> bool:
    """``M*z' <= z <= M*z' + eps*k*D`` with exact rationals."""
    order_quantities(instance, times)  # validates the schedule
    z = objective_z(instance, times)
    mz = scale.factor * scaled_objective(instance, scale, times)
    slack = scale.eps * instance.joint_cycle * instance.total_demand
    return mz <= z <= mz + slack


def solve_fptas(instance: Instance, eps_prime,
                state_budget: int = DEFAULT_STATE_BUDGET) -> ApproxResult:
    """A schedule whose peak is within a factor ``1 + eps'`` of optimal."""
    scale = scale_instance(instance, eps_prime)
    problem = DiscreteProblem(scale.scaled_sizes, instance.cycles,
                              instance.joint_cycle, scale.scaled_caps)
    sol = solve_discrete(problem, state_budget)
    if not sol.feasible:
        raise AssertionError("scaled DP reported infeasible on a valid instance")
    upper, lower, ratio = certify(instance, sol.times, scale.eps)
    return ApproxResult(sol.times, upper, lower, ratio, scale, sol)
