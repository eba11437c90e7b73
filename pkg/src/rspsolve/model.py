"""Instances, assignments and inventory simulation for the replenishment storage problem.

An assignment is stored compactly as a tuple of first-order times ``t_i`` with
``1 <= t_i <= k_i``; item ``i`` then reorders at every time ``j`` in ``1..k``
with ``j = t_i (mod k_i)``.  All non-integer quantities are exact
:class:`fractions.Fraction` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GuardError, InvalidInput

DEFAULT_MAX_JOINT_CYCLE = 60
MAX_ITEMS = 10_000
MAX_REORDER_SIZE = 10**6

Assignment = tuple  # tuple[int, ...] of first-order times, 1-based


@dataclass(frozen=True)
class Item:
    cycle_length: int
    reorder_size: int

    def __post_init__(self):
        for name in ("cycle_length", "reorder_size"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInput(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise InvalidInput(f"{name} must be >= 1, got {value}")
        if self.reorder_size > MAX_REORDER_SIZE:
            raise InvalidInput(f"reorder_size {self.reorder_size} exceeds {MAX_REORDER_SIZE}")

    @property
    def demand_rate(self) -> Fraction:
        return Fraction(self.reorder_size, self.cycle_length)


def derive_joint_cycle(cycles: Sequence[int], cap: int = DEFAULT_MAX_JOINT_CYCLE) -> int:
    """Least common multiple of the cycle lengths, refused above ``cap``."""
    if len(cycles) == 0:
        raise InvalidInput("cannot derive a joint cycle from an empty list")
    for c in cycles:
        if c < 1:
            raise InvalidInput(f"cycle lengths must be >= 1, got {c}")
    k = math.lcm(*cycles)
    if k > cap:
        raise GuardError(f"joint cycle {k} exceeds the cap of {cap}")
    return k


@dataclass(frozen=True)
class Instance:
    items: tuple
    max_joint_cycle: int = field(default=DEFAULT_MAX_JOINT_CYCLE, compare=False, repr=False)
    joint_cycle: int = field(init=False)
    total_demand: Fraction = field(init=False, repr=False)

    def __post_init__(self):
        items = tuple(it if isinstance(it, Item) else Item(*it) for it in self.items)
        if not items:
            raise InvalidInput("an instance needs at least one item")
        if len(items) > MAX_ITEMS:
            raise InvalidInput(f"{len(items)} items exceeds the limit of {MAX_ITEMS}")
        object.__setattr__(self, "items", items)
        k = derive_joint_cycle([it.cycle_length for it in items], self.max_joint_cycle)
        object.__setattr__(self, "joint_cycle", k)
        object.__setattr__(self, "total_demand", sum((it.demand_rate for it in items), Fraction(0)))

    @classmethod
    def from_pairs(cls, pairs, max_joint_cycle=DEFAULT_MAX_JOINT_CYCLE) -> "Instance":
        """Build from ``(cycle_length, reorder_size)`` pairs."""
        return cls(tuple(Item(int(k), int(s)) for k, s in pairs), max_joint_cycle)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def cycles(self) -> tuple:
        return tuple(it.cycle_length for it in self.items)

    @property
    def sizes(self) -> tuple:
        return tuple(it.reorder_size for it in self.items)

    @property
    def scaled_demand_numerator(self) -> int:
        """``W = k * D``, always an integer because every ``k_i`` divides ``k``."""
        w = self.joint_cycle * self.total_demand
        assert w.denominator == 1
        return w.numerator


@dataclass(frozen=True)
class InventoryProfile:
    levels: tuple
    peak: Fraction
    peak_time: int


def total_demand(instance: Instance) -> Fraction:
    return instance.total_demand


def is_valid_assignment(instance: Instance, times: Sequence[int]) -> bool:
    if len(times) != instance.n:
        raise InvalidInput(f"assignment has {len(times)} entries for {instance.n} items")
    return all(1 <= t <= c for t, c in zip(times, instance.cycles))


def _require_valid(instance, times):
    if not is_valid_assignment(instance, times):
        raise InvalidInput(f"invalid assignment {tuple(times)} for cycles {instance.cycles}")


def order_quantities(instance: Instance, times: Sequence[int]) -> list:
    """Total reorder size ``Q_j`` landing at each time ``j = 1..k``."""
    _require_valid(instance, times)
    k = instance.joint_cycle
    q = [0] * k
    for it, t in zip(instance.items, times):
        for j in range(t, k + 1, it.cycle_length):
            q[j - 1] += it.reorder_size
    return q


def scaled_levels(instance: Instance, times: Sequence[int]) -> list:
    """Integer levels ``k * V_l`` for ``l = 1..k``.

    Item ``i`` holds ``s_i`` right after its delivery and loses ``s_i / k_i``
    per time unit, so ``k * V_l`` stays integral.
    """
    _require_valid(instance, times)
    k = instance.joint_cycle
    out = []
    for ell in range(1, k + 1):
        total = 0
        for it, t in zip(instance.items, times):
            kc, s = it.cycle_length, it.reorder_size
            total += s * (k - (k // kc) * ((ell - t) % kc))
        out.append(total)
    return out


def inventory_level(instance: Instance, times: Sequence[int], ell: int) -> Fraction:
    _require_valid(instance, times)
    if not 1 <= ell <= instance.joint_cycle:
        raise InvalidInput(f"time {ell} outside 1..{instance.joint_cycle}")
    level = Fraction(0)
    for it, t in zip(instance.items, times):
        level += it.reorder_size - it.demand_rate * ((ell - t) % it.cycle_length)
    return level


def inventory_profile(instance: Instance, times: Sequence[int]) -> InventoryProfile:
    k = instance.joint_cycle
    raw = scaled_levels(instance, times)
    top = max(raw)
    return InventoryProfile(
        levels=tuple(Fraction(v, k) for v in raw),
        peak=Fraction(top, k),
        peak_time=raw.index(top) + 1,
    )


def objective_z(instance: Instance, times: Sequence[int]) -> int:
    k = instance.joint_cycle
    q = order_quantities(instance, times)
    return sum((k - j + 1) * q[j - 1] for j in range(1, k + 1))


def constant_C(instance: Instance) -> Fraction:
    """The assignment-independent constant with ``k * V_k + z = C``."""
    k = instance.joint_cycle
    c = sum(Fraction(1, 2) * (1 + Fraction(1, it.cycle_length)) * k * it.reorder_size
            for it in instance.items)
    return c + Fraction((1 + k) * k, 2) * instance.total_demand


def shift_normalize(instance: Instance, times: Sequence[int]) -> Assignment:
    """Rotate the schedule so that its (earliest) peak lands at time ``k``.

    The peak value is unchanged; only its position moves.
    """
    p = inventory_profile(instance, times).peak_time
    return tuple((t - p - 1) % c + 1 for t, c in zip(times, instance.cycles))


def cascading_check(instance: Instance, times: Sequence[int], slack=Fraction(0)):
    """Check ``sum_{j<=l} Q_j <= l*D + slack`` for every ``l``.

    Returns ``(ok, max_violation)`` where ``max_violation`` is the largest
    ``sum_{j<=l} Q_j - l*D`` (it may be negative).
    """
    slack = Fraction(slack)
    if slack < 0:
        raise InvalidInput(f"slack must be nonnegative, got {slack}")
    d = instance.total_demand
    prefix = 0
    worst = None
    for ell, qj in enumerate(order_quantities(instance, times), start=1):
        prefix += qj
        gap = prefix - ell * d
        if worst is None or gap > worst:
            worst = gap
    return worst <= slack, worst


def assignment_matrix(instance: Instance, times: Sequence[int]) -> list:
    """Expand to the ``n x k`` 0/1 matrix form."""
    _require_valid(instance, times)
    k = instance.joint_cycle
    rows = []
    for it, t in zip(instance.items, times):
        rows.append([1 if (j - t) % it.cycle_length == 0 else 0 for j in range(1, k + 1)])
    return rows


def is_valid_matrix(instance: Instance, matrix) -> bool:
    """Validity of a 0/1 matrix: one order per item cycle, repeated every ``k_i``."""
    k = instance.joint_cycle
    if len(matrix) != instance.n:
        return False
    for row, c in zip(matrix, instance.cycles):
        if len(row) != k or any(x not in (0, 1) for x in row):
            return False
        if sum(row[:c]) != 1:
            return False
        if any(row[j] != row[j - c] for j in range(c, k)):
            return False
    return True


def level_from_matrix(instance: Instance, matrix, ell: int) -> Fraction:
    """Inventory at time ``ell`` by walking back to each item's latest order."""
    k = instance.joint_cycle
    level = Fraction(0)
    for it, row in zip(instance.items, matrix):
        elapsed = 0
        while row[(ell - 1 - elapsed) % k] != 1:
            elapsed += 1
        level += it.reorder_size - it.demand_rate * elapsed
    return level
