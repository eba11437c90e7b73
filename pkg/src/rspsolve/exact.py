"""Pseudo-polynomial dynamic program over cumulative reorder caps.

``f_h(q)`` is the largest ``z`` reachable by the first ``h`` items when the
cumulative reorder amount up to each time ``l`` is at most ``q_l``.  The same
engine serves the exact problem (caps ``floor(l*W/k)``) and the scaled one
(caps ``floor(l*D')``), so it works on a bare :class:`DiscreteProblem`.

States are generated top-down from the root cap vector, so only reachable
cap vectors are ever stored, and each is clamped to a canonical form so that
equivalent vectors share one entry.  Evaluation then runs bottom-up level by
level over numpy arrays, with no recursion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidInput
from .model import Instance, constant_C

DEFAULT_STATE_BUDGET = 10**7
_NEG = -(2**62)  # stands in for minus infinity
_NEG_LIMIT = 2**61
_CHUNK_CELLS = 1 << 22  # int64 cells per candidate block
_SLACK = 4  # per-chunk distinct children allowed before the global dedup


@dataclass(frozen=True)
class DiscreteProblem:
    sizes: tuple
    cycles: tuple
    joint_cycle: int
    caps: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "cycles", tuple(self.cycles))
        object.__setattr__(self, "caps", tuple(self.caps))
        if len(self.sizes) != len(self.cycles):
            raise InvalidInput("sizes and cycles differ in length")
        if len(self.caps) != self.joint_cycle:
            raise InvalidInput(f"need {self.joint_cycle} caps, got {len(self.caps)}")
        if any(s < 0 for s in self.sizes):
            raise InvalidInput("sizes must be nonnegative")
        if any(c < 1 or self.joint_cycle % c for c in self.cycles):
            raise InvalidInput("every cycle must divide the joint cycle")
        if any(c < 0 for c in self.caps):
            raise InvalidInput("caps must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.sizes)

    def box_size(self) -> int:
        """``prod_l (cap_l + 1)``, the size of one DP level's full state box."""
        out = 1
        for c in self.caps:
            out *= c + 1
        return out


@dataclass(frozen=True)
class DpSolution:
    objective: Optional[int]  # None marks an infeasible problem
    times: Optional[tuple]
    states_visited: int
    value_table_size: int

    @property
    def feasible(self) -> bool:
        return self.objective is not None


def build_discrete(instance: Instance) -> DiscreteProblem:
    k = instance.joint_cycle
    w = instance.scaled_demand_numerator
    # prefix sums are integers, so <= l*D is the same as <= floor(l*W/k)
    caps = tuple(ell * w // k for ell in range(1, k + 1))
    return DiscreteProblem(instance.sizes, instance.cycles, k, caps)


def _moves(size, cycle, k):
    """Per first-order time ``tau``: its z-gain and its cumulative-order offsets."""
    taus = np.arange(1, cycle + 1)
    # ((k + k_h)/2 + 1 - tau) * (k/k_h) * s_h, always an integer
    gains = (k + cycle + 2 - 2 * taus) * (k // cycle) * size // 2
    ell = np.arange(1, k + 1)
    offsets = ((ell[None, :] - taus[:, None] + cycle) // cycle) * size
    return gains.astype(np.int64), offsets.astype(np.int64)


def _canonical(q, reach):
    """Tightest equivalent caps.

    Prefix sums never decrease, so cap ``l`` can drop to the smallest later
    cap; nor can they exceed ``reach``, the most the remaining items could
    order by each time.  ``f_h`` is unchanged by either clamp.
    """
    q = np.minimum.accumulate(q[..., ::-1], axis=-1)[..., ::-1]
    return np.minimum(q, reach)


def _over_budget(budget, states):
    raise BudgetExceeded(
        f"DP state budget of {budget} exceeded after {states} states; "
        "raise the budget, or use the FPTAS (approx) with a larger eps",
        states,
    )


def _expand(level, offsets, reach, room, states):
    """Distinct canonical children of ``level`` and the parent-to-child links.

    Parents are expanded in chunks and deduplicated per chunk so that the
    transient candidate array stays small.
    """
    n_par, kh = len(level), len(offsets)
    chunk = max(1, _CHUNK_CELLS // (kh * level.shape[1]))
    pieces = []
    pending = 0
    for start in range(0, n_par, chunk):
        cand = level[start:start + chunk, None, :] - offsets[None, :, :]
        ok = cand.min(axis=2) >= 0
        kids, inverse = np.unique(_canonical(cand[ok], reach), axis=0, return_inverse=True)
        pieces.append((ok, kids, inverse.reshape(-1)))
        pending += len(kids)
        if pending > _SLACK * max(room, 1):
            _over_budget(states + room, states + pending)

    merged, glob = np.unique(np.concatenate([p[1] for p in pieces]), axis=0,
                             return_inverse=True)
    glob = glob.reshape(-1).astype(np.int32)
    link = np.full((n_par, kh), -1, dtype=np.int32)
    base = 0
    for i, (ok, kids, inverse) in enumerate(pieces):
        rows = slice(i * chunk, i * chunk + len(ok))
        block = link[rows]
        block[ok] = glob[base + inverse]
        base += len(kids)
    return merged, link


def _run(problem, order, root, budget):
    """Evaluate the DP for the items in ``order`` (outermost last) from ``root``.

    Returns ``(value, picks, links, states, table)``: at depth ``m``,
    ``picks[m][r]`` is the chosen ``tau - 1`` for state row ``r`` and
    ``links[m][r, tau - 1]`` is the row of the resulting state one level down
    (-1 when that ``tau`` is infeasible).
    """
    k = problem.joint_cycle
    depth = len(order)
    moves = [_moves(problem.sizes[i], problem.cycles[i], k) for i in order]
    if sum(int(g.max()) for g, _ in moves) >= _NEG_LIMIT:
        raise InvalidInput("objective values would overflow 64-bit integers")

    ell = np.arange(1, k + 1)
    reach = np.zeros((depth + 1, k), dtype=np.int64)
    for m, i in enumerate(order, start=1):
        reach[m] = reach[m - 1] + problem.sizes[i] * (-(-ell // problem.cycles[i]))

    level = _canonical(np.asarray([root], dtype=np.int64), reach[depth])
    links = [None] * (depth + 1)
    states = 1 if depth else 0
    table = 1
    for m in range(depth, 0, -1):
        _, offsets = moves[m - 1]
        if m == 1:
            # f_0 is identically zero: one boundary state suffices
            ok = (level[:, None, :] >= offsets[None, :, :]).all(axis=2)
            link = np.where(ok, 0, -1).astype(np.int32)
            level = np.zeros((1, k), dtype=np.int64)
        else:
            level, link = _expand(level, offsets, reach[m - 1], budget - states, states)
            states += len(level)
            if states > budget:
                _over_budget(budget, states)
        if not (link >= 0).any():
            return None, None, links, states, table
        table += len(level)
        links[m] = link

    values = np.zeros(1, dtype=np.int64)
    picks = [None] * (depth + 1)
    for m in range(1, depth + 1):
        gains, _ = moves[m - 1]
        link = links[m]
        sub = values[np.maximum(link, 0)]
        usable = (link >= 0) & (sub > _NEG)
        total = np.where(usable, sub + gains[None, :], _NEG)
        pick = np.argmax(total, axis=1)  # first maximum, i.e. smallest tau
        picks[m] = pick
        values = total[np.arange(len(pick)), pick]

    value = int(values[0])
    return (None if value == _NEG else value), picks, links, states, table


def dp_value(problem: DiscreteProblem, h: int, q: Sequence[int],
             state_budget: int = DEFAULT_STATE_BUDGET) -> Optional[int]:
    """``f_h(q)`` for the first ``h`` items, or ``None`` when infeasible."""
    if not 0 <= h <= problem.n:
        raise InvalidInput(f"h={h} outside 0..{problem.n}")
    q = tuple(q)
    if len(q) != problem.joint_cycle or min(q) < 0:
        raise InvalidInput(f"cap vector {q} must have {problem.joint_cycle} nonnegative entries")
    value, *_ = _run(problem, list(range(h)), q, state_budget)
    return value


def solve_discrete(problem: DiscreteProblem,
                   state_budget: int = DEFAULT_STATE_BUDGET) -> DpSolution:
    """Solve ``f_n(caps)`` and recover the schedule.

    Items are processed so that item 1 is the outermost decision.  Taking the
    smallest optimal ``tau`` at each level then yields the lexicographically
    smallest optimal first-order times.
    """
    order = list(reversed(range(problem.n)))
    value, picks, links, states, table = _run(problem, order, problem.caps, state_budget)
    if value is None:
        return DpSolution(None, None, states, table)

    times = [0] * problem.n
    row = 0
    for m in range(problem.n, 0, -1):
        t = int(picks[m][row])
        times[order[m - 1]] = t + 1
        row = int(links[m][row, t])
    return DpSolution(value, tuple(times), states, table)


def solve_exact(instance: Instance, state_budget: int = DEFAULT_STATE_BUDGET):
    """Optimal schedule and its peak ``V* = (C - z*) / k``."""
    sol = solve_discrete(build_discrete(instance), state_budget)
    if not sol.feasible:
        # a rotation of any schedule meets the cascading constraints
        raise AssertionError("exact DP reported infeasible on a valid instance")
    peak = (constant_C(instance) - sol.objective) / instance.joint_cycle
    return sol, Fraction(peak)
