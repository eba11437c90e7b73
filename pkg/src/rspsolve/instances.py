"""Instance file format and seeded instance generation.

File format, one entry per line::

    # comment
    item <cycle_length> <reorder_size>

Blank lines and ``#`` comments are ignored.  Fields are separated by single
spaces and must be plain decimal integers.
"""
from __future__ import annotations

import random
import re

from .errors import InstanceSyntaxError, InvalidInput
from .model import DEFAULT_MAX_JOINT_CYCLE, Instance, Item

_DECIMAL = re.compile(r"[0-9]+")


def parse_instance(text: str, max_joint_cycle: int = DEFAULT_MAX_JOINT_CYCLE) -> Instance:
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split(" ")
        if len(parts) != 3 or parts[0] != "item":
            raise InstanceSyntaxError(f"expected 'item <k> <s>', got {line!r}", lineno)
        if not all(_DECIMAL.fullmatch(p) for p in parts[1:]):
            raise InstanceSyntaxError(f"non-integer field in {line!r}", lineno)
        k, s = int(parts[1]), int(parts[2])
        try:
            items.append(Item(k, s))
        except InvalidInput as exc:
            raise InstanceSyntaxError(str(exc), lineno) from None
    if not items:
        raise InstanceSyntaxError("no item lines found")
    return Instance(tuple(items), max_joint_cycle)


def render_instance(instance: Instance, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [f"item {it.cycle_length} {it.reorder_size}" for it in instance.items]
    return "\n".join(lines) + "\n"


def divisors(m: int) -> list:
    return [d for d in range(1, m + 1) if m % d == 0]


def generate_instance(n: int, joint_cycle_target: int, max_size: int, seed: int,
                      max_joint_cycle: int = DEFAULT_MAX_JOINT_CYCLE) -> Instance:
    """Random instance; reproducible for equal arguments.

    Uses :class:`random.Random` (Mersenne Twister) seeded with ``seed``.  Each
    cycle length is a uniform divisor of ``joint_cycle_target``, so the
    instance's joint cycle always divides the target.
    """
    if n < 1 or max_size < 1 or joint_cycle_target < 1:
        raise InvalidInput("n, joint_cycle_target and max_size must all be >= 1")
    if joint_cycle_target > max_joint_cycle:
        raise InvalidInput(f"joint cycle target {joint_cycle_target} is above the cap {max_joint_cycle}")
    if not 0 <= seed < 2**64:
        raise InvalidInput("seed must be an unsigned 64-bit integer")
    rng = random.Random(seed)
    divs = divisors(joint_cycle_target)
    items = []
    for _ in range(n):
        k = rng.choice(divs)
        s = rng.randint(1, max_size)
        items.append(Item(k, s))
    return Instance(tuple(items), max_joint_cycle)
