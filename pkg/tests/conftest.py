import pytest
from hypothesis import strategies as st

from rspsolve import Instance, generate_instance

ACCEPTANCE_LINES = []


@pytest.fixture
def inst_a():
    return Instance.from_pairs([(2, 2), (2, 2)])


@pytest.fixture
def inst_b():
    return Instance.from_pairs([(1, 2), (2, 2)])


def population(count=500, max_size=20):
    """Seeded instances with n <= 6 and joint-cycle targets in {1,2,3,4,6}."""
    out = []
    for seed in range(count):
        n = 1 + seed % 6
        k = (1, 2, 3, 4, 6)[(seed // 6) % 5]
        out.append(generate_instance(n, k, max_size, seed=seed))
    return out


@st.composite
def instances(draw, max_items=5, targets=(1, 2, 3, 4, 6, 12), max_size=30):
    k = draw(st.sampled_from(targets))
    divs = [d for d in range(1, k + 1) if k % d == 0]
    items = draw(st.lists(st.tuples(st.sampled_from(divs), st.integers(1, max_size)),
                          min_size=1, max_size=max_items))
    return Instance.from_pairs(items)


@st.composite
def instance_and_times(draw, **kw):
    inst = draw(instances(**kw))
    times = tuple(draw(st.integers(1, c)) for c in inst.cycles)
    return inst, times


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
