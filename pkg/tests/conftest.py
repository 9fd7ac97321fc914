import random

import pytest
from hypothesis import strategies as st

from intersecting.family import Family, all_k_sets


@st.composite
def families(draw, n_range=(4, 9), k_range=(1, 4), max_size=25):
    n = draw(st.integers(*n_range))
    k = draw(st.integers(k_range[0], min(k_range[1], n)))
    universe = all_k_sets(n, k).sets
    picks = draw(st.lists(st.sampled_from(universe), max_size=max_size))
    return Family.of(n, k, picks)


@st.composite
def intersecting_families(draw, n_range=(5, 9), k_range=(2, 4), max_size=25):
    """Greedy intersecting families from a drawn candidate order."""
    n = draw(st.integers(*n_range))
    k = draw(st.integers(k_range[0], min(k_range[1], (n - 1) // 2)))
    universe = all_k_sets(n, k).sets
    order = draw(st.permutations(universe))
    limit = draw(st.integers(0, max_size))
    chosen = []
    for s in order:
        if len(chosen) >= limit:
            break
        if all(s & c for c in chosen):
            chosen.append(s)
    return Family.of(n, k, chosen)


def random_family(rng: random.Random, n: int, k: int, size: int) -> Family:
    universe = all_k_sets(n, k).sets
    return Family.of(n, k, rng.sample(universe, min(size, len(universe))))


@pytest.fixture
def rng():
    return random.Random(20241017)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
