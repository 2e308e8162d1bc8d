import os
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from polylat import GroundSet, Polymatroid

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).resolve().parent.parent / "data"

seeds = st.integers(min_value=0, max_value=10**6)


def coverage_polymatroid(rng: random.Random, n: int) -> Polymatroid:
    """Weighted coverage function: submodular by construction, independent of the library."""
    cover = [rng.randrange(1 << 5) for _ in range(n)]
    weight = [Fraction(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(5)]
    table = []
    for m in range(1 << n):
        u = 0
        for i in range(n):
            if m >> i & 1:
                u |= cover[i]
        table.append(sum((weight[b] for b in range(5) if u >> b & 1), Fraction(0)))
    return Polymatroid(GroundSet.range(n), tuple(table))


@pytest.fixture
def data_dir() -> Path:
    return DATA


def five_flats() -> Polymatroid:
    return Polymatroid(GroundSet.range(3), tuple(Fraction(v) for v in (0, 1, 2, 2, 2, 3, 3, 3)))


def four_flats() -> Polymatroid:
    return Polymatroid(GroundSet.range(3), tuple(Fraction(v) for v in (0, 1, 1, 2, 2, 2, 2, 2)))


def pair_ranks(r12) -> Polymatroid:
    return Polymatroid(GroundSet.range(2), (Fraction(0), Fraction(1), Fraction(1), Fraction(r12)))


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
