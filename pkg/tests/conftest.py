import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from gkmk import canon, gkm
from gkmk.charring import CharacterElement

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def load(name):
    g, pol = gkm.load_graph(FIXTURES / name)
    return g, pol


def models():
    """Every fixture under every pipeline it supports, keyed by a short name."""
    out = {}
    for name in ("cp1", "cp2", "cp3"):
        g, pol = load(f"{name}.json")
        out[name] = (g, gkm.orient(g, pol))
    g, pol = load("gr24.json")
    out["gr24-vc"] = (g, gkm.orient(g, pol))
    out["gr24-global"] = (g, gkm.orient(g, pol.global_only()))
    return out


MODELS = models()
GLOBAL = ("cp1", "cp2", "cp3", "gr24-global")


@pytest.fixture(scope="session")
def bases():
    return {k: canon.basis(g, o) for k, (g, o) in MODELS.items()}


def random_character(rng, rank, terms=3, span=2):
    return CharacterElement(rank, {
        tuple(rng.randint(-span, span) for _ in range(rank)): rng.randint(-3, 3) for _ in range(terms)
    })


def random_class(rng, g, b):
    """Random R(G)-combination of the canonical basis."""
    total = gkm.KClass.zero(g)
    for p in b.order:
        total = total + b[p] * random_character(rng, g.rank)
    return total


@pytest.fixture
def rng():
    return random.Random(20241015)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
