import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcass.cli import Environment
from lcass.polycore import Ring
from lcass.session import parse_session

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

CORPUS = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail}")


def corpus_files(prefix=""):
    return sorted(os.path.join(CORPUS, f) for f in os.listdir(CORPUS)
                  if f.endswith(".lch") and f.startswith(prefix))


def load_env(path, seed=42):
    """Declare every object in a corpus session (commands are not run)."""
    with open(path, encoding="utf-8") as fh:
        session = parse_session(fh.read())
    env = Environment(seed)
    for node in session.nodes:
        if not hasattr(node, "verb"):
            env.declare(node)
    return env


def instance(path):
    """(I, M, N) of an instance file."""
    env = load_env(path)
    return env.objects["I"], env.module(env.objects["M"]), env.module(env.objects["N"])


@pytest.fixture
def R2():
    return Ring(32003, "x,y")


@pytest.fixture
def R3():
    return Ring(32003, "x,y,z")


@st.composite
def monomials(draw, nvars, max_deg):
    left = draw(st.integers(0, max_deg))
    exps = []
    for _ in range(nvars):
        e = draw(st.integers(0, left))
        exps.append(e)
        left -= e
    return tuple(exps)


def poly_texts(names, max_deg=3, max_terms=3, coeff=st.integers(-5, 5)):
    """Small random polynomials as text in the canonical grammar."""
    def render(terms):
        parts = []
        for c, e in terms:
            mono = "*".join(f"{v}^{a}" for v, a in zip(names, e) if a)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"
    return st.lists(st.tuples(coeff, monomials(len(names), max_deg)), min_size=1,
                    max_size=max_terms).map(render)
