from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from endospec import Endomorphism, Word

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def letters(rank: int, max_size: int = 12):
    """Raw (unreduced) signed letter sequences."""
    gen = st.integers(1, rank).flatmap(lambda g: st.sampled_from([g, -g]))
    return st.lists(gen, max_size=max_size)


def words(rank: int, max_size: int = 12):
    return letters(rank, max_size).map(lambda ls: Word(rank, ls))


@st.composite
def endomorphisms(draw, rank: int | None = None, max_image: int = 5):
    r = rank if rank is not None else draw(st.integers(1, 3))
    images = [draw(words(r, max_image)) for _ in range(r)]
    return Endomorphism(r, images)


def w(rank: int, text: str) -> Word:
    """Shorthand: ``w(2, "a b B")`` with uppercase for inverses."""
    out = []
    for tok in text.split():
        g = ord(tok.lower()) - ord("a") + 1
        out.append(-g if tok.isupper() else g)
    return Word(rank, out)


PHI = Endomorphism(2, [w(2, "b"), w(2, "a b b")])
H_GENS = [w(2, "a a"), w(2, "b b"), w(2, "a b")]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
