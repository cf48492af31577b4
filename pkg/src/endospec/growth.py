"""Growth rates of endomorphisms estimated from iterated word lengths."""

from __future__ import annotations

from dataclasses import dataclass

from .words import Endomorphism, apply

DEFAULT_LENGTH_CAP = 10**7
RATIO_SETTLED = 0.005


@dataclass(frozen=True)
class GrowthRow:
    k: int
    max_length: int
    root_estimate: float
    ratio_estimate: float | None


@dataclass(frozen=True)
class GrowthTrace:
    rows: tuple[GrowthRow, ...]

    @property
    def lengths(self) -> list[int]:
        return [row.max_length for row in self.rows]


def growth_sequence(phi: Endomorphism, kmax: int, cap: int = DEFAULT_LENGTH_CAP) -> GrowthTrace:
    """``max_i |phi^k(x_i)|`` for ``k = 1 .. kmax`` with the k-th root and successive-ratio estimates."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    words = [phi.word_type.generator(phi.rank, i) for i in range(phi.rank)]
    rows = []
    prev = None
    for k in range(1, kmax + 1):
        words = [apply(phi, w, cap=cap) for w in words]
        longest = max((len(w) for w in words), default=0)
        ratio = longest / prev if prev else None
        rows.append(GrowthRow(k, longest, longest ** (1.0 / k), ratio))
        prev = longest
    return GrowthTrace(tuple(rows))


def growth_estimate(phi: Endomorphism, kmax: int, cap: int = DEFAULT_LENGTH_CAP) -> float:
    """Estimate of the growth rate from the lengths up to ``kmax``.

    The last successive ratio is used once the ratios have settled (the last
    two agree to ``RATIO_SETTLED``).  Otherwise, including when lengths stop
    changing or oscillate, the k-th root is used; it never undershoots the
    spectral radius of the abelianization, since a reduced word is at least
    as long as the l1 norm of its exponent sums.  A map whose iterates die
    out has growth rate 0.
    """
    lengths = growth_sequence(phi, kmax, cap).lengths
    last = lengths[-1]
    if last == 0:
        return 0.0
    root = last ** (1.0 / len(lengths))
    if len(lengths) < 3 or 0 in lengths[-3:] or lengths[-2] == last:
        return root
    r1, r0 = last / lengths[-2], lengths[-2] / lengths[-3]
    if abs(r1 - r0) > RATIO_SETTLED * r1:
        return root
    return r1
