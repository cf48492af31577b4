"""Algebraic mapping tori and their Alexander polynomials via Fox calculus.

The mapping torus of ``phi`` on a rank-``r`` free group has the ``r + 1``
generators ``x_1 .. x_r, x`` and one relator ``x^-1 x_i x phi(x_i)^-1`` per
fiber generator.  Relators are words of rank ``r + 1`` whose last letter index
is the stable letter.

Fox derivatives are pushed to ``Z[t, t^-1]`` by the map sending every fiber
generator to 1 and ``x`` to ``t^-1``.  With that orientation the Fox matrix
of the torus is ``tI - A^T`` (``A`` the abelianization matrix), so its
determinant is ``det(tI - A)`` on the nose rather than its reversal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ShapeMismatch
from .polynomials import IntPoly, exact_divide
from .words import Endomorphism, Word, invert

COFACTOR_MAX = 6


class LaurentPoly:
    """Integer Laurent polynomial in ``t`` with finite support."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {k: int(c) for k, c in (terms or {}).items() if c}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> LaurentPoly:
        return cls({k: c})

    @classmethod
    def from_intpoly(cls, p: IntPoly, shift: int = 0) -> LaurentPoly:
        return cls({i + shift: c for i, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def high(self) -> int:
        return max(self.terms) if self.terms else 0

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self.terms.items()})
        out: dict[int, int] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def to_intpoly(self) -> tuple[IntPoly, int]:
        """``(p, s)`` with ``self == t^s * p`` and ``p(0) != 0``."""
        if not self.terms:
            return IntPoly(), 0
        lo = self.low
        return IntPoly([self.terms.get(k, 0) for k in range(lo, self.high + 1)]), lo

    def normalized(self) -> IntPoly:
        """Representative modulo the units ``+-t^s``: no factor of ``t``, positive leading coefficient."""
        p, _ = self.to_intpoly()
        return -p if p.lead < 0 else p

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms})"


@dataclass(frozen=True)
class TorusPresentation:
    rank: int
    relators: tuple[Word, ...]
    fiber_names: tuple[str, ...]
    stable_letter_name: str = "x"
    injective: bool = True

    @property
    def stable_index(self) -> int:
        return self.rank

    def name(self, y: int) -> str:
        i = abs(y) - 1
        base = self.stable_letter_name if i == self.rank else self.fiber_names[i]
        return base if y > 0 else f"{base}^-1"

    def format_relator(self, w: Word) -> str:
        return " ".join(self.name(y) for y in w.letters) or "1"

    def format(self) -> str:
        gens = ", ".join(self.fiber_names + (self.stable_letter_name,))
        rels = ", ".join(self.format_relator(w) for w in self.relators)
        return f"< {gens} | {rels} >"

    def __str__(self) -> str:
        return self.format()


def mapping_torus(phi: Endomorphism, injective: bool | None = None) -> TorusPresentation:
    """Presentation ``< F, x | x^-1 x_i x = phi(x_i) >``.

    Pass ``injective`` when already known; otherwise it is computed.  A
    non-injective ``phi`` still yields the presentation, with a warning,
    since it is then not an ascending HNN extension.
    """
    if injective is None:
        from .spectra import is_injective

        injective = is_injective(phi)
    if not injective:
        warnings.warn("phi is not injective; the mapping torus is not an ascending HNN extension", stacklevel=2)
    r = phi.rank
    x = r + 1
    relators = []
    for i, img in enumerate(phi.images):
        tail = invert(Word(r + 1, img.letters, reduced=True))
        relators.append(Word(r + 1, (-x, i + 1, x) + tail.letters))
    names = tuple(phi.word_type.generator(r, i).format() for i in range(r))
    stable = "x" if "x" not in names else "s"
    return TorusPresentation(r, tuple(relators), names, stable, injective)


def _epsilon_exponent(y: int, stable: int) -> int:
    """Exponent of ``t`` in the image of letter ``y`` (``x -> t^-1``)."""
    if abs(y) != stable:
        return 0
    return -1 if y > 0 else 1


def fox_derivative(w: Word, z: int, stable: int | None = None) -> LaurentPoly:
    """Image of the Fox derivative of ``w`` by generator index ``z`` in ``Z[t, t^-1]``.

    ``stable`` is the 0-based index of the stable letter (default: the last
    generator of ``w``'s alphabet).
    """
    stable_letter = (w.rank if stable is None else stable + 1)
    target = z + 1
    out: dict[int, int] = {}
    e = 0  # t-exponent of the image of the prefix read so far
    for y in w.letters:
        if y == target:
            out[e] = out.get(e, 0) + 1
            e += _epsilon_exponent(y, stable_letter)
        elif y == -target:
            e += _epsilon_exponent(y, stable_letter)
            out[e] = out.get(e, 0) - 1
        else:
            e += _epsilon_exponent(y, stable_letter)
    return LaurentPoly(out)


def epsilon(w: Word, stable: int | None = None) -> LaurentPoly:
    stable_letter = (w.rank if stable is None else stable + 1)
    return LaurentPoly.monomial(sum(_epsilon_exponent(y, stable_letter) for y in w.letters))


def fox_matrix(p: TorusPresentation) -> list[list[LaurentPoly]]:
    if len(p.relators) != p.rank:
        raise ShapeMismatch(f"{len(p.relators)} relators for {p.rank} fiber generators")
    return [[fox_derivative(rel, j, p.stable_index) for j in range(p.rank)] for rel in p.relators]


def _cofactor_det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly({0: 1})
    if n == 1:
        return m[0][0]
    total = LaurentPoly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_poly_det(rows: list[list[IntPoly]]) -> IntPoly:
    n = len(rows)
    a = [list(r) for r in rows]
    sign, prev = 1, IntPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot is None:
                return IntPoly()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = exact_divide(a[i][j] * akk - aik * a[k][j], prev)
        prev = akk
    return a[n - 1][n - 1] * sign


def laurent_det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant: cofactor expansion when small, Bareiss on a shifted embedding otherwise."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ShapeMismatch("determinant of a non-square matrix")
    if n <= COFACTOR_MAX:
        return _cofactor_det(m)
    shifts = []
    rows = []
    for row in m:
        lows = [e.low for e in row if not e.is_zero()]
        s = -min(lows) if lows else 0
        shifts.append(s)
        rows.append([e.to_intpoly()[0].shift(e.low + s) if not e.is_zero() else IntPoly() for e in row])
    return LaurentPoly.from_intpoly(_bareiss_poly_det(rows), -sum(shifts))


def alexander_polynomial(p: TorusPresentation) -> IntPoly:
    """Order of the first homology of the infinite cyclic cover, normalized modulo ``+-t^s``."""
    return laurent_det(fox_matrix(p)).normalized()

