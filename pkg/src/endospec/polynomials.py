"""Exact integer polynomials and the root-set operations built on them.

A set of nonzero algebraic numbers closed under conjugation is represented by
a :class:`SpectrumPoly`: a squarefree, primitive integer polynomial with
positive leading coefficient and nonzero constant term whose complex roots
are exactly the set.  Containment of such sets is divisibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import BothZero, DegreeZero, ZeroDivisor, ZeroPolynomial

# Above these sizes gcd work is handed to FLINT; the pure routines stay the reference.
NATIVE_GCD_MAX_DEGREE = 40


class IntPoly:
    """Polynomial in ``t`` with exact integer coefficients, stored ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> IntPoly:
        return IntPoly([-x for x in self.coeffs])

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly([other * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def t_valuation(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no t-adic valuation")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def strip_t(self) -> IntPoly:
        """Remove every factor of ``t``."""
        return IntPoly(self.coeffs[self.t_valuation():])

    def shift(self, k: int) -> IntPoly:
        return IntPoly([0] * k + list(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            body = "" if mag == 1 and k else str(mag)
            if k:
                var = "t" if k == 1 else f"t^{k}"
                body = f"{body}*{var}" if body else var
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


def pseudo_divmod(p: IntPoly, d: IntPoly) -> tuple[IntPoly, IntPoly]:
    """``lead(d)**(deg p - deg d + 1) * p = q*d + r`` with ``deg r < deg d``."""
    if d.is_zero():
        raise ZeroDivisor("pseudo-division by the zero polynomial")
    if p.degree < d.degree:
        return IntPoly(), p
    lc, dd = d.lead, d.degree
    r = list(p.coeffs)
    q = [0] * (p.degree - dd + 1)
    for k in range(p.degree - dd, -1, -1):
        top = r[k + dd]
        # scale everything accumulated so far to keep integrality
        q = [lc * x for x in q]
        r = [lc * x for x in r]
        q[k] += top
        if top:
            for i, c in enumerate(d.coeffs):
                r[k + i] -= top * c
        r.pop()
    return IntPoly(q), IntPoly(r)


def exact_divide(p: IntPoly, d: IntPoly) -> IntPoly:
    """Quotient ``p / d`` when it exists in Z[t]; raises ``ValueError`` otherwise."""
    if d.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    r = list(p.coeffs)
    dd, lc = d.degree, d.lead
    if p.degree < dd:
        if p.is_zero():
            return IntPoly()
        raise ValueError("inexact polynomial division")
    q = [0] * (p.degree - dd + 1)
    for k in range(p.degree - dd, -1, -1):
        top = r[k + dd]
        if top % lc:
            raise ValueError("inexact polynomial division")
        c = top // lc
        q[k] = c
        if c:
            for i, x in enumerate(d.coeffs):
                r[k + i] -= c * x
    if any(r):
        raise ValueError("inexact polynomial division")
    return IntPoly(q)


def _flint_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    import flint

    g = flint.fmpz_poly(list(p.coeffs)).gcd(flint.fmpz_poly(list(q.coeffs)))
    return IntPoly(int(c) for c in g.coeffs()).primitive()


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over the rationals via the primitive pseudo-remainder sequence."""
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if max(p.degree, q.degree) > NATIVE_GCD_MAX_DEGREE and not p.is_zero() and not q.is_zero():
        return _flint_gcd(p, q)
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = pseudo_divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def radical(p: IntPoly) -> IntPoly:
    """Squarefree part ``p / gcd(p, p')``, primitive with positive leading coefficient."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no radical")
    if p.degree == 0:
        return IntPoly([1])
    g = poly_gcd(p, p.derivative())
    # Gauss: a primitive divisor of an integer polynomial leaves an integer cofactor
    return exact_divide(p.primitive(), g).primitive()


@dataclass(frozen=True)
class SpectrumPoly:
    """Canonical encoding of a finite set of nonzero eigenvalues."""

    poly: IntPoly

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.poly.coeffs

    def is_empty(self) -> bool:
        return self.poly.degree == 0

    def __str__(self) -> str:
        return str(self.poly)


def spectrum_poly(p: IntPoly) -> SpectrumPoly:
    """Keep only the nonzero roots of ``p``, each once."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has every number as a root")
    return SpectrumPoly(radical(p.strip_t()))


def divides(p: IntPoly, q: IntPoly) -> bool:
    """True iff ``q = p * c`` for some polynomial ``c`` with rational coefficients."""
    if p.is_zero():
        raise ZeroDivisor("divisibility by the zero polynomial")
    _, r = pseudo_divmod(q, p)
    return r.is_zero()


def spectrum_subset(s1: SpectrumPoly, s2: SpectrumPoly) -> bool:
    """Root-set containment; for squarefree polynomials this is divisibility."""
    return divides(s1.poly, s2.poly)


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def euler_phi_table(n: int) -> list[int]:
    """``phi(m)`` for ``0 <= m <= n`` by sieve."""
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:
            for m in range(p, n + 1, p):
                phi[m] -= phi[m] // p
    return phi


def _mulmod(a: list[int], b: list[int], mod: Sequence[int]) -> list[int]:
    """Product of two residues modulo a monic polynomial of degree ``len(mod) - 1``."""
    d = len(mod) - 1
    prod = [0] * (2 * d - 1 if d else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d):
                prod[k - d + i] -= c * mod[i]
    return prod[:d]


def all_roots_of_unity(s: SpectrumPoly) -> bool:
    """Decide exactly whether every root of ``s`` is a root of unity.

    A primitive integer polynomial all of whose roots are roots of unity is a
    product of cyclotomic polynomials, so it is monic with constant term
    +-1.  Each root then has some order ``m`` with ``phi(m) <= d``, and since
    ``phi(m) >= sqrt(m / 2)`` every such ``m`` is at most ``2 d^2``.  With
    ``L`` the lcm of all those orders, the answer is whether ``s`` divides
    ``t^L - 1``; ``t^L mod s`` is computed by binary exponentiation.

    While all roots lie on the unit circle, every residue ``t^k mod s`` has
    coefficients bounded by ``d^2 |s|_1 |s'|_1^(d-1)`` (Lagrange
    interpolation at the roots, with ``|s'(root)|`` bounded below through
    the discriminant).  Exceeding that bound proves a root off the circle
    and stops the exponentiation before the coefficients explode.
    """
    p = s.poly
    d = p.degree
    if d <= 0:
        return True
    if p.lead != 1 or abs(p.coeffs[0]) != 1:
        return False
    totients = euler_phi_table(2 * d * d + 1)
    orders = [m for m in range(1, 2 * d * d + 2) if totients[m] <= d]
    L = lcm(*orders)
    norm1 = sum(abs(c) for c in p.coeffs)
    dnorm1 = sum(abs(c) for c in p.derivative().coeffs)
    bound = d * d * norm1 * dnorm1 ** (d - 1)
    mod = p.coeffs
    result = [1] + [0] * (d - 1)
    base = [0, 1] + [0] * (d - 2) if d > 1 else [-mod[0]]
    e = L
    while e:
        if e & 1:
            result = _mulmod(result, base, mod)
            if max(abs(c) for c in result) > bound:
                return False
        e >>= 1
        if e:
            base = _mulmod(base, base, mod)
            if max(abs(c) for c in base) > bound:
                return False
    return result == [1] + [0] * (d - 1)


def cauchy_bound(p: IntPoly) -> float:
    if p.degree < 1:
        raise DegreeZero("constant polynomials have no roots")
    return 1.0 + max(abs(c) / abs(p.lead) for c in p.coeffs[:-1])


def max_root_modulus(p: IntPoly, squarings: int = 60) -> float:
    """Largest root modulus of ``p`` in double precision.

    Power iteration on the companion matrix ``C`` by repeated squaring:
    ``rho(C) = lim |C^N|^(1/N)`` and with ``N = 2^j`` the running log-norm
    converges for ties in modulus and complex pairs, unlike vector iteration
    whose ratios can oscillate.  Repeated roots are removed first (the
    radical has the same roots): a Jordan block makes the normalized powers
    nearly nilpotent and rounding then dominates.  The result is capped by
    the Cauchy bound.
    """
    if p.is_zero() or p.degree < 1:
        raise DegreeZero("max_root_modulus needs a polynomial of degree at least 1")
    cap = cauchy_bound(p)
    q = p.strip_t()
    if q.degree == 0:
        return 0.0
    q = radical(q)
    n = q.degree
    lead = float(q.lead)
    comp = np.zeros((n, n))
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = [-c / lead for c in q.coeffs[:-1]]
    scale = np.linalg.norm(comp)
    b = comp / scale
    log_rho = np.log(scale)
    weight = 1.0
    for _ in range(squarings):
        b = b @ b
        s = np.linalg.norm(b)
        if s == 0.0 or not np.isfinite(s):
            break
        weight /= 2.0
        log_rho += weight * np.log(s)
        b /= s
    rho = float(np.exp(log_rho))
    return min(rho, cap)
