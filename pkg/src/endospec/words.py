"""Free group elements and endomorphisms of free groups.

A word of a rank-``r`` free group is stored as a tuple of nonzero integers:
``+(i + 1)`` is generator ``i`` and ``-(i + 1)`` its inverse.  Words are kept
freely reduced at all times, so ``len(w)`` is the word-metric norm of ``w``.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import LengthBudgetExceeded, RankMismatch


class Generator(NamedTuple):
    index: int
    rank: int


class Letter(NamedTuple):
    generator: int
    sign: int


def generator_name(index: int, rank: int) -> str:
    if rank <= 26:
        return chr(ord("a") + index)
    return f"x{index + 1}"


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word.  Immutable; compare with ``==``."""

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters: Iterable[int] = (), *, reduced: bool = False):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        seq = tuple(letters) if reduced else _free_reduce(letters)
        for x in seq:
            if x == 0 or abs(x) > rank:
                raise RankMismatch(f"letter {x} is outside the rank-{rank} alphabet")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", seq)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, (), reduced=True)

    @classmethod
    def generator(cls, rank: int, index: int, sign: int = 1) -> Word:
        if not 0 <= index < rank:
            raise RankMismatch(f"generator {index} out of range for rank {rank}")
        return cls(rank, (sign * (index + 1),), reduced=True)

    @classmethod
    def from_letters(cls, rank: int, letters: Iterable[Letter | tuple[int, int]]) -> Word:
        return cls(rank, (sign * (gen + 1) for gen, sign in letters))

    def pairs(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters)

    def _check(self, other: Word) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} word combined with rank {other.rank} word")

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def inverse(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else invert(self)
        out = type(self).identity(self.rank)
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return (
            type(other) is type(self)
            and other.rank == self.rank
            and other.letters == self.letters
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.rank, self.letters))

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for x in self.letters:
            if x > 0:
                sums[x - 1] += 1
            else:
                sums[-x - 1] -= 1
        return sums

    def name(self, index: int) -> str:
        return generator_name(index, self.rank)

    def format(self, uppercase: bool = False) -> str:
        """Render with exponent runs, e.g. ``a b^2 a^-1`` (or ``a b^2 A``)."""
        if not self.letters:
            return "1"
        parts = []
        i = 0
        seq = self.letters
        while i < len(seq):
            j = i
            while j < len(seq) and seq[j] == seq[i]:
                j += 1
            gen, count = abs(seq[i]) - 1, j - i
            name = self.name(gen)
            if seq[i] < 0 and uppercase and self.rank <= 26:
                parts.append(name.upper() if count == 1 else f"{name.upper()}^{count}")
            elif seq[i] < 0:
                parts.append(f"{name}^-{count}")
            else:
                parts.append(name if count == 1 else f"{name}^{count}")
            i = j
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rank}, {self.format()!r})"


def reduce(rank: int, letters: Iterable[int | Letter | tuple[int, int]]) -> Word:
    """Freely reduce a raw letter sequence (signed ints or ``(gen, sign)`` pairs)."""
    raw = []
    for x in letters:
        if isinstance(x, tuple):
            gen, sign = x
            raw.append(sign * (gen + 1))
        else:
            raw.append(x)
    return Word(rank, raw)


def multiply(u: Word, v: Word) -> Word:
    u._check(v)
    a, b = u.letters, v.letters
    # cancel only at the junction; both halves are already reduced
    k = 0
    while k < len(a) and k < len(b) and a[-1 - k] == -b[k]:
        k += 1
    return type(u)(u.rank, a[: len(a) - k] + b[k:], reduced=True)


def invert(w: Word) -> Word:
    return type(w)(w.rank, tuple(-x for x in reversed(w.letters)), reduced=True)


class Endomorphism:
    """An endomorphism of the rank-``r`` free group given by generator images.

    ``target_type`` is the word class of the images; it defaults to
    :class:`Word` and is :class:`~endospec.graphs.BasisWord` for
    restrictions to a subgroup.
    """

    __slots__ = ("rank", "images", "_inverses")

    def __init__(self, rank: int, images: Sequence[Word]):
        images = tuple(images)
        if len(images) != rank:
            raise RankMismatch(f"expected {rank} generator images, got {len(images)}")
        for w in images:
            if w.rank != rank:
                raise RankMismatch(f"image {w} has rank {w.rank}, expected {rank}")
        if images and any(type(w) is not type(images[0]) for w in images):
            raise TypeError("all images must share one word type")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_inverses", tuple(invert(w) for w in images))

    def __setattr__(self, name, value):
        raise AttributeError("Endomorphism is immutable")

    @property
    def word_type(self) -> type:
        return type(self.images[0]) if self.images else Word

    @classmethod
    def identity(cls, rank: int, word_type: type = Word) -> Endomorphism:
        return cls(rank, [word_type(rank, (i + 1,), reduced=True) for i in range(rank)])

    @classmethod
    def from_letter_lists(cls, rank: int, images: Sequence[Iterable[int]]) -> Endomorphism:
        return cls(rank, [Word(rank, img) for img in images])

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __matmul__(self, other: Endomorphism) -> Endomorphism:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Endomorphism) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        names = [self.word_type.generator(self.rank, i).format() for i in range(self.rank)]
        return ", ".join(f"{n} -> {w}" for n, w in zip(names, self.images))

    def __repr__(self) -> str:
        return f"Endomorphism({self.rank}, {str(self)!r})"


def apply(phi: Endomorphism, w: Word, cap: int | None = None) -> Word:
    """Image of ``w`` under ``phi``, freely reduced.

    With ``cap`` set, raises :class:`LengthBudgetExceeded` as soon as the
    reduced prefix grows beyond ``cap`` letters.
    """
    if w.rank != phi.rank:
        raise RankMismatch(f"rank {w.rank} word given to a rank {phi.rank} endomorphism")
    images, inverses = phi.images, phi._inverses
    stack: list[int] = []
    for x in w.letters:
        img = images[x - 1] if x > 0 else inverses[-x - 1]
        for y in img.letters:
            if stack and stack[-1] == -y:
                stack.pop()
            else:
                stack.append(y)
        if cap is not None and len(stack) > cap:
            raise LengthBudgetExceeded(len(stack), cap)
    return phi.word_type(phi.rank, stack, reduced=True)


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """``phi`` after ``psi``: ``x_i`` goes to ``phi(psi(x_i))``."""
    if phi.rank != psi.rank:
        raise RankMismatch(f"cannot compose rank {phi.rank} with rank {psi.rank}")
    if psi.images and type(psi.images[0]) is not phi.word_type:
        psi = Endomorphism(psi.rank, [phi.word_type(w.rank, w.letters, reduced=True) for w in psi.images])
    return Endomorphism(phi.rank, [apply(phi, w) for w in psi.images])


def power(phi: Endomorphism, k: int) -> Endomorphism:
    if k < 0:
        raise ValueError("only nonnegative powers of an endomorphism exist")
    result = Endomorphism.identity(phi.rank, phi.word_type)
    base = phi
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result
