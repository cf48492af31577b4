"""Finite-index kernels of maps to finite abelian groups, and seeded random endomorphisms.

The mod-n homology kernel is characteristic, so it is invariant under every
endomorphism.  The total-exponent kernel is not: it is invariant under
``phi`` exactly when all images ``phi(x_i)`` have congruent exponent sums
mod n.

Randomness comes from NumPy's PCG64 generator seeded through
``numpy.random.SeedSequence``; ``spawn`` gives independent child streams, so
trial ``i`` of a suite with seed ``s`` always sees the same draws regardless
of how many trials run or in what order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import RankTooSmall
from .graphs import SubgroupGraph, covering_graph
from .words import Endomorphism, Word, compose


def mod_n_homology_kernel(rank: int, n: int) -> SubgroupGraph:
    """Kernel of ``F -> (Z/n)^rank``; the cover has vertex set ``(Z/n)^rank``."""
    if n < 1:
        raise ValueError("n must be positive")
    succ = {}
    for v in product(range(n), repeat=rank):
        succ[v] = {i: v[:i] + ((v[i] + 1) % n,) + v[i + 1 :] for i in range(rank)}
    return covering_graph(rank, succ, (0,) * rank)


def total_exponent_kernel(rank: int, n: int) -> SubgroupGraph:
    """Kernel of ``F -> Z/n`` sending every generator to 1."""
    if n < 1:
        raise ValueError("n must be positive")
    succ = {v: {i: (v + 1) % n for i in range(rank)} for v in range(n)}
    return covering_graph(rank, succ, 0)


def total_kernel_invariant(phi: Endomorphism, n: int) -> bool:
    """Whether ``total_exponent_kernel(rank, n)`` is ``phi``-invariant.

    The kernel of ``s: F -> Z/n`` is invariant iff ``s . phi`` factors
    through ``s``, i.e. iff every ``s(phi(x_i))`` is the same residue.
    """
    return len({sum(w.exponent_sums()) % n for w in phi.images}) <= 1


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    rank: int
    max_image_length: int = 6
    move_count: int = 12


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def trial_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent per-trial seed sequences derived from one suite seed."""
    return np.random.SeedSequence(seed).spawn(count)


def random_word(rng: np.random.Generator, rank: int, length: int) -> Word:
    """Uniform reduced word of exactly ``length`` letters (rejection on cancellation)."""
    letters: list[int] = []
    while len(letters) < length:
        g = int(rng.integers(rank)) + 1
        x = g if rng.integers(2) else -g
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(rank, letters, reduced=True)


def random_endomorphism(spec: RandomSpec, rng: np.random.Generator | None = None) -> Endomorphism:
    """Each image is a uniform reduced word whose length is uniform in ``[0, max_image_length]``."""
    rng = rng if rng is not None else _rng(spec.seed)
    images = []
    for _ in range(spec.rank):
        length = int(rng.integers(spec.max_image_length + 1))
        images.append(random_word(rng, spec.rank, length))
    return Endomorphism(spec.rank, images)


NIELSEN_MOVES = ("swap", "invert", "right", "left")


def nielsen_move(rank: int, kind: str, i: int, j: int = 0, sign: int = 1) -> Endomorphism:
    """Elementary Nielsen automorphism; ``right`` is ``x_i -> x_i x_j^sign``, ``left`` is ``x_i -> x_j^sign x_i``."""
    gens = [Word.generator(rank, k) for k in range(rank)]
    images = list(gens)
    if kind == "swap":
        images[i], images[j] = gens[j], gens[i]
    elif kind == "invert":
        images[i] = gens[i].inverse()
    elif kind == "right":
        images[i] = gens[i] * Word.generator(rank, j, sign)
    elif kind == "left":
        images[i] = Word.generator(rank, j, sign) * gens[i]
    else:
        raise ValueError(f"unknown Nielsen move {kind!r}")
    return Endomorphism(rank, images)


def random_automorphism(spec: RandomSpec, rng: np.random.Generator | None = None) -> Endomorphism:
    if spec.rank < 2:
        raise RankTooSmall("Nielsen moves between distinct generators need rank >= 2")
    rng = rng if rng is not None else _rng(spec.seed)
    phi = Endomorphism.identity(spec.rank)
    for _ in range(spec.move_count):
        kind = NIELSEN_MOVES[int(rng.integers(len(NIELSEN_MOVES)))]
        i, j = (int(x) for x in rng.choice(spec.rank, size=2, replace=False))
        sign = 1 if rng.integers(2) else -1
        phi = compose(phi, nielsen_move(spec.rank, kind, i, j, sign))
    return phi


def killing_map(rank: int, kill: set[int] | frozenset[int]) -> Endomorphism:
    """Send the generators in ``kill`` to the identity and fix the others."""
    return Endomorphism(
        rank,
        [Word.identity(rank) if i in kill else Word.generator(rank, i) for i in range(rank)],
    )


def random_non_injective(spec: RandomSpec, rng: np.random.Generator | None = None) -> Endomorphism:
    """A random endomorphism precomposed with a map killing at least one generator."""
    rng = rng if rng is not None else _rng(spec.seed)
    phi = random_endomorphism(spec, rng)
    count = int(rng.integers(1, spec.rank + 1))
    kill = frozenset(int(x) for x in rng.choice(spec.rank, size=count, replace=False))
    return compose(phi, killing_map(spec.rank, kill))
