"""Randomized property suites, shared by ``endospec selftest`` and the test tree.

Each suite is a list of independent trials.  Trial ``i`` of suite ``name``
under seed ``s`` draws from its own PCG64 stream
``SeedSequence([s, suite_id]).spawn(trials)[i]``, so results do not depend
on trial order or on running in parallel.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .families import (
    RandomSpec,
    mod_n_homology_kernel,
    random_automorphism,
    random_endomorphism,
    random_non_injective,
    random_word,
    total_exponent_kernel,
    total_kernel_invariant,
)
from .graphs import contains, expand, index, is_invariant, rewrite_in_basis
from .linalg import abelianization_matrix, char_poly
from .spectra import check_containment, check_lemma, eventual_kernel, is_injective
from .torus import alexander_polynomial, mapping_torus
from .errors import EndospecError, LengthBudgetExceeded
from .growth import growth_estimate, growth_sequence
from .polynomials import max_root_modulus
from .words import apply, compose, power

DEFAULT_SEED = 20240601
SUITES = ("theorem", "divisibility", "lemma", "fox", "schreier", "growth", "words")
_SUITE_IDS = {name: i for i, name in enumerate(SUITES)}


@lru_cache(maxsize=None)
def _kernel(kind: str, rank: int, n: int):
    if kind == "mod":
        return mod_n_homology_kernel(rank, n)
    return total_exponent_kernel(rank, n)


KERNELS = (("mod", 2), ("mod", 3), ("total", 2))
GROWTH_CAP = 10**5


def trial_rng(name: str, seed: int, trials: int, i: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed, _SUITE_IDS[name]]).spawn(trials)[i]
    return np.random.Generator(np.random.PCG64(ss))


def trial_rank(i: int) -> int:
    """Ranks 2, 3, 4 in rotation."""
    return 2 + i % 3


def _kernel_checks(phi, rank, verdict):
    """Run ``verdict`` on every kernel that is phi-invariant.

    Homology kernels are characteristic.  The total-exponent kernel is not;
    for it the invariance test itself is checked against the exponent-sum
    criterion and the containment check runs only when it applies.
    """
    out = []
    for kind, n in KERNELS:
        g = _kernel(kind, rank, n)
        label = f"{kind}-{n}"
        if kind == "total":
            expected = total_kernel_invariant(phi, n)
            if is_invariant(g, phi) != expected:
                out.append((label, False, f"invariance misjudged for {phi}"))
                continue
            if not expected:
                continue
        try:
            out.append((label, verdict(check_containment(phi, g)), str(phi)))
        except (EndospecError, AssertionError) as exc:
            out.append((label, False, f"{type(exc).__name__}: {exc} [{phi}]"))
    return out


def _theorem(rng, i):
    rank = trial_rank(i)
    phi = random_endomorphism(RandomSpec(0, rank, max_image_length=6), rng)
    return _kernel_checks(phi, rank, lambda rep: rep.contained)


def _divisibility(rng, i):
    rank = trial_rank(i)
    phi = random_automorphism(RandomSpec(0, rank, move_count=12), rng)
    return _kernel_checks(phi, rank, lambda rep: rep.delta_divides is True)


def _lemma(rng, i):
    rank = trial_rank(i)
    phi = random_non_injective(RandomSpec(0, rank, max_image_length=6), rng)
    ek = eventual_kernel(phi)
    ranks = ek.ranks
    decreasing = all(ranks[j] > ranks[j + 1] for j in range(ek.k))
    ok = check_lemma(phi) and ek.k <= rank and decreasing and ranks[ek.k] == ranks[ek.k + 1]
    return [("lemma", ok, str(phi))]


def _fox(rng, i):
    rank = trial_rank(i)
    while True:
        phi = random_endomorphism(RandomSpec(0, rank, max_image_length=6), rng)
        if is_injective(phi):
            break
    fox = alexander_polynomial(mapping_torus(phi, injective=True))
    lin = char_poly(abelianization_matrix(phi)).strip_t()
    return [("fox", fox == lin, str(phi))]


def _schreier(rng, i):
    rank = trial_rank(i)
    kind, n = KERNELS[i % len(KERNELS)]
    g = _kernel(kind, rank, n)
    m = index(g).m
    ok = len(g.basis) == m * (rank - 1) + 1
    phi = random_endomorphism(RandomSpec(0, rank, max_image_length=6), rng)
    if kind == "total":
        ok = ok and is_invariant(g, phi) == total_kernel_invariant(phi, n)
    else:
        ok = ok and is_invariant(g, phi)
    # a random member: product of up to 3 basis words or inverses
    member = g.basis[0] ** 0
    for _ in range(int(rng.integers(1, 4))):
        h = g.basis[int(rng.integers(len(g.basis)))]
        member = member * (h if rng.integers(2) else h.inverse())
    ok = ok and contains(g, member) and expand(g, rewrite_in_basis(g, member)) == member
    return [(f"{kind}-{n}", ok, str(member))]


def _growth(rng, i):
    rank = trial_rank(i)
    phi = random_endomorphism(RandomSpec(0, rank, max_image_length=6), rng)
    try:
        lengths = [1] + growth_sequence(phi, 10, cap=GROWTH_CAP).lengths
    except LengthBudgetExceeded:
        return []  # too long to iterate at this budget; nothing to check
    p = char_poly(abelianization_matrix(phi))
    bound = max_root_modulus(p) if p.strip_t().degree >= 1 else 0.0
    ok = growth_estimate(phi, 10, cap=GROWTH_CAP) >= bound - 0.05
    ok = ok and all(lengths[j + k] <= lengths[j] * lengths[k] for j in range(1, 6) for k in range(1, 6))
    return [("growth", ok, str(phi))]


def _words(rng, i):
    rank = trial_rank(i)
    phi, psi, chi = (random_endomorphism(RandomSpec(0, rank, max_image_length=4), rng) for _ in range(3))
    u = random_word(rng, rank, int(rng.integers(0, 10)))
    v = random_word(rng, rank, int(rng.integers(0, 10)))
    ok = apply(phi, u * v) == apply(phi, u) * apply(phi, v)
    ok = ok and (u * u.inverse()).letters == ()
    ok = ok and compose(compose(phi, psi), chi) == compose(phi, compose(psi, chi))
    ok = ok and power(phi, 3) == compose(power(phi, 1), power(phi, 2))
    return [("words", ok, f"{phi}; {u.format()}; {v.format()}")]


_TRIALS = {
    "theorem": _theorem,
    "divisibility": _divisibility,
    "lemma": _lemma,
    "fox": _fox,
    "schreier": _schreier,
    "growth": _growth,
    "words": _words,
}


def run_trial(name: str, seed: int, trials: int, i: int) -> list[tuple[str, bool, str]]:
    rng = trial_rng(name, seed, trials, i)
    try:
        return _TRIALS[name](rng, i)
    except (EndospecError, AssertionError) as exc:
        return [("error", False, f"{type(exc).__name__}: {exc}")]


@dataclass
class SuiteResult:
    name: str
    seed: int
    trials: int
    checks: int = 0
    failures: list[tuple[int, str, str]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "checks": self.checks,
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
        }


def _collect(name, seed, trials, outcomes) -> SuiteResult:
    result = SuiteResult(name, seed, trials)
    for i, checks in enumerate(outcomes):
        for label, ok, detail in checks:
            result.checks += 1
            if not ok:
                result.failures.append((i, label, detail))
    return result


def run_suite(name: str, trials: int, seed: int = DEFAULT_SEED, parallel: bool = False) -> SuiteResult:
    start = time.perf_counter()
    if parallel:
        with ProcessPoolExecutor() as pool:
            outcomes = list(
                pool.map(run_trial, [name] * trials, [seed] * trials, [trials] * trials, range(trials))
            )
    else:
        outcomes = [run_trial(name, seed, trials, i) for i in range(trials)]
    result = _collect(name, seed, trials, outcomes)
    result.seconds = time.perf_counter() - start
    return result
