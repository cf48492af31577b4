"""Spectra of endomorphisms and of their restrictions to invariant subgroups.

Every containment is decided exactly, by divisibility of squarefree integer
polynomials.  Non-injective maps are additionally pushed through their
injective parts (the maps induced on the quotient by the eventual kernel) and
the two routes are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InfiniteIndex, NotInvariant, PropertyViolation
from .graphs import IndexResult, SubgroupGraph, build_graph, index, is_invariant
from .linalg import IntMatrix, abelianization_matrix, char_poly, restriction, restriction_matrix
from .polynomials import (
    IntPoly,
    SpectrumPoly,
    all_roots_of_unity,
    divides,
    spectrum_poly,
    spectrum_subset,
)
from .words import Endomorphism, compose


def eigen_spectrum(phi: Endomorphism) -> SpectrumPoly:
    return spectrum_poly(char_poly(abelianization_matrix(phi)))


def image_graph(phi: Endomorphism) -> SubgroupGraph:
    return build_graph(phi.rank, phi.images)


def is_injective(phi: Endomorphism) -> bool:
    # free groups are Hopfian: a rank-r image of a rank-r free group is an isomorphic copy
    return image_graph(phi).subgroup_rank == phi.rank


@dataclass(frozen=True)
class EventualKernelData:
    k: int
    image_graph: SubgroupGraph
    image_rank: int
    induced_matrix: IntMatrix
    ranks: tuple[int, ...] = field(default=())

    @property
    def induced_spectrum(self) -> SpectrumPoly:
        return spectrum_poly(char_poly(self.induced_matrix))


def eventual_kernel(phi: Endomorphism) -> EventualKernelData:
    """Stabilization exponent ``k`` of ``ker phi^j`` and the injective part of ``phi``.

    ``k`` is the least ``j`` with ``rank phi^j(F) == rank phi^(j+1)(F)``;
    ``ranks`` records ``rank phi^j(F)`` for ``j = 0 .. k+1``.
    """
    r = phi.rank
    current = Endomorphism.identity(r, phi.word_type)
    graph = image_graph(current)
    ranks = [graph.subgroup_rank]
    k = 0
    while True:
        nxt = compose(phi, current)
        nxt_graph = image_graph(nxt)
        ranks.append(nxt_graph.subgroup_rank)
        if ranks[-1] == ranks[-2]:
            break
        if ranks[-1] > ranks[-2] or k >= r:
            raise PropertyViolation(f"image ranks {ranks} are not eventually constant by j = rank")
        current, graph = nxt, nxt_graph
        k += 1
    return EventualKernelData(
        k=k,
        image_graph=graph,
        image_rank=graph.subgroup_rank,
        induced_matrix=restriction_matrix(phi, graph),
        ranks=tuple(ranks),
    )


def injective_part(phi: Endomorphism) -> Endomorphism:
    """The injective map induced on ``F / K`` (``K`` the eventual kernel), over the image basis."""
    return restriction(phi, eventual_kernel(phi).image_graph)


def check_lemma(phi: Endomorphism) -> bool:
    """Nonzero spectrum of the injective part equals that of ``phi``."""
    return eventual_kernel(phi).induced_spectrum == eigen_spectrum(phi)


@dataclass(frozen=True)
class ContainmentReport:
    spectrum_f: SpectrumPoly
    spectrum_h: SpectrumPoly
    contained: bool
    delta_f: IntPoly
    delta_h: IntPoly
    delta_divides: bool | None  # None when phi is not injective
    injective: bool
    index_h: IndexResult
    basis_kind: str
    restriction_matrix: IntMatrix
    abelianization_matrix: IntMatrix


def _require_hypotheses(phi: Endomorphism, g: SubgroupGraph) -> IndexResult:
    if not is_invariant(g, phi):
        raise NotInvariant("the subgroup is not invariant under phi")
    idx = index(g)
    if not idx.finite:
        raise InfiniteIndex("the subgroup must have finite index")
    return idx


def _spectrum_two_ways(psi: Endomorphism, direct: SpectrumPoly) -> SpectrumPoly:
    reduced = eventual_kernel(psi).induced_spectrum
    if reduced != direct:
        raise PropertyViolation(
            f"injective part spectrum {reduced} differs from direct spectrum {direct}"
        )
    return reduced


def check_containment(phi: Endomorphism, g: SubgroupGraph) -> ContainmentReport:
    """Compare the nonzero spectrum of ``phi`` with that of ``phi`` restricted to ``g``."""
    idx = _require_hypotheses(phi, g)
    a = abelianization_matrix(phi)
    psi = restriction(phi, g)
    b = abelianization_matrix(psi)
    delta_f, delta_h = char_poly(a), char_poly(b)
    spec_f, spec_h = spectrum_poly(delta_f), spectrum_poly(delta_h)
    contained = spectrum_subset(spec_f, spec_h)
    injective = is_injective(phi)
    if injective:
        delta_divides = divides(delta_f.strip_t(), delta_h.strip_t())
    else:
        delta_divides = None
        bar_f = _spectrum_two_ways(phi, spec_f)
        bar_h = _spectrum_two_ways(psi, spec_h)
        if spectrum_subset(bar_f, bar_h) != contained:
            raise PropertyViolation("direct and reduced containment verdicts disagree")
    if not contained:
        raise PropertyViolation(
            f"nonzero spectrum {spec_f} is not contained in restricted spectrum {spec_h}"
        )
    return ContainmentReport(
        spectrum_f=spec_f,
        spectrum_h=spec_h,
        contained=contained,
        delta_f=delta_f,
        delta_h=delta_h,
        delta_divides=delta_divides,
        injective=injective,
        index_h=idx,
        basis_kind=g.basis_kind,
        restriction_matrix=b,
        abelianization_matrix=a,
    )


@dataclass(frozen=True)
class CassonVerdict:
    all_roots_of_unity: bool
    witness: SpectrumPoly | None
    spectrum_f: SpectrumPoly
    spectrum_h: SpectrumPoly

    @property
    def verdict(self) -> str:
        return "AllRootsOfUnity" if self.all_roots_of_unity else "HasNonUnitRoot"


def casson_check(phi: Endomorphism, g: SubgroupGraph) -> CassonVerdict:
    """Whether every eigenvalue of ``phi`` restricted to ``g`` is a root of unity."""
    _require_hypotheses(phi, g)
    spec_f = eigen_spectrum(phi)
    spec_h = spectrum_poly(char_poly(restriction_matrix(phi, g)))
    unit_h = all_roots_of_unity(spec_h)
    unit_f = all_roots_of_unity(spec_f)
    if not unit_f and unit_h:
        raise PropertyViolation("a non-unit eigenvalue of phi vanished from the restriction")
    if unit_h:
        return CassonVerdict(True, None, spec_f, spec_h)
    return CassonVerdict(False, spec_h if unit_f else spec_f, spec_f, spec_h)
