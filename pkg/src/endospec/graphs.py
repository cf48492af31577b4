"""Stallings subgroup graphs of finitely generated subgroups of a free group.

A :class:`SubgroupGraph` is a folded, based, edge-labeled core graph.  Vertex 0
is the base and vertices are numbered in breadth-first order from the base,
exploring generators in index order with outgoing edges before incoming
ones.  Two graphs of the same subgroup therefore have identical tables.

Folding tracks, for every edge, a label in the free group on the user's
generators (a "gauge" per vertex, kept in a weighted union-find).  When the
user's generators turn out to be a free basis of the subgroup these labels
rewrite any member directly in that basis; otherwise the Schreier basis read
off the breadth-first spanning tree is used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .errors import InfiniteIndex, NotInSubgroup, RankMismatch
from .words import Endomorphism, Word, apply, invert, multiply


class BasisWord(Word):
    """A word over a subgroup basis; letter ``i`` stands for basis element ``h_{i+1}``."""

    __slots__ = ()

    def name(self, index: int) -> str:
        return f"h{index + 1}"


@dataclass(frozen=True)
class IndexResult:
    m: int | None

    @property
    def finite(self) -> bool:
        return self.m is not None

    def __str__(self) -> str:
        return f"Finite({self.m})" if self.finite else "Infinite"


class _Folder:
    """Worklist folding with union-find on vertices and gauge-tracked labels."""

    def __init__(self, rank: int, label_rank: int | None):
        self.rank = rank
        self.track = label_rank is not None
        self.one = Word.identity(label_rank) if self.track else None
        self.parent: list[int] = []
        self.pot: list[Word | None] = []
        self.edges: list[tuple[int, int, int, Word | None]] = []
        self.out: list[dict[int, None]] = []
        self.inn: list[dict[int, None]] = []
        self.queue: deque[int] = deque()
        self.conflict = False

    def vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.pot.append(self.one)
        self.out.append({})
        self.inn.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        for node in reversed(path):
            p = self.parent[node]
            if p != root:
                if self.track:
                    self.pot[node] = multiply(self.pot[p], self.pot[node])
                self.parent[node] = root
        return root

    def gauge(self, v: int) -> Word | None:
        root = self.find(v)
        return self.one if v == root else self.pot[v]

    def label(self, e: int) -> Word | None:
        u, _, v, lab = self.edges[e]
        if not self.track:
            return None
        return multiply(multiply(self.gauge(u), lab), invert(self.gauge(v)))

    def add_edge(self, u: int, x: int, v: int, label: Word | None) -> None:
        e = len(self.edges)
        self.edges.append((u, x, v, label))
        ru, rv = self.find(u), self.find(v)
        self.out[ru][e] = None
        self.inn[rv][e] = None
        self.queue.append(ru)
        self.queue.append(rv)

    def run(self) -> None:
        while self.queue:
            v = self.queue.popleft()
            if self.parent[v] != v:
                continue
            if self._fold_at(v):
                self.queue.append(self.find(v))

    def _fold_at(self, v: int) -> bool:
        for incoming, table in ((False, self.out[v]), (True, self.inn[v])):
            seen: dict[int, int] = {}
            for e in table:
                x = self.edges[e][1]
                if x in seen:
                    self._fold(v, seen[x], e, incoming)
                    return True
                seen[x] = e
        return False

    def _fold(self, s: int, e1: int, e2: int, incoming: bool) -> None:
        # far endpoint of each edge, seen from the shared root s
        end = 0 if incoming else 2
        t1, t2 = self.find(self.edges[e1][end]), self.find(self.edges[e2][end])
        near, far = (self.inn, self.out) if incoming else (self.out, self.inn)
        if t1 == t2:
            if self.track and self.label(e1) != self.label(e2):
                self.conflict = True
            del near[s][e2]
            del far[t1][e2]
            return
        if t2 == 0 or (t1 != 0 and t2 < t1):
            e1, e2, t1, t2 = e2, e1, t2, t1
        keep_root, drop_root = t1, t2
        if self.track:
            l_keep, l_drop = self.label(e1), self.label(e2)
            if incoming:
                h = multiply(l_keep, invert(l_drop))
            else:
                h = multiply(invert(l_keep), l_drop)
        del near[s][e2]
        del far[drop_root][e2]
        self.parent[drop_root] = keep_root
        if self.track:
            self.pot[drop_root] = h
        self.out[keep_root].update(self.out[drop_root])
        self.inn[keep_root].update(self.inn[drop_root])
        self.out[drop_root] = {}
        self.inn[drop_root] = {}
        self.queue.append(keep_root)

    def trim(self) -> list[int]:
        """Prune hanging trees; return surviving roots (the base always survives)."""
        alive = {v for v in range(len(self.parent)) if self.parent[v] == v}
        degree = {v: len(self.out[v]) + len(self.inn[v]) for v in alive}
        stack = [v for v in alive if v != 0 and degree[v] <= 1]
        while stack:
            v = stack.pop()
            if v not in alive:
                continue
            alive.discard(v)
            for e in list(self.out[v]):
                w = self.find(self.edges[e][2])
                del self.out[v][e]
                self.inn[w].pop(e, None)
                if w in alive:
                    degree[w] -= 1
                    if w != 0 and degree[w] <= 1:
                        stack.append(w)
            for e in list(self.inn[v]):
                w = self.find(self.edges[e][0])
                del self.inn[v][e]
                self.out[w].pop(e, None)
                if w in alive:
                    degree[w] -= 1
                    if w != 0 and degree[w] <= 1:
                        stack.append(w)
        return sorted(alive)


def _bfs_order(rank: int, succ: Mapping[Hashable, Mapping[int, Hashable]], base: Hashable):
    """Canonical numbering plus the breadth-first spanning tree.

    Returns ``(order, tree)`` where ``order`` lists old vertex ids by new
    number and ``tree[new_v] = (new_parent, gen, sign)`` for every non-base
    vertex.
    """
    pred: dict[Hashable, dict[int, Hashable]] = {v: {} for v in succ}
    for u, row in succ.items():
        for x, v in row.items():
            pred[v][x] = u
    number = {base: 0}
    order = [base]
    tree: list[tuple[int, int, int] | None] = [None]
    i = 0
    while i < len(order):
        u = order[i]
        for x in range(rank):
            for sign, table in ((1, succ), (-1, pred)):
                v = table[u].get(x)
                if v is not None and v not in number:
                    number[v] = len(order)
                    order.append(v)
                    tree.append((i, x, sign))
        i += 1
    return order, tree


class SubgroupGraph:
    """Folded core graph of a subgroup ``H`` of the rank-``r`` free group.

    ``out[v][x]`` is the target of the ``x``-edge leaving ``v`` (or ``-1``)
    and ``inn[v][x]`` the source of the ``x``-edge entering ``v``.
    """

    def __init__(
        self,
        rank: int,
        out: Sequence[Sequence[int]],
        tree: Sequence[tuple[int, int, int] | None],
        generators: Sequence[Word] | None = None,
        given_labels: Mapping[tuple[int, int], Word] | None = None,
    ):
        self.rank = rank
        self.out = tuple(tuple(row) for row in out)
        inn = [[-1] * rank for _ in self.out]
        for u, row in enumerate(self.out):
            for x, v in enumerate(row):
                if v >= 0:
                    inn[v][x] = u
        self.inn = tuple(tuple(row) for row in inn)
        self.tree = tuple(tree)
        self.generators = tuple(generators) if generators is not None else None

        paths = [Word.identity(rank)]
        for v in range(1, len(self.out)):
            p, x, sign = self.tree[v]
            paths.append(multiply(paths[p], Word.generator(rank, x, sign)))
        self.paths = tuple(paths)

        tree_edges = set()
        for v in range(1, len(self.out)):
            p, x, sign = self.tree[v]
            tree_edges.add((p, x) if sign > 0 else (v, x))
        self.basis_edges = tuple(
            (u, x, v)
            for u, row in enumerate(self.out)
            for x, v in enumerate(row)
            if v >= 0 and (u, x) not in tree_edges
        )
        self.schreier_basis = tuple(
            multiply(multiply(self.paths[u], Word.generator(rank, x)), invert(self.paths[v]))
            for u, x, v in self.basis_edges
        )

        n = len(self.basis_edges)
        if given_labels is not None and self.generators is not None and len(self.generators) == n:
            self.basis_kind = "given"
            self.basis = self.generators
            self.labels = {
                key: BasisWord(n, lab.letters, reduced=True) for key, lab in given_labels.items()
            }
        else:
            self.basis_kind = "schreier"
            self.basis = self.schreier_basis
            one = BasisWord.identity(n)
            self.labels = {(u, x): one for u, x in tree_edges}
            for i, (u, x, _) in enumerate(self.basis_edges):
                self.labels[(u, x)] = BasisWord(n, (i + 1,), reduced=True)

    @property
    def num_vertices(self) -> int:
        return len(self.out)

    @property
    def num_edges(self) -> int:
        return sum(1 for row in self.out for v in row if v >= 0)

    @property
    def subgroup_rank(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def isomorphic(self, other: SubgroupGraph) -> bool:
        """Based labeled isomorphism; the canonical numbering reduces it to equality."""
        return self.rank == other.rank and self.out == other.out

    def __repr__(self) -> str:
        return (
            f"SubgroupGraph(rank={self.rank}, vertices={self.num_vertices}, "
            f"edges={self.num_edges}, index={index(self)})"
        )


def _from_adjacency(
    rank: int,
    succ: Mapping[Hashable, Mapping[int, Hashable]],
    base: Hashable,
    generators: Sequence[Word] | None = None,
    labels: Mapping[tuple[Hashable, int], Word] | None = None,
) -> SubgroupGraph:
    order, tree = _bfs_order(rank, succ, base)
    number = {v: i for i, v in enumerate(order)}
    out = [[-1] * rank for _ in order]
    for u in order:
        for x, v in succ[u].items():
            out[number[u]][x] = number[v]
    given = None
    if labels is not None:
        given = {(number[u], x): lab for (u, x), lab in labels.items()}
    return SubgroupGraph(rank, out, tree, generators, given)


def build_graph(rank: int, generators: Sequence[Word]) -> SubgroupGraph:
    """Stallings graph of the subgroup generated by ``generators``."""
    generators = [w if isinstance(w, Word) else Word(rank, w) for w in generators]
    for w in generators:
        if w.rank != rank:
            raise RankMismatch(f"generator {w} has rank {w.rank}, expected {rank}")
    folder = _Folder(rank, len(generators))
    base = folder.vertex()
    for i, w in enumerate(generators):
        if not w:
            continue
        label = Word(len(generators), (i + 1,), reduced=True)
        u = base
        for j, y in enumerate(w.letters):
            v = base if j == len(w) - 1 else folder.vertex()
            lab = label if j == 0 else folder.one
            if y > 0:
                folder.add_edge(u, y - 1, v, lab)
            else:
                folder.add_edge(v, -y - 1, u, invert(lab))
            u = v
    folder.run()
    alive = folder.trim()
    succ: dict[int, dict[int, int]] = {v: {} for v in alive}
    labels = {}
    for v in alive:
        for e in folder.out[v]:
            _, x, w, _ = folder.edges[e]
            succ[v][x] = folder.find(w)
            labels[(v, x)] = folder.label(e)
    if folder.conflict:
        labels = None
    return _from_adjacency(rank, succ, base, generators, labels)


def covering_graph(rank: int, succ: Mapping[Hashable, Mapping[int, Hashable]], base: Hashable) -> SubgroupGraph:
    """Graph from an explicit (already folded) adjacency, e.g. a finite cover."""
    return _from_adjacency(rank, succ, base)


def _trace(g: SubgroupGraph, w: Word) -> list[tuple[int, int, int]] | None:
    """Edges crossed by ``w`` from the base as ``(source, gen, sign)``; ``None`` if it falls off."""
    if w.rank != g.rank:
        raise RankMismatch(f"rank {w.rank} word traced in a rank {g.rank} graph")
    v = 0
    steps = []
    for y in w.letters:
        if y > 0:
            nxt = g.out[v][y - 1]
            if nxt < 0:
                return None
            steps.append((v, y - 1, 1))
        else:
            nxt = g.inn[v][-y - 1]
            if nxt < 0:
                return None
            steps.append((nxt, -y - 1, -1))
        v = nxt
    if v != 0:
        return None
    return steps


def contains(g: SubgroupGraph, w: Word) -> bool:
    return _trace(g, w) is not None


def index(g: SubgroupGraph) -> IndexResult:
    complete = all(v >= 0 for row in g.out for v in row) and all(
        v >= 0 for row in g.inn for v in row
    )
    return IndexResult(g.num_vertices if complete else None)


def schreier_basis(g: SubgroupGraph) -> list[Word]:
    return list(g.schreier_basis)


def transversal(g: SubgroupGraph) -> list[Word]:
    if not index(g).finite:
        raise InfiniteIndex("a transversal needs a finite-index subgroup")
    return list(g.paths)


def rewrite_in_basis(g: SubgroupGraph, w: Word) -> BasisWord:
    """Express ``w`` in ``g.basis`` by reading edge labels along its path."""
    steps = _trace(g, w)
    if steps is None:
        raise NotInSubgroup(f"{w} is not in the subgroup")
    letters: list[int] = []
    for u, x, sign in steps:
        lab = g.labels[(u, x)].letters
        letters.extend(lab if sign > 0 else [-y for y in reversed(lab)])
    return BasisWord(len(g.basis), letters)


def expand(g: SubgroupGraph, bw: BasisWord) -> Word:
    """Substitute the basis words back into ``bw``."""
    out = Word.identity(g.rank)
    for y in bw.letters:
        h = g.basis[abs(y) - 1]
        out = multiply(out, h if y > 0 else invert(h))
    return out


def is_invariant(g: SubgroupGraph, phi: Endomorphism) -> bool:
    if phi.rank != g.rank:
        raise RankMismatch(f"rank {phi.rank} endomorphism on a rank {g.rank} graph")
    return all(contains(g, apply(phi, h)) for h in g.basis)
