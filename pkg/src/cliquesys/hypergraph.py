"""Clique systems, their k-uniform expansions, and basic statistics."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import BadUniformity, MalformedClique
from .rng import make_rng


def _canonical(sets: Iterable[Sequence[int]], size: int, n: int, what: str) -> tuple[tuple[int, ...], ...]:
    out = []
    for s in sets:
        t = tuple(sorted(int(v) for v in s))
        if len(t) != size or len(set(t)) != size:
            raise MalformedClique(f"{what} {list(s)} does not have {size} distinct vertices")
        if t and (t[0] < 0 or t[-1] >= n):
            raise MalformedClique(f"{what} {list(s)} has ids outside [0, {n})")
        out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class CliqueSystem:
    """A family of q-cliques on vertices 0..n-1 meant to pairwise share <= ell vertices.

    Construction only checks shape; use :func:`validate_ell_system` for the
    intersection condition.
    """

    n: int
    q: int
    ell: int
    cliques: tuple[tuple[int, ...], ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        cl = _canonical(self.cliques, self.q, self.n, "clique")
        if len(set(cl)) != len(cl):
            raise MalformedClique("clique list contains duplicates")
        object.__setattr__(self, "cliques", cl)

    @property
    def e(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class KGraph:
    """A k-uniform hypergraph; edges are stored sorted, deduplicated and in lexicographic order."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ed = _canonical(self.edges, self.k, self.n, "edge")
        object.__setattr__(self, "edges", tuple(sorted(set(ed))))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_masks(self) -> list[int]:
        return [sum(1 << v for v in e) for e in self.edges]

    def incident(self) -> list[list[int]]:
        """Per-vertex list of incident edge indices."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    def induced(self, vertices: Iterable[int]) -> "KGraph":
        """Subgraph induced on `vertices`, relabelled 0..len-1 in ascending order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return KGraph(len(keep), self.k, edges, {"vertex_map": keep})


class ValidationResult(NamedTuple):
    max_pairwise_intersection: int
    ok: bool


def _incidence(system: CliqueSystem) -> np.ndarray:
    inc = np.zeros((system.e, system.n), dtype=np.int32)
    for i, c in enumerate(system.cliques):
        inc[i, list(c)] = 1
    return inc


def validate_ell_system(system: CliqueSystem) -> ValidationResult:
    """Largest intersection over all pairs of distinct cliques, and whether it is <= ell."""
    if system.e < 2:
        return ValidationResult(0, True)
    inc = _incidence(system)
    gram = inc @ inc.T
    np.fill_diagonal(gram, 0)
    worst = int(gram.max())
    return ValidationResult(worst, worst <= system.ell)


def expand_to_kgraph(system: CliqueSystem, k: int) -> KGraph:
    """Union of all k-subsets of the cliques."""
    if not 1 <= k <= system.q:
        raise BadUniformity(f"k={k} must lie in [1, q={system.q}]")
    edges = {s for c in system.cliques for s in itertools.combinations(c, k)}
    prov = {"source": "expand", "k": k, "cliques": system.e}
    return KGraph(system.n, k, edges, prov)


@dataclass(frozen=True)
class DegreeReport:
    degrees: tuple[int, ...]
    max_degree: int
    average_degree: float
    max_codegree: int


def pair_codegrees(graph: KGraph) -> Counter:
    cod: Counter = Counter()
    for e in graph.edges:
        cod.update(itertools.combinations(e, 2))
    return cod


def degree_report(graph: KGraph) -> DegreeReport:
    deg = [0] * graph.n
    for e in graph.edges:
        for v in e:
            deg[v] += 1
    cod = pair_codegrees(graph)
    return DegreeReport(
        tuple(deg),
        max(deg, default=0),
        sum(deg) / graph.n if graph.n else 0.0,
        max(cod.values(), default=0),
    )


class Cherry(NamedTuple):
    pair: tuple[int, int]
    thirds: tuple[int, int, int]


def find_cherries(graph: KGraph) -> list[Cherry]:
    """Every triple of edges {a,b,x}, {a,b,y}, {a,b,z} sharing the pair {a,b}."""
    if graph.k != 3:
        raise BadUniformity("cherries are defined for 3-graphs only")
    thirds: dict[tuple[int, int], list[int]] = defaultdict(list)
    for a, b, c in graph.edges:
        thirds[(a, b)].append(c)
        thirds[(a, c)].append(b)
        thirds[(b, c)].append(a)
    out = []
    for pair in sorted(thirds):
        for trio in itertools.combinations(sorted(thirds[pair]), 3):
            out.append(Cherry(pair, trio))
    return out


def cherry_count(graph: KGraph) -> int:
    """Number of cherries from the codegree formula sum over pairs of C(codeg, 3)."""
    return sum(comb(c, 3) for c in pair_codegrees(graph).values())


def random_induced(graph: KGraph, prob: float, seed: int) -> KGraph:
    """Keep each vertex independently with probability `prob`."""
    rng = make_rng(seed, "induced")
    kept = np.flatnonzero(rng.random(graph.n) < prob).tolist()
    sub = graph.induced(kept)
    sub.provenance.update({"prob": prob, "seed": seed})
    return sub
