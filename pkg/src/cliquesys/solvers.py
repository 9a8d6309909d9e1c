"""Independence and chromatic number of k-graphs, exact and heuristic."""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import BadUniformity, InvariantViolation, NotOneSystem, UncoloredVertex
from .hypergraph import CliqueSystem, KGraph, expand_to_kgraph
from .rng import make_rng

DEFAULT_BUDGET = 10**7
# above this many edges the packing bound costs more than it prunes
PACKING_MAX_EDGES = 4096


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    num_colors: int
    method: str
    seed: Optional[int] = None
    info: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class SolveResult:
    value: int
    certificate: tuple
    exact: bool
    nodes_explored: int
    budget_exhausted: bool


class VerifyResult(NamedTuple):
    proper: bool
    violation: Optional[tuple[int, ...]]


def compact_colors(assignment: Sequence[int]) -> tuple[int, ...]:
    """Relabel colors 0, 1, ... in order of first appearance."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in assignment)


def verify_coloring(graph: KGraph, coloring: Coloring | Sequence[int]) -> VerifyResult:
    """Proper iff no edge is monochromatic; reports the lexicographically first bad edge."""
    colors = coloring.assignment if isinstance(coloring, Coloring) else tuple(coloring)
    if len(colors) != graph.n or any(c is None for c in colors):
        raise UncoloredVertex(f"coloring covers {len(colors)} of {graph.n} vertices")
    for e in graph.edges:
        c0 = colors[e[0]]
        if all(colors[v] == c0 for v in e):
            return VerifyResult(False, e)
    return VerifyResult(True, None)


def is_independent(graph: KGraph, vertices: Sequence[int]) -> bool:
    s = set(vertices)
    return not any(all(v in s for v in e) for e in graph.edges)


def greedy_independent_set(graph: KGraph, seed: int = 0) -> list[int]:
    """Scan vertices by increasing degree (random tie-break), keeping each one that closes no edge."""
    rng = make_rng(seed, "independent")
    inc = graph.incident()
    masks = graph.edge_masks()
    keys = rng.random(graph.n)
    order = sorted(range(graph.n), key=lambda v: (len(inc[v]), keys[v], v))
    chosen = 0
    for v in order:
        bit = 1 << v
        if all(masks[i] & ~chosen != bit for i in inc[v]):
            chosen |= bit
    return [v for v in range(graph.n) if chosen >> v & 1]


def _completions(graph: KGraph) -> dict[tuple[int, ...], int]:
    """Map each sorted (k-1)-subset of an edge to the mask of vertices completing it."""
    comp: dict[tuple[int, ...], int] = {}
    for e in graph.edges:
        for i, v in enumerate(e):
            key = e[:i] + e[i + 1:]
            comp[key] = comp.get(key, 0) | (1 << v)
    return comp


def _packing(live: list[int]) -> int:
    used = count = 0
    for r in live:
        if not r & used:
            used |= r
            count += 1
    return count


def exact_independence_number(graph: KGraph, budget: int = DEFAULT_BUDGET, seed: int = 0) -> SolveResult:
    """Branch and bound on vertices in ascending id order.

    Each node holds the chosen set S and the candidate set C of later
    vertices that close no edge with S.  A node is cut when |S| + |C|, less
    the size of a greedy packing of disjoint partial edges inside S + C,
    cannot beat the incumbent.  Adding v to S forbids every vertex that
    completes an edge with v and k-2 vertices of S.
    """
    n, k = graph.n, graph.k
    comp = _completions(graph)
    forbidden0 = comp.get((), 0) if k == 1 else 0
    full = ((1 << n) - 1) & ~forbidden0

    best = greedy_independent_set(graph, seed)
    best_size = len(best)
    use_packing = graph.m <= PACKING_MAX_EDGES
    masks = sorted(graph.edge_masks(), key=lambda r: r.bit_count()) if use_packing else []

    nodes = 0
    exhausted = False
    # (chosen tuple, candidate mask, live residual edges or None)
    stack = [((), full, masks)]
    while stack:
        chosen, cand, live = stack.pop()
        nodes += 1
        if nodes > budget:
            exhausted = True
            break
        size = len(chosen)
        if not cand:
            if size > best_size:
                best, best_size = list(chosen), size
            continue
        room = size + cand.bit_count()
        if room <= best_size:
            continue
        if use_packing and room - _packing(live) <= best_size:
            continue
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        rest = cand & ~bit

        # exclude v: residual edges through v are satisfied
        ex_live = [r for r in live if not r & bit] if use_packing else live
        stack.append((chosen, rest, ex_live))

        forbid = 0
        for sub in itertools.combinations(chosen, k - 2) if k >= 2 else ():
            forbid |= comp.get(sub + (v,), 0)
        in_cand = rest & ~forbid
        if use_packing:
            dead = forbid
            in_live = []
            for r in live:
                if r & dead:
                    continue
                r &= ~bit
                if r.bit_count() > 1:
                    in_live.append(r)
        else:
            in_live = live
        stack.append((chosen + (v,), in_cand, in_live))

    return SolveResult(best_size, tuple(sorted(best)), not exhausted, nodes, exhausted)


def exact_chromatic_number(graph: KGraph, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Least c admitting a proper coloring, trying c = 1, 2, ... in turn.

    Vertices are colored in ascending id order; a vertex may take any
    color already in use or the next new one, so vertex 0 always gets
    color 0.
    """
    n, k = graph.n, graph.k
    if n == 0:
        return SolveResult(0, (), True, 0, False)
    if k == 1 and graph.m:
        raise BadUniformity("a 1-graph with an edge has no proper coloring")
    back: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in graph.edges:
        back[e[-1]].append(e[:-1])

    colors = [-1] * n
    nodes = 0
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))

    class _Budget(Exception):
        pass

    def place(v: int, used: int, c: int) -> bool:
        nonlocal nodes
        if v == n:
            return True
        nodes += 1
        if nodes > budget:
            raise _Budget
        for col in range(min(used + 1, c)):
            if any(all(colors[u] == col for u in rest) for rest in back[v]):
                continue
            colors[v] = col
            if place(v + 1, max(used, col + 1), c):
                return True
        colors[v] = -1
        return False

    try:
        for c in range(1, n + 1):
            if place(0, 0, c):
                return SolveResult(c, tuple(colors), True, nodes, False)
    except _Budget:
        return SolveResult(c, (), False, nodes, True)
    finally:
        sys.setrecursionlimit(old_limit)
    raise InvariantViolation("no proper coloring with n colors")  # pragma: no cover


def ceil_root(m: int, k: int) -> int:
    """Smallest integer r with r**k >= m."""
    if m <= 0:
        return 0
    r = max(1, int(round(m ** (1.0 / k))))
    while r**k < m:
        r += 1
    while r > 1 and (r - 1) ** k >= m:
        r -= 1
    return r


def greedy_coloring(graph: KGraph, seed: int = 0, palette: Optional[int] = None, stream: str = "coloring") -> Coloring:
    """Random coloring from ceil(m^(1/k)) colors, then repair.

    Monochromatic edges are scanned in lexicographic order; an edge that
    is still monochromatic when reached gives its least vertex a fresh
    color of its own.
    """
    if palette is None:
        palette = max(1, ceil_root(graph.m, graph.k))
    rng = make_rng(seed, stream)
    colors = rng.integers(0, palette, size=graph.n).tolist()
    mono = [e for e in graph.edges if all(colors[v] == colors[e[0]] for v in e)]
    fresh = palette
    for e in mono:
        if all(colors[v] == colors[e[0]] for v in e):
            colors[e[0]] = fresh
            fresh += 1
    assignment = compact_colors(colors)
    num = len(set(assignment))
    if num > palette + len(mono):
        raise InvariantViolation("greedy coloring used more colors than palette + repairs")
    info = {"palette": palette, "phase1_monochromatic": len(mono), "repairs": fresh - palette}
    return Coloring(assignment, num, "greedy", seed, info)


def _degree_threshold(e: int, q: int, k: int) -> int:
    """ceil(sqrt(e) * q^(k-1)), computed in integers."""
    x = e * q ** (2 * k - 2)
    r = int(np.sqrt(x))
    while r * r > x:
        r -= 1
    while (r + 1) ** 2 <= x:
        r += 1
    return r if r * r == x else r + 1


def split_coloring(system: CliqueSystem, k: int, seed: int = 0) -> Coloring:
    """Color low-degree and high-degree vertices separately, with disjoint palettes.

    With d = ceil(sqrt(e) q^(k-1)), A holds the vertices of degree <= d in
    the k-graph expansion and B the rest.  Each side is colored by
    :func:`greedy_coloring` on its internal edges; edges meeting both sides
    are never monochromatic since the palettes are disjoint.  The
    counting bounds on |B| and on the maximum degree inside B are checked
    on every call.
    """
    if system.ell != 1:
        raise NotOneSystem(f"split coloring needs a 1-system, got ell={system.ell}")
    graph = expand_to_kgraph(system, k)
    q, e = system.q, system.e
    deg = [0] * graph.n
    for ed in graph.edges:
        for v in ed:
            deg[v] += 1
    d = _degree_threshold(e, q, k)
    A = [v for v in range(graph.n) if deg[v] <= d]
    B = [v for v in range(graph.n) if deg[v] > d]

    total = k * e * comb(q, k)
    deg_sum_B = sum(deg[v] for v in B)
    if not total >= deg_sum_B >= len(B) * d:
        raise InvariantViolation("degree sum over B violates k e C(q,k) >= sum >= |B| d")

    HA, HB = graph.induced(A), graph.induced(B)
    max_deg_B = 0
    if B:
        degB = [0] * HB.n
        for ed in HB.edges:
            for v in ed:
                degB[v] += 1
        max_deg_B = max(degB)
        cap = Fraction(len(B) - 1, q - 1) * comb(q - 1, k - 1)
        if max_deg_B > cap:
            raise InvariantViolation("max degree of H[B] exceeds (|B|-1)/(q-1) C(q-1,k-1)")

    colA = greedy_coloring(HA, seed, stream="split_a")
    colB = greedy_coloring(HB, seed, stream="split_b")
    colors = [0] * graph.n
    for i, v in enumerate(A):
        colors[v] = colA.assignment[i]
    for i, v in enumerate(B):
        colors[v] = colA.num_colors + colB.assignment[i]
    assignment = compact_colors(colors)
    info = {
        "d": d,
        "size_A": len(A),
        "size_B": len(B),
        "colors_A": colA.num_colors,
        "colors_B": colB.num_colors,
        "degree_sum_B": deg_sum_B,
        "degree_sum_cap": total,
        "max_degree_B": max_deg_B,
        "max_degree_B_cap": str(Fraction(len(B) - 1, q - 1) * comb(q - 1, k - 1)) if B else None,
    }
    return Coloring(assignment, len(set(assignment)), "split", seed, info)
