"""Explicit clique systems: polynomial curves over GF(Q), random restrictions
and padding, affine planes, and affine planes with enlarged lines."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import Polynomial, field_create, is_prime, poly_eval
from .errors import (
    BadDegreeBound,
    BadParams,
    InvariantViolation,
    NoValidPrime,
    NotPrime,
    RangeError,
    TraceTooLarge,
)
from .hypergraph import CliqueSystem, KGraph, expand_to_kgraph, validate_ell_system
from .rng import SEED_MAX, check_seed, make_rng


def build_polynomial_system(Q: int, k: int) -> CliqueSystem:
    """Graphs of all polynomials of degree < k over GF(Q), plus the Q columns.

    Vertex (x, y) of GF(Q) x GF(Q) has id x*Q + y.  Polynomial cliques come
    first, ordered by coefficient vector (constant term varying slowest),
    followed by the columns x = 0..Q-1.
    """
    if not is_prime(Q):
        raise NotPrime(f"Q={Q} is not prime")
    if not 2 <= k < Q:
        raise BadDegreeBound(f"need 2 <= k < Q, got k={k}, Q={Q}")
    fld = field_create(Q)
    cliques = []
    for coeffs in itertools.product(range(Q), repeat=k):
        poly = Polynomial(fld, coeffs)
        cliques.append([x * Q + poly_eval(poly, x) for x in range(Q)])
    for x in range(Q):
        cliques.append([x * Q + y for y in range(Q)])
    return CliqueSystem(Q * Q, Q, k - 1, cliques, {"construction": "poly", "Q": Q, "k": k})


def column_of(vertex: int, Q: int) -> int:
    return vertex // Q


def prime_for_clique_count(e: int, k: int, q: int) -> Optional[int]:
    """Largest prime Q >= q with e/2 < Q^k + Q <= e, if one exists."""
    best = None
    Q = max(q, 2)
    while Q**k + Q <= e:
        if is_prime(Q) and 2 * (Q**k + Q) > e:
            best = Q
        Q += 1
    return best


def check_regime(e: int, q: int, k: int) -> bool:
    """Warn when (e, q, k) is outside the range 2^q > e > (50q)^k; returns whether it is inside."""
    inside = 2**q > e > (50 * q) ** k
    if not inside:
        warnings.warn(
            f"parameters e={e}, q={q}, k={k} are outside 2^q > e > (50q)^k; "
            "the chromatic lower bound is not expected to show at this size",
            stacklevel=2,
        )
    return inside


def chernoff_bound(mu: float, delta: float, tail: str = "upper") -> float:
    """Multiplicative Chernoff tail bound for a sum of independent 0/1 variables with mean mu.

    lower: P(X <= (1-delta) mu) < exp(-delta^2 mu / 2)
    upper: P(X >= (1+delta) mu) < exp(-delta^2 mu / (2 + delta))
    """
    if mu < 0 or delta <= 0:
        raise BadParams(f"need mu >= 0 and delta > 0, got mu={mu}, delta={delta}")
    if tail == "lower":
        return math.exp(-delta * delta * mu / 2)
    if tail == "upper":
        return math.exp(-delta * delta * mu / (2 + delta))
    raise BadParams(f"tail must be 'lower' or 'upper', got {tail!r}")


@dataclass(frozen=True)
class RestrictionResult:
    source: CliqueSystem
    W: tuple[int, ...]
    traces: tuple[tuple[int, ...], ...]
    prob: float
    seed: int
    q_target: int
    resample_count: int
    failed: bool
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def max_trace(self) -> int:
        return max((len(t) for t in self.traces), default=0)


def _restriction_diagnostics(system: CliqueSystem, prob: float, q_target: int) -> dict:
    mu = prob * system.q
    diag = {"mu": mu, "cliques": system.e}
    if mu > 0 and q_target + 1 > mu:
        # P(|f & W| > q_target) = P(X >= (1 + delta) mu) with (1 + delta) mu = q_target + 1
        delta = (q_target + 1) / mu - 1
        per_clique = chernoff_bound(mu, delta, "upper")
        diag.update(
            delta=delta,
            per_clique_tail=per_clique,
            union_bound=min(1.0, system.e * per_clique),
        )
    return diag


def random_restriction(
    system: CliqueSystem,
    q_target: int,
    prob: Optional[float] = None,
    seed: int = 0,
    max_resamples: int = 100,
) -> RestrictionResult:
    """Keep each vertex with probability `prob`; resample until every clique trace has <= q_target vertices.

    Attempt i draws from seed + i.  The default probability is
    q_target / (10 * clique size).
    """
    if prob is None:
        prob = q_target / (10 * system.q)
    if not 0 < prob <= 1:
        raise BadParams(f"prob must lie in (0, 1], got {prob}")
    if q_target < 0 or max_resamples < 0:
        raise BadParams("q_target and max_resamples must be non-negative")
    seed = check_seed(seed)

    attempt = 0
    while True:
        rng = make_rng((seed + attempt) & SEED_MAX, "restriction")
        keep = rng.random(system.n) < prob
        traces = tuple(tuple(v for v in c if keep[v]) for c in system.cliques)
        ok = all(len(t) <= q_target for t in traces)
        if ok or attempt >= max_resamples:
            break
        attempt += 1
    W = tuple(np.flatnonzero(keep).tolist())
    return RestrictionResult(
        system, W, traces, float(prob), seed, q_target, attempt, not ok,
        _restriction_diagnostics(system, prob, q_target),
    )


def pad_cliques(restriction: RestrictionResult, q_target: Optional[int] = None) -> CliqueSystem:
    """Fill every trace up to q_target vertices with fresh vertices.

    Kept vertices get ids 0..|W|-1 in ascending order; padding ids follow,
    clique by clique.
    """
    if q_target is None:
        q_target = restriction.q_target
    if restriction.failed or any(len(t) > q_target for t in restriction.traces):
        raise TraceTooLarge(f"some trace exceeds q_target={q_target}")
    pos = {v: i for i, v in enumerate(restriction.W)}
    nxt = len(restriction.W)
    cliques = []
    for t in restriction.traces:
        fresh = list(range(nxt, nxt + q_target - len(t)))
        nxt += len(fresh)
        cliques.append([pos[v] for v in t] + fresh)
    prov = {
        "construction": "pad",
        "q_target": q_target,
        "seed": restriction.seed,
        "prob": restriction.prob,
        "resample_count": restriction.resample_count,
        "kept": len(restriction.W),
    }
    return CliqueSystem(nxt, q_target, restriction.source.ell, cliques, prov)


def restricted_kgraph(restriction: RestrictionResult, k: int) -> KGraph:
    """The k-graph on W whose edges are the k-subsets of the traces, ids compacted."""
    pos = {v: i for i, v in enumerate(restriction.W)}
    edges = {
        tuple(pos[v] for v in s)
        for t in restriction.traces
        for s in itertools.combinations(t, k)
    }
    return KGraph(len(restriction.W), k, edges, {"vertex_map": list(restriction.W)})


@dataclass(frozen=True)
class IncidencePlane:
    """Affine plane over GF(q); point (x, y) has id x*q + y."""

    q: int
    lines: tuple[tuple[int, ...], ...]

    @property
    def n_points(self) -> int:
        return self.q * self.q

    def line_masks(self) -> list[int]:
        return [sum(1 << v for v in line) for line in self.lines]

    def lines_through(self) -> list[list[int]]:
        through: list[list[int]] = [[] for _ in range(self.n_points)]
        for j, line in enumerate(self.lines):
            for v in line:
                through[v].append(j)
        return through

    def line_of_pair(self) -> dict[tuple[int, int], int]:
        return {pair: j for j, line in enumerate(self.lines) for pair in itertools.combinations(line, 2)}

    def as_system(self) -> CliqueSystem:
        return CliqueSystem(self.n_points, self.q, 1, self.lines, {"construction": "plane", "q": self.q})

    def collinear_triples(self) -> KGraph:
        return expand_to_kgraph(self.as_system(), 3)


def build_affine_plane(q: int) -> IncidencePlane:
    """Lines y = m x + b for all m, b, then the verticals x = c."""
    fld = field_create(q)
    lines = []
    for m in range(q):
        for b in range(q):
            lines.append(tuple(sorted(x * q + fld.add(fld.mul(m, x), b) for x in range(q))))
    for c in range(q):
        lines.append(tuple(c * q + y for y in range(q)))
    return IncidencePlane(q, tuple(lines))


def build_enlarged_plane_system(e: int, q: int) -> CliqueSystem:
    """An e-clique (q,2)-system whose 2-graph has a clique on p^2 points.

    Uses the affine plane of the largest prime p <= q with p^2 + p <= e:
    each of its lines gets q - p private new vertices, and e - (p^2 + p)
    disjoint q-cliques on new vertices make up the count.  The p^2 plane
    points come first (ids 0..p^2-1).
    """
    if not q < e <= q * q:
        raise RangeError(f"need q < e <= q^2, got e={e}, q={q}")
    p = next((c for c in range(q, 1, -1) if is_prime(c) and c * c + c <= e), None)
    if p is None:
        raise NoValidPrime(f"no prime p <= {q} with p^2 + p <= {e}")
    plane = build_affine_plane(p)
    nxt = p * p
    cliques = []
    for line in plane.lines:
        cliques.append(list(line) + list(range(nxt, nxt + q - p)))
        nxt += q - p
    for _ in range(e - (p * p + p)):
        cliques.append(list(range(nxt, nxt + q)))
        nxt += q
    system = CliqueSystem(
        nxt, q, 1, cliques,
        {"construction": "enlarged_plane", "e": e, "q": q, "p": p, "plane_points": p * p},
    )
    if not validate_ell_system(system).ok:
        raise InvariantViolation("enlarged lines intersect in more than one vertex")
    return system
