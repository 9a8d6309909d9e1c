"""The random greedy process for linear q-graphs.

Uniform random q-subsets of [n] are drawn one at a time; a draw is kept
when it shares at most one vertex with every set kept so far, i.e. when
none of its vertex pairs is already covered.  Conditioned on acceptance,
a draw is uniform over the admissible q-sets, which is exactly the law of
the process.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from .errors import BadParams, BadUniformity
from .hypergraph import CliqueSystem, KGraph, expand_to_kgraph
from .rng import check_seed, make_rng
from .solvers import exact_independence_number, greedy_independent_set

MAX_BATCH = 1 << 15


@dataclass(frozen=True)
class ProcessTrace:
    n: int
    q: int
    seed: int
    target_e: Optional[int]
    reject_limit: int
    accepted: tuple[tuple[int, ...], ...]
    rejections: tuple[int, ...]
    trailing_rejections: int
    stop_reason: str

    @property
    def e(self) -> int:
        return len(self.accepted)

    def to_system(self) -> CliqueSystem:
        prov = {
            "construction": "process",
            "seed": self.seed,
            "reject_limit": self.reject_limit,
            "target_e": self.target_e,
            "stop_reason": self.stop_reason,
            "rejections": list(self.rejections),
            "trailing_rejections": self.trailing_rejections,
        }
        return CliqueSystem(self.n, self.q, 1, self.accepted, prov)


def max_linear_edges(n: int, q: int) -> int:
    """floor(C(n,2) / C(q,2)): each accepted set consumes C(q,2) uncovered pairs."""
    return comb(n, 2) // comb(q, 2)


def _scan(rng: np.random.Generator, covered: np.ndarray, n: int, q: int, size: int):
    """Examine `size` uniform q-set draws in order; return (index, set) of the first admissible one.

    Columns are built one vertex at a time and only while still admissible.
    Vertex i of a column is redrawn until it differs from the earlier ones,
    which makes it uniform over the rest, so every column is a uniform
    q-set.  Returns (size, None) when every draw is rejected.
    """
    vals = np.empty((q, size), dtype=np.int64)
    vals[0] = rng.integers(0, n, size=size)
    alive = None  # None: every column is still admissible
    for i in range(1, q):
        prev = [vals[0]] if alive is None else [vals[t, alive] for t in range(i)]
        r = rng.integers(0, n, size=prev[0].size)
        clash = np.flatnonzero(np.logical_or.reduce([p == r for p in prev]))
        while clash.size:
            r[clash] = rng.integers(0, n, size=clash.size)
            still = np.logical_or.reduce([p[clash] == r[clash] for p in prev])
            clash = clash[still]
        ok = ~covered[prev[0] * n + r]
        for p in prev[1:]:
            ok &= ~covered[p * n + r]
        if alive is None:
            vals[i] = r
            alive = np.flatnonzero(ok)
        else:
            vals[i, alive] = r
            alive = alive[np.flatnonzero(ok)]
        if not alive.size:
            return size, None
    first = int(alive[0])
    return first, sorted(int(v) for v in vals[:, first])


def run_greedy_process(
    n: int,
    q: int,
    seed: int = 0,
    target_e: Optional[int] = None,
    reject_limit: Optional[int] = None,
) -> ProcessTrace:
    """Run the process until target_e sets are accepted, reject_limit
    consecutive draws fail, or too few uncovered pairs remain for any q-set.

    The default reject_limit is 1000 * n.
    """
    if not 2 <= q <= n:
        raise BadParams(f"need 2 <= q <= n, got n={n}, q={q}")
    if reject_limit is None:
        reject_limit = 1000 * n
    if reject_limit < 1 or (target_e is not None and target_e < 0):
        raise BadParams("reject_limit must be positive and target_e non-negative")
    seed = check_seed(seed)
    rng = make_rng(seed, "process")

    covered = np.zeros(n * n, dtype=bool)  # symmetric: a*n+b and b*n+a
    per_set = comb(q, 2)
    uncovered = comb(n, 2)
    accepted: list[tuple[int, ...]] = []
    rejections: list[int] = []
    streak = 0
    batch = 16

    while True:
        if target_e is not None and len(accepted) >= target_e:
            reason = "target_reached"
            break
        if uncovered < per_set:
            reason = "pair_saturation"
            break
        first, chosen = _scan(rng, covered, n, q, batch)
        if streak + first >= reject_limit:
            streak = reject_limit
            reason = "reject_limit"
            break
        streak += first
        if chosen is None:
            batch = min(MAX_BATCH, batch * 2)
            continue
        # draws after the accepted one are discarded; the law of the next draw is unchanged
        for a, b in itertools.combinations(chosen, 2):
            covered[a * n + b] = covered[b * n + a] = True
        uncovered -= per_set
        accepted.append(tuple(chosen))
        rejections.append(streak)
        streak = 0
        # size the next batch to the current acceptance rate
        batch = int(min(MAX_BATCH, max(16, 2 * (rejections[-1] + 1))))

    return ProcessTrace(
        n, q, seed, target_e, reject_limit,
        tuple(accepted), tuple(rejections), streak, reason,
    )


@dataclass(frozen=True)
class ProcessStats:
    e: int
    m: int
    pair_coverage: float
    alpha: int
    alpha_method: str
    alpha_exact: bool
    chi_lower_bound: int
    witness: tuple[int, ...]


EXACT_ALPHA_MAX_N = 40


def process_stats(trace: ProcessTrace, k: int, budget: int = 10**7, seed: int = 0) -> ProcessStats:
    """Edge counts, pair coverage and independence number of the k-graph expansion.

    The independence number is exact for n <= 40 (if the search finishes in
    budget) and a greedy lower bound otherwise.  chi_lower_bound = ceil(n / alpha)
    is only a certified bound when alpha is exact.
    """
    if not 1 <= k <= trace.q:
        raise BadUniformity(f"k={k} must lie in [1, q={trace.q}]")
    graph: KGraph = expand_to_kgraph(trace.to_system(), k)
    if trace.n <= EXACT_ALPHA_MAX_N:
        res = exact_independence_number(graph, budget=budget)
        alpha, witness, exact = res.value, res.certificate, res.exact
        method = "branch_and_bound" if exact else "branch_and_bound_partial"
    else:
        witness = tuple(greedy_independent_set(graph, seed))
        alpha, exact, method = len(witness), False, "greedy"
    coverage = trace.e * comb(trace.q, 2) / comb(trace.n, 2)
    return ProcessStats(
        trace.e, graph.m, coverage, alpha, method, exact,
        math.ceil(trace.n / alpha) if alpha else 0, tuple(witness),
    )
