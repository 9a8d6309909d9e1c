"""End-to-end checks of every exact claim the package can verify at desk scale.

Each check returns a :class:`CheckResult`; a check passes when its
mathematical condition holds and it finishes inside its time limit.  The
``medium`` scale runs the full parameter sets; ``small`` trims seed counts
and the largest instances for a quick smoke run.

Fault injection (``faults``) deliberately corrupts one measured quantity so
the reporting path can be tested:

* ``caps_count`` adds one to the enumerated number of 3-caps in AG(2,3).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from .caps import (
    brute_force_cap_counts,
    cap_bound_exact,
    enumerate_caps,
    greedy_cap_extension_trace,
    random_mixing_samples,
    second_singular_value,
)
from .constructions import (
    build_affine_plane,
    build_enlarged_plane_system,
    build_polynomial_system,
    random_restriction,
    restricted_kgraph,
)
from .hypergraph import CliqueSystem, cherry_count, expand_to_kgraph, find_cherries, validate_ell_system
from .process import max_linear_edges, run_greedy_process
from .solvers import (
    exact_chromatic_number,
    exact_independence_number,
    greedy_coloring,
    split_coloring,
    verify_coloring,
)

SCALES = ("small", "medium")
POLY_PARAMS = [(3, 2), (5, 2), (5, 3), (7, 3)]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name:<26} {self.seconds:8.2f}s (limit {self.limit:g}s)  {self.detail}"


def _small(scale: str) -> bool:
    return scale == "small"


def check_poly_counts(scale, faults):
    bad = []
    for Q, k in POLY_PARAMS:
        t0 = time.perf_counter()
        e = build_polynomial_system(Q, k).e
        if e != Q**k + Q or time.perf_counter() - t0 >= 1.0:
            bad.append((Q, k, e))
    return not bad, f"Q^k+Q cliques for {POLY_PARAMS}" + (f"; mismatches {bad}" if bad else "")


def check_poly_validation(scale, faults):
    worst = {}
    for Q, k in POLY_PARAMS:
        res = validate_ell_system(build_polynomial_system(Q, k))
        worst[(Q, k)] = res.max_pairwise_intersection
        if not res.ok or res.max_pairwise_intersection > k - 1:
            return False, f"(Q,k)=({Q},{k}) max intersection {res.max_pairwise_intersection}"
    return True, f"max pairwise intersections {worst}"


def check_alpha(scale, faults):
    k, cap = 3, 5
    n_restrict = 5 if _small(scale) else 20
    found = {}
    for Q in (5, 7):
        system = build_polynomial_system(Q, k)
        res = exact_independence_number(expand_to_kgraph(system, k))
        if not res.exact or res.value > cap:
            return False, f"Q={Q}: alpha={res.value} exact={res.exact}"
        worst = 0
        for seed in range(n_restrict):
            r = random_restriction(system, q_target=Q, prob=0.5, seed=seed)
            sub = exact_independence_number(restricted_kgraph(r, k))
            if not sub.exact or sub.value > cap:
                return False, f"Q={Q} seed={seed}: alpha={sub.value} exact={sub.exact}"
            worst = max(worst, sub.value)
        found[Q] = (res.value, worst)
    return True, f"(alpha of H_Q, worst restricted alpha) per Q: {found}; bound {cap}"


def check_enlarged_plane(scale, faults):
    system = build_enlarged_plane_system(9, 4)
    res = exact_chromatic_number(expand_to_kgraph(system, 2))
    p = system.provenance["p"]
    ok = res.exact and system.e == 9 and p == 2 and res.value >= p * p
    return ok, f"e={system.e}, p={p}, chi={res.value} (exact={res.exact}), need >= {p * p}"


def check_process(scale, faults):
    seeds = 5 if _small(scale) else 50
    summary = {}
    for n, q in ((100, 5), (200, 8)):
        cap = max_linear_edges(n, q)
        es = []
        for seed in range(seeds):
            trace = run_greedy_process(n, q, seed)
            v = validate_ell_system(trace.to_system())
            if not v.ok or trace.e > cap or trace.e * q * q >= n * n:
                return False, f"n={n} q={q} seed={seed}: e={trace.e}, max intersection {v.max_pairwise_intersection}"
            es.append(trace.e)
        summary[(n, q)] = (min(es), max(es), cap)
    return True, f"(min e, max e, pair cap) {summary}"


def check_caps(scale, faults):
    r2 = enumerate_caps(build_affine_plane(2))
    r3 = enumerate_caps(build_affine_plane(3))
    i33 = r3.counts[3] + (1 if "caps_count" in faults else 0)
    plane4 = build_affine_plane(4)
    r4 = enumerate_caps(plane4)
    brute = brute_force_cap_counts(plane4)
    dfs4 = {t: c for t, c in r4.counts.items() if c}
    problems = []
    if r2.total != 16:
        problems.append(f"I_2={r2.total}")
    if i33 != 72:
        problems.append(f"I_3,3={i33}")
    if r3.max_cap_size != 4:
        problems.append(f"max cap AG(2,3)={r3.max_cap_size}")
    if dfs4 != brute:
        problems.append("q=4 DFS differs from brute force")
    detail = f"I_2={r2.total}, I_3,3={i33}, max cap q=3: {r3.max_cap_size}, q=4 counts {dfs4}"
    return not problems, detail + (f"; FAILED: {problems}" if problems else "")


def check_cap_bound(scale, faults):
    qs = (3, 4) if _small(scale) else (3, 4, 5)
    ratios = {}
    for q in qs:
        rep = enumerate_caps(build_affine_plane(q), count_only=True)
        if not rep.exhaustive:
            return False, f"q={q} enumeration incomplete"
        for t in range(3, q + 3):
            bound = cap_bound_exact(q, t)
            if rep.counts.get(t, 0) > bound:
                return False, f"q={q} t={t}: {rep.counts.get(t, 0)} > {bound}"
        ratios[q] = max(float(rep.counts.get(t, 0) / cap_bound_exact(q, t)) for t in range(3, q + 3))
    return True, "max count/bound ratio per q " + ", ".join(f"{q}: {r:.3g}" for q, r in ratios.items())


def check_spectral(scale, faults):
    samples = 100 if _small(scale) else 1000
    errs = {}
    for q in (2, 3, 4, 5, 7):
        s2 = second_singular_value(build_affine_plane(q))
        errs[q] = abs(s2 - math.sqrt(q))
        if errs[q] > 1e-9:
            return False, f"q={q}: second singular value {s2}"
    for q in (3, 5, 7):
        plane = build_affine_plane(q)
        for i, mc in enumerate(random_mixing_samples(plane, samples, seed=q)):
            if not mc.holds:
                return False, f"q={q} sample {i}: mixing fails ({mc})"
    return True, f"max |s2 - sqrt q| = {max(errs.values()):.2e}; {samples} mixing samples per q in (3,5,7)"


def check_cap_traces(scale, faults):
    seeds = 10 if _small(scale) else 100
    sizes = {}
    for q in (5, 7, 9):
        plane = build_affine_plane(q)
        masks = plane.line_masks()
        biggest = 0
        for seed in range(seeds):
            tr = greedy_cap_extension_trace(plane, seed)
            for i, z, x in tr.rows:
                if z != comb(i, 2) or x * comb(i, 2) > q**3:
                    return False, f"q={q} seed={seed} row {(i, z, x)}"
            capmask = sum(1 << v for v in tr.cap)
            if len(tr.cap) > q + 2 or any((capmask & m).bit_count() > 2 for m in masks):
                return False, f"q={q} seed={seed}: invalid final cap {tr.cap}"
            biggest = max(biggest, len(tr.cap))
        sizes[q] = biggest
    return True, f"largest greedy cap per q {sizes}"


def _sunflower(petals: int, q: int) -> CliqueSystem:
    cliques = [[0] + list(range(1 + i * (q - 1), 1 + (i + 1) * (q - 1))) for i in range(petals)]
    return CliqueSystem(1 + petals * (q - 1), q, 1, cliques, {"construction": "sunflower"})


def one_system_corpus(count: int) -> list[tuple[CliqueSystem, int]]:
    """Seeded 1-systems (with k) for the split colorer: process outputs, planes, sunflowers."""
    out = []
    for seed in range(count):
        kind = seed % 4
        if kind == 0:
            out.append((run_greedy_process(40 + seed, 5, seed).to_system(), 3))
        elif kind == 1:
            sun = _sunflower(30 + seed, 4)
            out.append((sun, 3))
        elif kind == 2:
            out.append((build_affine_plane((3, 4, 5, 7)[seed // 4 % 4]).as_system(), 3))
        else:
            out.append((run_greedy_process(60, 6, seed).to_system(), 4))
    return out


def check_coloring(scale, faults):
    count = 8 if _small(scale) else 20
    graphs = [expand_to_kgraph(build_polynomial_system(Q, k), k) for Q, k in POLY_PARAMS]
    graphs += [build_affine_plane(q).collinear_triples() for q in (3, 4, 5)]
    graphs.append(expand_to_kgraph(build_enlarged_plane_system(9, 4), 2))
    n_col = 0
    for gi, g in enumerate(graphs):
        for seed in range(3):
            col = greedy_coloring(g, seed)
            n_col += 1
            if not verify_coloring(g, col).proper:
                return False, f"greedy coloring of corpus graph {gi} seed {seed} not proper"
    nonempty_B = 0
    for idx, (system, k) in enumerate(one_system_corpus(count)):
        col = split_coloring(system, k, seed=idx)  # raises on a violated counting bound
        n_col += 1
        g = expand_to_kgraph(system, k)
        if not verify_coloring(g, col).proper:
            return False, f"split coloring of 1-system {idx} not proper"
        info = col.info
        if info["size_B"] * info["d"] > k * system.e * comb(system.q, k):
            return False, f"1-system {idx}: |B| d exceeds k e C(q,k)"
        nonempty_B += info["size_B"] > 0
    return True, f"{n_col} colorings proper; {count} split runs ({nonempty_B} with B nonempty)"


def check_cherries(scale, faults):
    g5 = build_affine_plane(5).collinear_triples()
    g3 = build_affine_plane(3).collinear_triples()
    c5, c3 = len(find_cherries(g5)), len(find_cherries(g3))
    ok = c5 == 300 == cherry_count(g5) and c3 == 0 == cherry_count(g3)
    return ok, f"AG(2,5): {c5} cherries, AG(2,3): {c3}"


def check_determinism(scale, faults):
    from .cli import representative_commands, run_chain

    chains = representative_commands()
    mismatched = []
    for chain in chains:
        a, b = run_chain(chain), run_chain(chain)
        if a != b or a[0] != 0:
            mismatched.append(" ".join(chain[-1]))
    n = len(chains)
    return not mismatched, f"{n} commands re-run byte-identically" if not mismatched else f"differs: {mismatched}"


CHECKS: list[tuple[int, str, Callable, float]] = [
    (1, "poly_clique_count", check_poly_counts, 4.0),
    (2, "poly_ell_validation", check_poly_validation, 10.0),
    (3, "alpha_certification", check_alpha, 60.0),
    (4, "enlarged_plane_chromatic", check_enlarged_plane, 5.0),
    (5, "greedy_process", check_process, 60.0),
    (6, "cap_census", check_caps, 120.0),
    (7, "cap_bound_formula", check_cap_bound, 300.0),
    (8, "spectral_mixing", check_spectral, 60.0),
    (9, "greedy_cap_traces", check_cap_traces, 30.0),
    (10, "coloring_properness", check_coloring, 60.0),
    (11, "cherries", check_cherries, 5.0),
    (12, "determinism", check_determinism, 30.0),
]


def run_check(number: int, scale: str = "medium", faults: Iterable[str] = ()) -> CheckResult:
    num, name, fn, limit = next(c for c in CHECKS if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn(scale, set(faults))
    except Exception as exc:  # a crash is a failed check, reported rather than raised
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    if elapsed > limit:
        ok, detail = False, detail + f"; exceeded time limit {limit}s"
    return CheckResult(num, name, ok, detail, elapsed, limit)


def run_audit(scale: str = "small", faults: Iterable[str] = ()) -> list[CheckResult]:
    return [run_check(num, scale, faults) for num, *_ in CHECKS]
