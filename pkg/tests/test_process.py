import itertools
import math
from collections import Counter

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

from cliquesys.errors import BadParams, BadUniformity
from cliquesys.hypergraph import expand_to_kgraph, validate_ell_system
from cliquesys.process import max_linear_edges, process_stats, run_greedy_process
from cliquesys.serialize import dumps, to_doc


def milp_alpha(graph):
    """Independence number by integer programming: each edge keeps at most k-1 vertices."""
    if not graph.m:
        return graph.n
    A = np.zeros((graph.m, graph.n))
    for r, e in enumerate(graph.edges):
        A[r, list(e)] = 1
    res = milp(
        c=-np.ones(graph.n),
        constraints=LinearConstraint(A, -np.inf, graph.k - 1),
        integrality=np.ones(graph.n),
        bounds=Bounds(0, 1),
    )
    return round(-res.fun)


def test_n_equals_q_gives_one_clique():
    t = run_greedy_process(5, 5, seed=1)
    assert t.accepted == ((0, 1, 2, 3, 4),)
    assert t.stop_reason == "pair_saturation" and t.rejections == (0,)


def test_small_host_stays_tiny():
    for seed in range(20):
        t = run_greedy_process(20, 10, seed)
        # floor(190 / 45) = 4
        assert t.e <= max_linear_edges(20, 10) == 4
        assert validate_ell_system(t.to_system()).ok


@pytest.mark.parametrize("seed", range(5))
def test_output_is_linear_and_below_pair_bound(seed):
    t = run_greedy_process(100, 5, seed)
    s = t.to_system()
    assert validate_ell_system(s).ok
    assert t.e < 400 and t.e <= max_linear_edges(100, 5)
    assert len(t.rejections) == t.e
    assert t.stop_reason in {"pair_saturation", "reject_limit"}
    if t.stop_reason == "reject_limit":
        assert t.trailing_rejections == t.reject_limit


def test_pair_saturation_is_a_real_certificate():
    t = run_greedy_process(7, 3, seed=0, reject_limit=10**6)
    covered = sum(math.comb(3, 2) for _ in t.accepted)
    if t.stop_reason == "pair_saturation":
        assert math.comb(7, 2) - covered < 3


def test_target_and_reject_limit():
    t = run_greedy_process(50, 4, seed=2, target_e=10)
    assert t.e == 10 and t.stop_reason == "target_reached"
    t = run_greedy_process(50, 4, seed=2, reject_limit=1)
    assert t.stop_reason == "reject_limit"
    assert run_greedy_process(50, 4, seed=2, target_e=0).e == 0


@pytest.mark.parametrize("kwargs", [dict(n=3, q=4), dict(n=5, q=1), dict(n=9, q=3, reject_limit=0), dict(n=9, q=3, target_e=-1)])
def test_bad_params(kwargs):
    with pytest.raises(BadParams):
        run_greedy_process(**kwargs)


def test_byte_identical_reruns():
    a = dumps(to_doc(run_greedy_process(80, 5, seed=77)))
    b = dumps(to_doc(run_greedy_process(80, 5, seed=77)))
    c = dumps(to_doc(run_greedy_process(80, 5, seed=78)))
    assert a == b and a != c


def test_first_draw_is_uniform_over_qsets():
    runs = 100_000
    cells = list(itertools.combinations(range(6), 3))
    counts = Counter(run_greedy_process(6, 3, s, target_e=1).accepted[0] for s in range(runs))
    assert set(counts) == set(cells)
    p = 1 / len(cells)
    sd = math.sqrt(runs * p * (1 - p))
    for cell in cells:
        assert abs(counts[cell] - runs * p) <= 3 * sd + 1


def test_process_stats_small_examples():
    t = run_greedy_process(5, 5, seed=0)
    st = process_stats(t, 2)
    # one 5-clique expanded to pairs: a complete graph
    assert (st.e, st.m, st.alpha, st.alpha_exact) == (1, 10, 1, True)
    assert st.chi_lower_bound == 5 and st.pair_coverage == 1.0
    st = process_stats(t, 3)
    assert st.alpha == 2
    with pytest.raises(BadUniformity):
        process_stats(t, 6)


@pytest.mark.parametrize("seed", range(3))
def test_process_stats_alpha_matches_milp(seed):
    t = run_greedy_process(30, 4, seed)
    for k in (2, 3):
        st = process_stats(t, k)
        g = expand_to_kgraph(t.to_system(), k)
        assert st.alpha_exact and st.alpha == milp_alpha(g)
        assert len(st.witness) == st.alpha
        witness = set(st.witness)
        assert not any(set(e) <= witness for e in g.edges)
        assert st.chi_lower_bound == math.ceil(30 / st.alpha)


def test_process_stats_large_uses_greedy():
    t = run_greedy_process(60, 4, seed=5)
    st = process_stats(t, 2)
    assert st.alpha_method == "greedy" and not st.alpha_exact
    assert 0 < st.alpha <= 60


def test_rejection_counts_are_geometric():
    # after one triple in [7], 35 - 13 = 22 triples share at most one vertex with it
    runs, p = 20_000, 22 / 35
    gaps = np.array([run_greedy_process(7, 3, s, target_e=2).rejections[1] for s in range(runs)])
    mean, var = (1 - p) / p, (1 - p) / p**2
    assert abs(gaps.mean() - mean) <= 4 * math.sqrt(var / runs)
    assert abs((gaps == 0).mean() - p) <= 4 * math.sqrt(p * (1 - p) / runs)
