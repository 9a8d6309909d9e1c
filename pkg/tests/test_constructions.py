import itertools
import math

import pytest

from cliquesys.constructions import (
    build_affine_plane,
    build_enlarged_plane_system,
    build_polynomial_system,
    check_regime,
    chernoff_bound,
    column_of,
    pad_cliques,
    prime_for_clique_count,
    random_restriction,
    restricted_kgraph,
)
from cliquesys.errors import (
    BadDegreeBound,
    BadParams,
    NoValidPrime,
    NotPrime,
    RangeError,
    TraceTooLarge,
)
from cliquesys.hypergraph import expand_to_kgraph, validate_ell_system
from cliquesys.solvers import exact_chromatic_number, exact_independence_number


@pytest.mark.parametrize("Q,k,e", [(3, 2, 12), (5, 2, 30), (5, 3, 130), (7, 3, 350)])
def test_polynomial_system_counts(Q, k, e):
    s = build_polynomial_system(Q, k)
    assert (s.n, s.q, s.ell, s.e) == (Q * Q, Q, k - 1, e)
    res = validate_ell_system(s)
    assert res.ok and res.max_pairwise_intersection == k - 1


@pytest.mark.parametrize("Q,k", [(4, 2), (9, 2), (5, 1), (5, 5), (3, 3)])
def test_polynomial_system_rejects_bad_params(Q, k):
    with pytest.raises((NotPrime, BadDegreeBound)):
        build_polynomial_system(Q, k)


@pytest.mark.parametrize("Q,k", [(3, 2), (5, 2), (5, 3), (7, 2), (7, 3)])
def test_columns_and_polynomial_cliques(Q, k):
    s = build_polynomial_system(Q, k)
    columns = [c for c in s.cliques if len({column_of(v, Q) for v in c}) == 1]
    polys = [c for c in s.cliques if len({column_of(v, Q) for v in c}) == Q]
    assert len(columns) == Q and len(polys) == Q**k
    assert set().union(*map(set, columns)) == set(range(Q * Q))
    for a, b in itertools.combinations(columns, 2):
        assert not set(a) & set(b)
    for p in polys:
        for c in columns:
            assert len(set(p) & set(c)) == 1


def test_small_polynomial_system_independence_example():
    s = build_polynomial_system(3, 2)
    g = expand_to_kgraph(s, 2)
    # every pair of points lies on a line, so the 2-graph is complete
    assert g.m == 36
    assert exact_independence_number(g).value == 1
    assert exact_chromatic_number(g).value == 9


def test_prime_for_clique_count():
    assert prime_for_clique_count(400, 2, 3) == 19
    assert prime_for_clique_count(10, 3, 3) is None
    Q = prime_for_clique_count(10**6, 3, 5)
    assert Q is not None and 10**6 / 2 < Q**3 + Q <= 10**6


def test_check_regime_warns_outside():
    with pytest.warns(UserWarning):
        assert check_regime(130, 5, 3) is False
    assert check_regime(10**9, 200, 2) is True


def test_chernoff_examples():
    q = 5
    # delta = 9/10 on the lower tail gives exponent 81 mu / 200
    assert chernoff_bound(q, 0.9, "lower") == pytest.approx(math.exp(-0.81 * q / 2))
    assert chernoff_bound(100, 1.0, "upper") == pytest.approx(math.exp(-100 / 3))
    assert chernoff_bound(100, 1.0, "lower") == pytest.approx(math.exp(-50))
    assert chernoff_bound(7, 1e-12, "upper") == pytest.approx(1.0)
    assert chernoff_bound(0, 2.0) == 1.0


@pytest.mark.parametrize("mu,delta,tail", [(-1, 1, "upper"), (1, 0, "upper"), (1, -1, "lower"), (1, 1, "both")])
def test_chernoff_rejects(mu, delta, tail):
    with pytest.raises(BadParams):
        chernoff_bound(mu, delta, tail)


def test_restriction_with_prob_one_keeps_everything():
    s = build_polynomial_system(5, 2)
    r = random_restriction(s, q_target=5, prob=1.0, seed=3)
    assert r.W == tuple(range(25)) and r.traces == s.cliques
    assert not r.failed and r.resample_count == 0 and r.max_trace == 5


def test_restriction_is_deterministic_and_bounded():
    s = build_polynomial_system(7, 3)
    a = random_restriction(s, q_target=4, prob=0.4, seed=12)
    b = random_restriction(s, q_target=4, prob=0.4, seed=12)
    assert a == b
    if not a.failed:
        assert a.max_trace <= 4
    for t, c in zip(a.traces, s.cliques):
        assert set(t) == set(c) & set(a.W)


def test_restriction_default_probability_and_failure_flag():
    s = build_polynomial_system(5, 2)
    r = random_restriction(s, q_target=2, seed=0)
    assert r.prob == pytest.approx(2 / 50)
    r = random_restriction(s, q_target=0, prob=1.0, seed=0, max_resamples=3)
    assert r.failed and r.resample_count == 3
    with pytest.raises(TraceTooLarge):
        pad_cliques(r)


@pytest.mark.parametrize("prob", [0, -0.1, 1.5])
def test_restriction_rejects_prob(prob):
    with pytest.raises(BadParams):
        random_restriction(build_polynomial_system(3, 2), 2, prob=prob)


def test_pad_examples():
    s = build_polynomial_system(5, 2)
    r = random_restriction(s, q_target=3, prob=0.3, seed=1, max_resamples=1000)
    assert not r.failed
    padded = pad_cliques(r)
    assert padded.q == 3 and padded.e == s.e
    assert all(len(c) == 3 for c in padded.cliques)
    assert validate_ell_system(padded).ok
    assert padded.n == len(r.W) + sum(3 - len(t) for t in r.traces)
    # kept vertices map to ids below |W|, in order
    pos = {v: i for i, v in enumerate(r.W)}
    mapped = {tuple(sorted(pos[v] for v in t)) for t in r.traces}
    low = {tuple(v for v in c if v < len(r.W)) for c in padded.cliques}
    assert mapped == low


def test_restricted_kgraph_edges_come_from_traces():
    s = build_polynomial_system(5, 3)
    r = random_restriction(s, q_target=5, prob=0.6, seed=4)
    g = restricted_kgraph(r, 3)
    vm = g.provenance["vertex_map"]
    expect = {tuple(sorted(c)) for t in r.traces for c in itertools.combinations(t, 3)}
    assert {tuple(vm[v] for v in e) for e in g.edges} == expect


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_affine_plane_invariants(q):
    plane = build_affine_plane(q)
    assert len(plane.lines) == q * q + q
    assert all(len(line) == q for line in plane.lines)
    cover = {}
    for j, line in enumerate(plane.lines):
        for pair in itertools.combinations(line, 2):
            assert pair not in cover
            cover[pair] = j
    assert len(cover) == math.comb(q * q, 2)
    assert all(len(t) == q + 1 for t in plane.lines_through())
    assert plane.line_of_pair() == cover


def test_plane_triples_chromatic_example():
    assert exact_chromatic_number(build_affine_plane(3).collinear_triples()).value == 3


@pytest.mark.parametrize("e,q,p", [(20, 5, 3), (25, 5, 3), (6, 3, 2), (12, 4, 3), (7, 3, 2), (56, 8, 7)])
def test_enlarged_plane_examples(e, q, p):
    s = build_enlarged_plane_system(e, q)
    assert s.e == e and s.q == q and s.provenance["p"] == p
    assert validate_ell_system(s).ok
    pts = set(range(p * p))
    # the plane points pairwise share a clique
    g = expand_to_kgraph(s, 2)
    edges = set(g.edges)
    assert all(pair in edges for pair in itertools.combinations(sorted(pts), 2))


def test_enlarged_plane_chromatic_example():
    s = build_enlarged_plane_system(7, 3)
    # 4 plane points, 6 lines with one private vertex each, one extra triangle
    assert s.n == 4 + 6 + 3
    assert exact_chromatic_number(expand_to_kgraph(s, 2)).value == 4


@pytest.mark.parametrize("e,q,exc", [(5, 5, RangeError), (26, 5, RangeError), (4, 3, NoValidPrime), (5, 4, NoValidPrime)])
def test_enlarged_plane_errors(e, q, exc):
    with pytest.raises(exc):
        build_enlarged_plane_system(e, q)
