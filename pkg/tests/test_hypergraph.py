import itertools
import random
from math import comb

import pytest

from cliquesys.constructions import build_affine_plane, build_polynomial_system
from cliquesys.errors import BadUniformity, MalformedClique
from cliquesys.hypergraph import (
    CliqueSystem,
    KGraph,
    cherry_count,
    degree_report,
    expand_to_kgraph,
    find_cherries,
    random_induced,
    validate_ell_system,
)
from cliquesys.process import run_greedy_process


def brute_max_intersection(system):
    return max(
        (len(set(a) & set(b)) for a, b in itertools.combinations(system.cliques, 2)),
        default=0,
    )


def random_system(rng, n, q, e, ell):
    cliques = {tuple(sorted(rng.sample(range(n), q))) for _ in range(e)}
    return CliqueSystem(n, q, ell, cliques)


def test_validate_examples():
    res = validate_ell_system(CliqueSystem(8, 4, 1, [[0, 1, 2, 3], [4, 5, 6, 7]]))
    assert res == (0, True)
    res = validate_ell_system(build_polynomial_system(5, 3))
    assert res.ok and res.max_pairwise_intersection <= 2
    res = validate_ell_system(CliqueSystem(5, 4, 1, [[0, 1, 2, 3], [0, 1, 2, 4]]))
    assert res == (3, False)


def test_validate_agrees_with_double_loop():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(6, 40)
        q = rng.randint(2, min(n, 7))
        e = rng.randint(1, 200)
        ell = rng.randint(0, q - 1)
        system = random_system(rng, n, q, e, ell)
        worst = brute_max_intersection(system)
        assert validate_ell_system(system) == (worst, worst <= ell)


@pytest.mark.parametrize(
    "bad",
    [
        dict(n=5, q=3, ell=1, cliques=[[0, 1]]),
        dict(n=5, q=3, ell=1, cliques=[[0, 1, 1]]),
        dict(n=5, q=3, ell=1, cliques=[[0, 1, 5]]),
        dict(n=5, q=3, ell=1, cliques=[[0, 1, -1]]),
        dict(n=5, q=3, ell=1, cliques=[[0, 1, 2], [2, 1, 0]]),
    ],
)
def test_malformed_cliques(bad):
    with pytest.raises(MalformedClique):
        CliqueSystem(**bad)


def test_cliques_are_canonicalised():
    s = CliqueSystem(5, 3, 1, [[4, 0, 2]])
    assert s.cliques == ((0, 2, 4),)
    g = KGraph(4, 2, [[1, 0], [0, 1], [3, 2]])
    assert g.edges == ((0, 1), (2, 3))


def test_expand_examples():
    assert expand_to_kgraph(CliqueSystem(4, 4, 3, [[0, 1, 2, 3]]), 3).m == 4
    two = CliqueSystem(7, 4, 2, [[0, 1, 2, 3], [2, 3, 4, 5]])
    assert expand_to_kgraph(two, 3).m == 2 * comb(4, 3)
    with pytest.raises(BadUniformity):
        expand_to_kgraph(two, 5)


@pytest.mark.parametrize("Q,k", [(3, 2), (5, 2), (5, 3), (7, 3), (7, 4)])
def test_expand_counts_for_qk_systems(Q, k):
    system = build_polynomial_system(Q, k)
    assert expand_to_kgraph(system, k).m == system.e * comb(Q, k)


def test_expand_counts_on_linear_systems():
    for seed in range(5):
        system = run_greedy_process(30, 4, seed).to_system()
        for k in (2, 3):
            assert expand_to_kgraph(system, k).m == system.e * comb(4, k)


def test_expand_dedupes_shared_ksets():
    # two 4-cliques sharing 3 vertices share one 3-set
    s = CliqueSystem(5, 4, 3, [[0, 1, 2, 3], [0, 1, 2, 4]])
    assert expand_to_kgraph(s, 3).m == 2 * 4 - 1


def test_degree_report_examples():
    rep = degree_report(KGraph(5, 3, []))
    assert rep.degrees == (0,) * 5 and rep.max_degree == 0 and rep.max_codegree == 0
    k4 = KGraph(4, 3, itertools.combinations(range(4), 3))
    rep = degree_report(k4)
    assert rep.degrees == (3, 3, 3, 3) and rep.max_codegree == 2
    ag = build_affine_plane(5).collinear_triples()
    rep = degree_report(ag)
    assert sum(rep.degrees) == 3 * ag.m
    assert rep.max_codegree == 3


def test_affine_codegree_is_uniform():
    from cliquesys.hypergraph import pair_codegrees

    cod = pair_codegrees(build_affine_plane(5).collinear_triples())
    assert len(cod) == comb(25, 2) and set(cod.values()) == {3}


def test_cherry_examples():
    g = KGraph(6, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    assert find_cherries(g) == [((1, 2), (3, 4, 5))]
    assert find_cherries(build_affine_plane(3).collinear_triples()) == []
    assert len(find_cherries(build_affine_plane(5).collinear_triples())) == 300
    with pytest.raises(BadUniformity):
        find_cherries(KGraph(3, 2, [[0, 1]]))


def test_cherry_count_matches_enumeration_and_brute_force():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(5, 9)
        triples = list(itertools.combinations(range(n), 3))
        edges = rng.sample(triples, rng.randint(0, min(25, len(triples))))
        g = KGraph(n, 3, edges)
        es = set(g.edges)
        brute = 0
        for a, b in itertools.combinations(range(n), 2):
            for trio in itertools.combinations([v for v in range(n) if v not in (a, b)], 3):
                if all(tuple(sorted((a, b, t))) in es for t in trio):
                    brute += 1
        assert len(find_cherries(g)) == cherry_count(g) == brute


def test_random_induced():
    g = build_affine_plane(3).collinear_triples()
    full = random_induced(g, 1.0, 4)
    assert full.edges == g.edges and full.provenance["vertex_map"] == list(range(9))
    empty = random_induced(g, 0.0, 4)
    assert empty.n == 0 and empty.m == 0
    a, b = random_induced(g, 0.5, 9), random_induced(g, 0.5, 9)
    assert a == b and a.provenance == b.provenance
    kept = a.provenance["vertex_map"]
    original = {tuple(kept[v] for v in e) for e in a.edges}
    assert original == {e for e in g.edges if set(e) <= set(kept)}
