import itertools
import math

import numpy as np
import pytest
from scipy import stats

from busfactor import (DomainError, GenerationError, GeneratorParams, coverage,
                       generate_power_law_bipartite, generate_random_bipartite)
from busfactor.generator import (balance_degree_sums, configuration_model, connect_components,
                                 gale_ryser, make_rng, sample_power_law,
                                 sample_power_law_degrees)
from busfactor.graph import connected_components, is_connected

from conftest import dyads, make_graph


def degree_seqs(g):
    c = g.compact()
    return [len(ts) for ts in c.p_adj], [len(ps) for ps in c.t_adj]


def realizations(deg_p, deg_t):
    """Brute-force every simple bipartite graph with the given degrees."""
    pairs = [(i, j) for i in range(len(deg_p)) for j in range(len(deg_t))]
    found = set()
    for k in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, k):
            dp = [0] * len(deg_p)
            dt = [0] * len(deg_t)
            for i, j in es:
                dp[i] += 1
                dt[j] += 1
            if dp == list(deg_p) and dt == list(deg_t):
                found.add(frozenset(es))
    return found


def index_edges(g):
    c = g.compact()
    return frozenset((i, j) for i, ts in enumerate(c.p_adj) for j in ts)


# power-law sampling

def test_support_bounds():
    degs = sample_power_law_degrees(0.4, 1, 9, 20000, make_rng(1))
    assert min(degs) >= 1 and max(degs) <= 10


def test_near_uniform_when_lambda_close_to_one():
    degs = np.array(sample_power_law_degrees(0.999, 1, 9, 100_000, make_rng(2)))
    # floor of a continuous draw on [1, 10) lands on 1..9
    counts = np.array([(degs == v).sum() for v in range(1, 10)])
    assert counts.sum() == len(degs)
    assert stats.chisquare(counts).pvalue > 0.01


def test_continuous_cdf_matches_closed_form():
    x = sample_power_law(0.5, 1, 99, 100_000, make_rng(3))
    cdf = lambda v: np.clip((v - 1) / 99, 0, 1) ** 0.5
    assert stats.kstest(x, cdf).statistic < 0.01


def test_integer_cdf_matches_closed_form():
    degs = np.array(sample_power_law_degrees(0.5, 1, 99, 100_000, make_rng(4)))
    # P(floor(X) <= d) = P(X < d + 1) = (d / 99) ** 0.5
    d = np.arange(1, 100)
    emp = np.array([(degs <= v).mean() for v in d])
    assert np.max(np.abs(emp - (d / 99) ** 0.5)) < 0.01


@pytest.mark.parametrize("lam", [0.0, 1.0, -0.2, 1.5])
def test_lambda_domain(lam):
    with pytest.raises(DomainError):
        sample_power_law_degrees(lam, 1, 9, 10, make_rng(0))


# degree balancing

def test_balance_already_equal():
    assert balance_degree_sums([3, 2], [2, 2, 1], make_rng(0)) == ([3, 2], [2, 2, 1])


def test_balance_one_unit():
    outcomes = set()
    for seed in range(40):
        dp, dt = balance_degree_sums([4, 2], [2, 2, 1], make_rng(seed))
        assert sum(dp) == sum(dt) == 5 and dt == [2, 2, 1]
        outcomes.add(tuple(dp))
    # either entry > 1 may lose the unit
    assert outcomes == {(3, 2), (4, 1)}


def test_balance_infeasible():
    with pytest.raises(GenerationError):
        balance_degree_sums([1, 1], [1, 1, 1], make_rng(0))


def test_balance_only_decrements_entries_above_one():
    rng = make_rng(5)
    dp0 = sample_power_law_degrees(0.3, 1, 30, 300, rng)
    dt0 = sample_power_law_degrees(0.7, 1, 30, 200, rng)
    dp, dt = balance_degree_sums(dp0, dt0, rng)
    assert sum(dp) == sum(dt)
    for before, after in ((dp0, dp), (dt0, dt)):
        assert len(before) == len(after)
        for b, a in zip(before, after):
            assert 1 <= a <= b
            assert a == b or b > 1


# configuration model

def test_configuration_model_star():
    g = configuration_model([3], [1, 1, 1], make_rng(0))
    assert index_edges(g) == frozenset({(0, 0), (0, 1), (0, 2)})


def test_configuration_model_four_cycle():
    for seed in range(20):
        g = configuration_model([2, 2], [2, 2], make_rng(seed))
        assert index_edges(g) == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})


def test_configuration_model_small_realization():
    valid = realizations([2, 1], [2, 1])
    for seed in range(20):
        assert index_edges(configuration_model([2, 1], [2, 1], make_rng(seed))) in valid


def test_configuration_model_hits_every_realization():
    valid = realizations([2, 1, 1], [2, 1, 1])
    seen = {index_edges(configuration_model([2, 1, 1], [2, 1, 1], make_rng(s)))
            for s in range(300)}
    assert seen == valid


def test_configuration_model_repairs_duplicates():
    # heavy hubs make raw stub matching produce many double edges
    rng = make_rng(8)
    deg_p = [20, 20, 20] + [1] * 40
    deg_t = [3] * 20 + [1] * 40
    for seed in range(10):
        g = configuration_model(deg_p, deg_t, make_rng(seed))
        assert degree_seqs(g) == (deg_p, deg_t)


def test_configuration_model_infeasible():
    assert not gale_ryser([2], [2])
    with pytest.raises(GenerationError):
        configuration_model([2], [2], make_rng(0))
    with pytest.raises(DomainError):
        configuration_model([3], [1, 1], make_rng(0))


def test_gale_ryser_against_enumeration():
    rng = np.random.default_rng(0)
    for _ in range(60):
        dp = rng.integers(1, 4, size=rng.integers(1, 4)).tolist()
        dt = rng.integers(1, 4, size=rng.integers(1, 4)).tolist()
        if sum(dp) != sum(dt):
            continue
        assert gale_ryser(dp, dt) == bool(realizations(dp, dt))


# rewiring

def test_connect_already_connected_is_identity(g_star):
    assert connect_components(g_star, make_rng(0)) is g_star


def test_connect_two_dyads_is_impossible():
    # all degrees 1: no connected graph on four nodes has this degree sequence
    with pytest.raises(GenerationError):
        connect_components(dyads(2), make_rng(0))


def test_connect_cycle_and_dyad():
    g = make_graph([("p1", "t1"), ("p1", "t2"), ("p2", "t1"), ("p2", "t2"), ("p3", "t3")])
    for seed in range(10):
        h = connect_components(g, make_rng(seed))
        assert is_connected(h)
        assert degree_seqs(h) == degree_seqs(g)
        # exactly one swap: two edges differ
        assert len(h.edges - g.edges) == 2


def test_connect_cycle_and_dyads():
    # hexagon plus a chord leaves two independent cycles, one per merge
    edges = [("p1", "t1"), ("p1", "t2"), ("p2", "t2"), ("p2", "t3"), ("p3", "t3"), ("p3", "t1"),
             ("p1", "t3")]
    g = make_graph(edges + [("p4", "t4"), ("p5", "t5")])
    for seed in range(10):
        h = connect_components(g, make_rng(seed))
        assert is_connected(h)
        assert degree_seqs(h) == degree_seqs(g)
        assert len(connected_components(h)) == 1


def test_connect_fails_without_enough_cycles():
    # one cycle cannot absorb two extra components
    edges = [("p1", "t1"), ("p1", "t2"), ("p2", "t2"), ("p2", "t1")]
    g = make_graph(edges + [("p4", "t4"), ("p5", "t5")])
    with pytest.raises(GenerationError):
        connect_components(g, make_rng(0))


def test_connect_preserves_degrees_on_random_inputs():
    for seed in range(30):
        rng = make_rng(seed)
        dp = sample_power_law_degrees(0.4, 1, 6, 60, rng)
        dt = sample_power_law_degrees(0.4, 1, 6, 50, rng)
        dp, dt = balance_degree_sums(dp, dt, rng)
        g = configuration_model(dp, dt, rng)
        try:
            h = connect_components(g, rng)
        except GenerationError:
            continue
        assert is_connected(h)
        assert degree_seqs(h) == degree_seqs(g)


# full pipeline

def test_fig2_parameters():
    g = generate_power_law_bipartite(GeneratorParams(1000, 1000, 0.5, 0.5, 10, 10, seed=7))
    dp, dt = degree_seqs(g)
    assert is_connected(g)
    assert max(dp) <= 10 and max(dt) <= 10 and min(dp) >= 1 and min(dt) >= 1


def test_seed_determinism():
    params = GeneratorParams(300, 250, 0.35, 0.6, 40, 30, seed=11)
    assert generate_power_law_bipartite(params).edges == generate_power_law_bipartite(params).edges
    other = GeneratorParams(300, 250, 0.35, 0.6, 40, 30, seed=12)
    assert generate_power_law_bipartite(params).edges != generate_power_law_bipartite(other).edges


def test_tiny_params_cannot_connect():
    # with k = 2 every sampled degree floors to 1
    with pytest.raises(GenerationError):
        generate_power_law_bipartite(GeneratorParams(2, 2, 0.5, 0.5, 2, 2, seed=1))


@pytest.mark.parametrize("kwargs", [
    dict(n_people=100, n_tasks=100, lambda_p=0.5, lambda_t=0.5, k_p=101, k_t=10),
    dict(n_people=100, n_tasks=100, lambda_p=1.0, lambda_t=0.5, k_p=10, k_t=10),
    dict(n_people=100, n_tasks=100, lambda_p=0.5, lambda_t=0.5, k_p=1, k_t=10),
    dict(n_people=0, n_tasks=100, lambda_p=0.5, lambda_t=0.5, k_p=10, k_t=10),
])
def test_params_validation(kwargs):
    with pytest.raises(DomainError):
        GeneratorParams(**kwargs).validate()


# random bipartite graphs

def test_random_complete():
    g = generate_random_bipartite(5, 1.0, make_rng(0))
    assert g.n_edges == 25


def test_random_expected_edge_count():
    n = 1000
    p = math.log(5 * n) / n
    for seed in range(10):
        g = generate_random_bipartite(n, p, make_rng(seed))
        assert abs(g.n_edges - n * n * p) <= 0.05 * n * n * p


def test_random_nearly_empty():
    g = generate_random_bipartite(10, 1e-9, make_rng(0))
    assert g.n_edges == 0 and coverage(g) == 0 and g.n_people == g.n_tasks == 10


def test_random_rows_are_simple_and_uniform():
    counts = np.zeros(50)
    for seed in range(200):
        c = generate_random_bipartite(50, 0.1, make_rng(seed)).compact()
        for ts in c.p_adj:
            assert len(ts) == len(set(ts))
            counts[ts] += 1
    assert stats.chisquare(counts).pvalue > 0.001


def test_random_domain():
    with pytest.raises(DomainError):
        generate_random_bipartite(10, 0.0, make_rng(0))
    with pytest.raises(DomainError):
        generate_random_bipartite(0, 0.5, make_rng(0))
