from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fluidrank import (
    Custom,
    DiffusionConfig,
    DiffusionState,
    Graph,
    IneligibleNodeError,
    NumericError,
    Uniform,
    _kernels,
    diffuse_once,
    pagerank_oracle,
    run_diffusion,
)
from oracles import dense_pagerank, dense_transition, exact_diffusion, random_edges


def cfg(**kw):
    return DiffusionConfig(**kw)


# -- diffuse_once ------------------------------------------------------------

def test_diffuse_once_integer_part(g2):
    state = DiffusionState(h=np.zeros(2), f=np.array([2.0, 2.0]))
    diffuse_once(state, g2, 0.5, 1.0, 0)
    assert state.h.tolist() == [2.0, 0.0]
    assert state.f.tolist() == [0.0, 3.0]
    assert state.coordinate_uses == 1


def test_diffuse_once_dangling_absorbs(g1):
    state = DiffusionState(h=np.zeros(1), f=np.ones(1))
    diffuse_once(state, g1, 0.85, 1.0, 0)
    assert state.h.tolist() == [1.0] and state.f.tolist() == [0.0]
    assert state.coordinate_uses == 0


def test_diffuse_once_full_fluid(g2):
    state = DiffusionState(h=np.zeros(2), f=np.array([0.25, 0.25]))
    diffuse_once(state, g2, 0.5, 0.0, 0)
    assert state.h.tolist() == [0.25, 0.0]
    assert state.f.tolist() == [0.0, 0.375]


def test_diffuse_once_keeps_fraction(g2):
    state = DiffusionState(h=np.zeros(2), f=np.array([2.75, 0.0]))
    diffuse_once(state, g2, 0.5, 1.0, 0)
    assert state.h[0] == 2.0 and state.f[0] == pytest.approx(0.75)


@pytest.mark.parametrize("f, beta", [(0.99, 1.0), (0.0, 0.0), (0.2, 0.5)])
def test_diffuse_once_ineligible(g2, f, beta):
    state = DiffusionState(h=np.zeros(2), f=np.array([f, 5.0]))
    with pytest.raises(IneligibleNodeError):
        diffuse_once(state, g2, 0.5, beta, 0)


def test_floor_tolerates_rounding_dust(g2):
    state = DiffusionState(h=np.zeros(2), f=np.array([3 * 0.1 / 0.1 - 4e-16, 0.0]))
    diffuse_once(state, g2, 0.5, 1.0, 0)
    assert state.h[0] == 3.0 and state.f[0] == 0.0


# -- run_diffusion: hand-checked cases ---------------------------------------

def test_g2_golden_cyclic(g2):
    r = run_diffusion(g2, cfg(d=0.5, beta=1.0, initial_fluid=Uniform(2.0)))
    assert r.h.tolist() == [3.0, 3.0]
    assert r.f.tolist() == [0.5, 0.5]
    assert r.coordinate_uses == 3
    assert r.cost_iterations == 1.5
    assert r.diffusions == 3


def test_single_dangling_node(g1):
    r = run_diffusion(g1, cfg(d=0.85, beta=1.0, initial_fluid=Uniform(1.0)))
    assert r.h.tolist() == [1.0] and r.f.tolist() == [0.0]
    assert r.coordinate_uses == 0 and r.cost_iterations == 0.0


@pytest.mark.parametrize("schedule", ["cyclic", "greedy", "sync"])
def test_full_fluid_two_node_system(g2, schedule):
    r = run_diffusion(g2, cfg(d=0.5, beta=0.0, initial_fluid=Custom(np.array([0.25, 0.25])),
                              epsilon=1e-6, schedule=schedule))
    assert np.abs(r.h - [0.5, 0.5]).sum() <= 1e-6


def test_empty_graph():
    r = run_diffusion(Graph.from_edges([], n=0), cfg())
    assert r.h.size == 0 and r.coordinate_uses == 0


def test_custom_fluid_length_checked(g2):
    with pytest.raises(ValueError):
        run_diffusion(g2, cfg(initial_fluid=Custom(np.ones(3))))


@pytest.mark.parametrize("kw", [
    {"d": 1.0}, {"d": 0.0}, {"beta": -1.0}, {"epsilon": 0.0}, {"schedule": "random"},
    {"initial_fluid": Uniform(0.0)}, {"initial_fluid": Custom(np.array([-1.0]))},
    {"stop_rule": "loose"},
])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        DiffusionConfig(**kw)


def test_overflow_is_numeric_error(g2):
    big = Custom(np.array([1e308, 1e308]))
    with pytest.raises(NumericError):
        run_diffusion(g2, cfg(d=0.99, beta=0.0, initial_fluid=big, epsilon=1.0, schedule="sync"))
    state = DiffusionState(h=np.zeros(2), f=np.array([np.inf, 0.0]))
    with pytest.raises(NumericError):
        diffuse_once(state, g2, 0.5, 0.0, 0)


def test_trace_samples_each_iteration(g2):
    r = run_diffusion(g2, cfg(d=0.5, beta=1.0, initial_fluid=Uniform(2.0)))
    assert r.trace.samples == [(0.0, 4.0), (1.0, 1.5), (1.5, 1.0)]


def test_resume_from_state(g2):
    config = cfg(d=0.5, beta=0.0, initial_fluid=Custom(np.array([0.25, 0.25])), epsilon=1e-3)
    state = DiffusionState.start([0.25, 0.25])
    first = run_diffusion(g2, config, state=state)
    finer = DiffusionConfig(d=0.5, beta=0.0, initial_fluid=config.initial_fluid, epsilon=1e-9)
    second = run_diffusion(g2, finer, state=state)
    assert second.coordinate_uses > first.coordinate_uses
    assert np.abs(second.h - 0.5).sum() <= 1e-9


def test_naive_stop_rule_stops_earlier(rng):
    edges = random_edges(rng, 30, 0.15)
    g = Graph.from_edges(edges, n=30)
    f0 = Custom(np.full(30, 0.15 / 30))
    bounded = run_diffusion(g, cfg(d=0.85, beta=0.0, initial_fluid=f0, epsilon=1e-4))
    naive = run_diffusion(g, cfg(d=0.85, beta=0.0, initial_fluid=f0, epsilon=1e-4, stop_rule="naive"))
    assert naive.coordinate_uses < bounded.coordinate_uses
    assert naive.f.sum() <= 1e-4
    assert bounded.f.sum() <= 1e-4 * 0.15


# -- exact-arithmetic oracle -------------------------------------------------

small_graphs = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20),
        st.sampled_from(["1/2", "17/20", "9/10"]),
        st.sampled_from([1, 2, 3]),
        st.sampled_from(["cyclic", "greedy", "sync"]),
    )
)


@settings(max_examples=150, deadline=None)
@given(small_graphs)
def test_quantized_run_matches_exact_oracle(case):
    n, edges, d, alpha, schedule = case
    g = Graph.from_edges(edges, n=n)
    h, f, uses, seq = exact_diffusion(edges, n, d, 1, [alpha] * n, schedule)
    r = run_diffusion(g, cfg(d=float(Fraction(d)), beta=1.0, initial_fluid=Uniform(alpha), schedule=schedule))
    assert r.coordinate_uses == uses
    assert r.diffusions == len(seq)
    np.testing.assert_allclose(r.h, [float(x) for x in h], atol=1e-9)
    np.testing.assert_allclose(r.f, [float(x) for x in f], atol=1e-9)


def test_g3_all_schedules_agree_with_oracle(g3):
    for schedule in ("cyclic", "greedy", "sync"):
        r = run_diffusion(g3, cfg(d=0.5, beta=1.0, initial_fluid=Uniform(3.0), schedule=schedule))
        assert r.h.tolist() == [3.0, 3.0, 5.0]
        np.testing.assert_allclose(r.f, [0.0, 0.75, 0.25])


# -- invariants --------------------------------------------------------------

def cyclic_steps(g, d, beta, f0):
    """Step the cyclic schedule through diffuse_once, yielding after each diffusion."""
    state = DiffusionState.start(f0)
    idle, i = 0, 0
    while idle < g.n:
        try:
            diffuse_once(state, g, d, beta, i)
            idle = 0
            yield state
        except IneligibleNodeError:
            idle += 1
        i = (i + 1) % g.n
        if beta == 0 and state.f.sum() <= 1e-10:
            return


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("beta", [1.0, 0.5])
def test_invariants_along_run(seed, beta):
    rng = np.random.default_rng(seed)
    n = 20
    g = Graph.from_edges(random_edges(rng, n, 0.2), n=n)
    d, alpha = 0.85, 2.0
    f0 = np.full(n, alpha)
    total0 = f0.sum()
    prev_h = np.zeros(n)
    count = 0
    for state in cyclic_steps(g, d, beta, f0):
        count += 1
        assert (state.f >= 0).all()
        assert (state.h >= prev_h).all()
        prev_h = state.h.copy()
        lhs = state.f.sum() + (1 - d) * state.h.sum()
        assert lhs <= total0 * (1 + 1e-9)
        q = state.h / beta
        assert np.abs(q - np.round(q)).max() <= 1e-9
    assert count <= total0 / ((1 - d) * beta)
    final = run_diffusion(g, cfg(d=d, beta=beta, initial_fluid=Uniform(alpha)))
    np.testing.assert_allclose(final.h, prev_h, atol=1e-9)
    assert final.diffusions == count


@pytest.mark.parametrize("seed", range(4))
def test_sync_full_fluid_is_jacobi(seed):
    rng = np.random.default_rng(seed)
    n = 4
    edges = random_edges(rng, n, 0.5)
    g = Graph.from_edges(edges, n=n)
    d = 0.7
    p = dense_transition(edges, n, d)
    f0 = rng.random(n) + 0.1
    state = DiffusionState.start(f0)
    expected_h = np.zeros(n)
    power = f0.copy()
    for k in range(1, 6):
        # threshold just under the current residual: exactly one round runs
        _kernels.run_sync(g.indptr, g.indices, d, 0.0, state.h, state.f, 0,
                          power.sum() * 0.999999, g.n_edges)
        expected_h += power
        power = p @ power
        np.testing.assert_allclose(state.h, expected_h, rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(state.f, power, rtol=1e-12, atol=1e-15)


def test_sync_round_cost_is_active_outdegree(rng):
    g = Graph.from_edges(random_edges(rng, 15, 0.3), n=15)
    f0 = Custom(np.full(15, 0.01))
    r = run_diffusion(g, cfg(d=0.85, beta=0.0, initial_fluid=f0, epsilon=1e-3, schedule="sync"))
    rounds = len(r.trace) - 1
    assert r.coordinate_uses == rounds * g.n_edges


# -- PageRank oracle ---------------------------------------------------------

def test_pagerank_two_node(g2):
    x = pagerank_oracle(g2, 0.5, 1e-9)
    assert x.method == "PR"
    assert np.abs(x.scores - 0.5).sum() <= 1e-9


def test_pagerank_single_dangling(g1):
    x = pagerank_oracle(g1, 0.5, 1e-9)
    assert x.scores.tolist() == [0.5]


def test_pagerank_chain(chain):
    x = pagerank_oracle(chain, 0.5, 1e-9)
    assert np.abs(x.scores - [1 / 6, 1 / 4, 7 / 24]).sum() <= 1e-9


def test_pagerank_needs_nodes():
    with pytest.raises(ValueError):
        pagerank_oracle(Graph.from_edges([], n=0), 0.85, 1e-6)


@pytest.mark.parametrize("seed", range(10))
def test_pagerank_matches_dense_solve(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    edges = random_edges(rng, n, 0.1)
    d = float(rng.choice([0.5, 0.85, 0.9]))
    x = pagerank_oracle(Graph.from_edges(edges, n=n), d, 1e-10)
    assert np.abs(x.scores - dense_pagerank(edges, n, d)).sum() <= 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_personalized_limit(seed):
    rng = np.random.default_rng(seed)
    n = 12
    edges = random_edges(rng, n, 0.25)
    v = rng.random(n)
    g = Graph.from_edges(edges, n=n)
    r = run_diffusion(g, cfg(d=0.8, beta=0.0, initial_fluid=Custom(v), epsilon=1e-9))
    assert np.abs(r.h - dense_pagerank(edges, n, 0.8, f0=v)).sum() <= 1e-9


def test_greedy_breaks_rounding_ties_by_smallest_id():
    # exact fluids reach (31/20, 31/20); floats differ in the last bit
    edges = [(0, 1), (1, 0), (1, 1)]
    h, f, uses, seq = exact_diffusion(edges, 2, "9/10", 1, [3, 3], "greedy")
    r = run_diffusion(Graph.from_edges(edges, n=2),
                      cfg(d=0.9, beta=1.0, initial_fluid=Uniform(3), schedule="greedy"))
    assert (r.coordinate_uses, r.diffusions) == (uses, len(seq))
    np.testing.assert_allclose(r.h, [float(x) for x in h], atol=1e-9)
