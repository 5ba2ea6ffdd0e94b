"""Property-based checks over randomly generated flow networks."""
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from flowdec.decompose import greedy_decompose, parity_fix_decompose, verify
from flowdec.errors import PreconditionViolated
from flowdec.exact import exact_mfd
from flowdec.formats import DecompositionFile, GraphFile
from flowdec.generators import gen_random_paths, gen_series_parallel, random_dag, random_path_flow
from flowdec.graph import FlowNetwork, flow_subgraph, yv_contract
from flowdec.minflow import BoundedFlowProblem, flow_width, solve_min_flow, width
from flowdec.structure import d_minor_step, has_pc_minor, is_width_stable, parallel_width

from oracles import brute_fwidth, st_paths

PROPS = settings(max_examples=60, deadline=None)


@st.composite
def networks(draw, max_n=8, max_k=4, max_w=40):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, max_k))
    w = draw(st.integers(1, max_w))
    seed = draw(st.integers(0, 10 ** 6))
    return gen_random_paths(n, k, w, seed)


@st.composite
def dags(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 10 ** 6))
    return random_dag(n, random.Random(seed))


@PROPS
@given(networks())
def test_all_algorithms_reconstruct(pair):
    net, witness = pair
    assert verify(net, witness)
    for dec in (parity_fix_decompose(net)[0], greedy_decompose(net), exact_mfd(net, budget=5000).decomposition):
        assert verify(net, dec)


@PROPS
@given(networks())
def test_parity_iteration_bound(pair):
    net, _ = pair
    dec, stats = parity_fix_decompose(net)
    assert len(stats.iterations) <= net.norm.bit_length()
    for it in stats.iterations:
        assert it.value <= it.flow_width
    assert dec.size == sum(it.value for it in stats.iterations)


@PROPS
@given(networks(max_n=6, max_k=3, max_w=6))
def test_sandwich(pair):
    net, witness = pair
    sub = flow_subgraph(net)
    fw = flow_width(net)[0]
    assert fw == brute_fwidth(net)
    res = exact_mfd(net)
    assert width(sub.graph)[0] <= fw <= res.decomposition.size <= witness.size


@PROPS
@given(networks(), st.integers(1, 50))
def test_fwidth_shrinks_under_scaling(pair, c):
    net, _ = pair
    bigger = FlowNetwork(net.graph, {e: c * v for e, v in net.flow.items()})
    assert flow_width(bigger)[0] <= flow_width(net)[0]


@PROPS
@given(networks())
def test_flow_subgraph_idempotent(pair):
    net, _ = pair
    once = flow_subgraph(net)
    assert flow_subgraph(once) == once


@PROPS
@given(dags())
def test_topological_order_consistent(g):
    pos = g.position
    assert sorted(pos) == sorted(g.vertices)
    assert all(pos[e.tail] < pos[e.head] for e in g.edges)


@PROPS
@given(networks(max_n=7, max_k=3, max_w=9))
def test_contraction_preserves_mfd(pair):
    net, _ = pair
    contracted, mapping = yv_contract(flow_subgraph(net))
    a = exact_mfd(net)
    b = exact_mfd(contracted)
    assert a.optimal and b.optimal
    assert a.decomposition.size == b.decomposition.size
    # a shared prefix is copied into every chain that continues it
    covered = {e for chain in mapping.values() for e in chain}
    assert covered == set(flow_subgraph(net).graph.edge_ids)


@PROPS
@given(networks())
def test_file_round_trip(pair):
    net, witness = pair
    text = GraphFile(net, ["# random"]).format()
    assert GraphFile.parse(text).network == net
    assert GraphFile.parse(text).format() == text
    dtext = DecompositionFile.from_decomposition(witness, net.graph).format()
    assert DecompositionFile.parse(dtext).format() == dtext


@PROPS
@given(dags())
def test_min_flow_leaves_no_decrementing_path(g):
    lower = {e: 1 for e in g.edge_ids}
    flow = solve_min_flow(BoundedFlowProblem(g, lower, {e: None for e in g.edge_ids}))
    for p in st_paths(g):
        assert any(flow[e] == 1 for e in p)


@PROPS
@given(dags())
def test_width_below_parallel_width(g):
    w = width(g)[0]
    pw = parallel_width(g).value
    assert w <= pw
    assert (w == 2) == (pw == 2)
    for c in range(1, pw + 2):
        assert has_pc_minor(g, c) == (c <= pw)


@PROPS
@given(st.integers(0, 5), st.integers(0, 10 ** 6), st.integers(1, 5))
def test_width_stable_fwidth_equals_support_width(depth, seed, k):
    g = gen_series_parallel(depth, seed)
    assert is_width_stable(g)[0]
    net, _ = random_path_flow(g, k, 30, random.Random(seed))
    assert flow_width(net)[0] == width(flow_subgraph(net).graph)[0]


@PROPS
@given(dags(), st.integers(0, 10 ** 6))
def test_minor_steps_stay_valid(g, seed):
    rng = random.Random(seed)
    for _ in range(6):
        op = rng.choice(["delete", "backward", "forward"])
        eid = rng.choice(list(g.edge_ids))
        try:
            h = d_minor_step(g, op, eid)
        except PreconditionViolated:
            continue
        assert h.m == g.m - 1
        assert h.source == g.source or op == "forward"
        g = h
