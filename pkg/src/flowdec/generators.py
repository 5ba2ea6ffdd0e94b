"""Deterministic instance generators.

Reduction instances are emitted as induced flows of explicit path
systems, so conservation holds by construction and every generator that
knows a decomposition returns it as a witness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .decompose import Decomposition, WeightedPath
from .errors import InvalidParameters
from .graph import Edge, FlowNetwork, MultiDag, check_flow, path_flow, relabel, subgraph
from .minflow import width
from .structure import make_chk, make_pc

FAMILIES = ("genset", "threepart", "chk", "pc", "random_paths", "series_parallel", "adversarial")


class _Builder:
    """Accumulates edges with ids in creation order."""

    def __init__(self):
        self.n = 0
        self.pairs = []

    def vertex(self):
        self.n += 1
        return self.n - 1

    def edge(self, a, b):
        self.pairs.append((a, b))
        return len(self.pairs) - 1

    def graph(self):
        return MultiDag.from_edges(self.n, self.pairs)


def _network(graph, paths, weights, algorithm):
    flow = path_flow(graph, paths, weights)
    check_flow(graph, flow)
    witness = Decomposition([WeightedPath(tuple(p), w) for p, w in zip(paths, weights)], algorithm)
    return FlowNetwork(graph, flow), witness


def gen_genset(A):
    """Width-2 chain: gadget i has a top edge with flow a_i and a bottom edge with the rest.

    The s-t flow value is sum(A) + 1. A has a generating set of size k iff
    the flow decomposes into k + 1 paths.
    """
    A = [int(a) for a in A]
    if not A or any(a < 1 for a in A):
        raise InvalidParameters("A must be a non-empty list of positive integers")
    total = sum(A) + 1
    pairs = []
    flow = {}
    for i, a in enumerate(A):
        flow[len(pairs)] = a
        pairs.append((i, i + 1))
        flow[len(pairs)] = total - a
        pairs.append((i, i + 1))
    g = MultiDag.from_edges(len(A) + 1, pairs)
    check_flow(g, flow)
    return FlowNetwork(g, flow)


def genset_witness(network, Z, membership):
    """Decomposition of size |Z| + 1 from a generating set.

    ``membership[i]`` lists the indices j with z_j used in a_i.
    """
    g = network.graph
    n = g.m // 2
    paths = []
    weights = []
    for j, z in enumerate(Z):
        paths.append([2 * i + (0 if j in membership[i] else 1) for i in range(n)])
        weights.append(z)
    rest = network.flow[1] - sum(z for j, z in enumerate(Z) if j not in membership[0])
    paths.append([2 * i + 1 for i in range(n)])
    weights.append(rest)
    return Decomposition([WeightedPath(tuple(p), w) for p, w in zip(paths, weights)], "witness")


def _validate_3partition(a, B):
    if len(a) == 0 or len(a) % 3:
        raise InvalidParameters("need 3q numbers")
    q = len(a) // 3
    if sum(a) != q * B:
        raise InvalidParameters("numbers must sum to q*B")
    for x in a:
        if not (4 * x > B and 2 * x < B):
            raise InvalidParameters(f"{x} is not strictly between B/4 and B/2")
    return q


def _ladder(b, entry, count):
    """Ladder of ``count`` rungs starting at vertex ``entry``.

    Left rail l_1..l_c (l_1 = entry), right rail r_1..r_c, rung l_i -> r_i,
    diagonal r_i -> l_{i+1}. Returns (rails_left, rails_right, rungs,
    diagonals, exit vertex r_c) as edge-id lists plus vertex lists.
    """
    left = [entry] + [None] * (count - 1)
    right = [None] * count
    rung, diag, lrail, rrail = [], [], [], []
    for i in range(count):
        if i > 0:
            left[i] = b.vertex()
            lrail.append(b.edge(left[i - 1], left[i]))
        right[i] = b.vertex()
        rung.append(b.edge(left[i], right[i]))
        if i > 0:
            rrail.append(b.edge(right[i - 1], right[i]))
            diag.append(b.edge(right[i - 1], left[i]))
    return left, right, lrail, rrail, rung, diag


def _ladder_path(lrail, rrail, rung, i):
    """Left rail up to rung i, across it, right rail to the end."""
    return lrail[:i] + [rung[i]] + rrail[i:]


def _zigzag(rung, diag):
    out = [rung[0]]
    for d, r in zip(diag, rung[1:]):
        out += [d, r]
    return out


def gen_3partition(a, B, partition=None):
    """Width-3 instance whose minimum decomposition has 3q + 1 paths iff ``a`` is a YES instance.

    Two ladders in series: the top one has a rung per a_i, the bottom one
    a rung per group. Heavy paths of weight (3q+2)a_i each cross one rung
    per ladder; a single unit path zigzags through every rung and
    diagonal. ``partition`` (list of q index triples) is optional; for
    q = 1 it is implied. Returns (network, witness or None).
    """
    a = [int(x) for x in a]
    B = int(B)
    q = _validate_3partition(a, B)
    if partition is None and q == 1:
        partition = [[0, 1, 2]]
    group_of = None
    if partition is not None:
        flat = sorted(i for grp in partition for i in grp)
        if flat != list(range(3 * q)) or any(sum(a[i] for i in grp) != B for grp in partition) or len(partition) != q:
            raise InvalidParameters("partition is not a valid 3-partition")
        group_of = {i: j for j, grp in enumerate(partition) for i in grp}
    factor = 3 * q + 2
    b = _Builder()
    s = b.vertex()
    tl, tr, tlr, trr, trung, tdiag = _ladder(b, s, 3 * q)
    bl, br, blr, brr, brung, bdiag = _ladder(b, tr[-1], q)
    g = b.graph()
    unit = _zigzag(trung, tdiag) + _zigzag(brung, bdiag)
    # heavy flow is routed per ladder: s -> articulation, articulation -> t
    pieces = [unit]
    weights = [1]
    for i, x in enumerate(a):
        pieces.append(_ladder_path(tlr, trr, trung, i))
        weights.append(factor * x)
    for j in range(q):
        pieces.append(_ladder_path(blr, brr, brung, j))
        weights.append(factor * B)
    flow = path_flow(g, pieces, weights)
    check_flow(g, flow)
    net = FlowNetwork(g, flow)
    w, _ = width(g)
    if w != 3:
        raise AssertionError(f"3-partition ladder has width {w}, expected 3")
    witness = None
    if group_of is not None:
        wp = [WeightedPath(tuple(unit), 1)]
        for i, x in enumerate(a):
            route = _ladder_path(tlr, trr, trung, i) + _ladder_path(blr, brr, brung, group_of[i])
            wp.append(WeightedPath(tuple(route), factor * x))
        witness = Decomposition(wp, "witness")
    return net, witness


def gen_adversarial(k, l):
    """Flow network on which parity fixing is far from optimal.

    ``l + 2`` gadgets hang off s: two big ones and ``l`` small ones, each a
    pair (x, y) with s -> x and y -> t. Every gadget has k parallel x -> y
    edges of flow 2; a big gadget adds 2k edges of flow 3, a small one two
    edges of flow 3k. Connectors y_j -> x_{j+1} (flow 2k) chain the
    gadgets so that k weight-2 paths sweep through all the flow-2 edges.
    Returns the network and a witness decomposition with 5k + 2l paths.
    """
    if k < 3 or k % 2 == 0 or l < 1:
        raise InvalidParameters("need odd k >= 3 and l >= 1")
    b = _Builder()
    s = b.vertex()
    kinds = ["big"] + ["small"] * l + ["big"]
    xs, ys = [], []
    for _ in kinds:
        xs.append(b.vertex())
        ys.append(b.vertex())
    t = b.vertex()
    entry, exit_, chain, extra, bold = [], [], [], [], []
    for j, kind in enumerate(kinds):
        entry.append(b.edge(s, xs[j]))
        chain.append([b.edge(xs[j], ys[j]) for _ in range(k)])
        count = 2 * k if kind == "big" else 2
        extra.append([b.edge(xs[j], ys[j]) for _ in range(count)])
        exit_.append(b.edge(ys[j], t))
    for j in range(len(kinds) - 1):
        bold.append(b.edge(ys[j], xs[j + 1]))
    g = b.graph()
    paths, weights = [], []
    for c in range(k):
        route = [entry[0]]
        for j in range(len(kinds)):
            route.append(chain[j][c])
            route.append(bold[j] if j < len(bold) else exit_[j])
        paths.append(route)
        weights.append(2)
    for j, kind in enumerate(kinds):
        for e in extra[j]:
            paths.append([entry[j], e, exit_[j]])
            weights.append(3 if kind == "big" else 3 * k)
    return _network(g, paths, weights, "witness")


def random_path_flow(graph, k, max_weight, rng):
    """Sum of k random s-t walks with weights in [1, max_weight]."""
    paths, weights = [], []
    for _ in range(k):
        v = graph.source
        route = []
        while v != graph.sink:
            eid = rng.choice(graph.out_edges(v))
            route.append(eid)
            v = graph.edge[eid].head
        paths.append(route)
        weights.append(rng.randint(1, max_weight))
    return _network(graph, paths, weights, "witness")


def random_dag(n, rng, extra=None):
    """Random s-t DAG on 0..n-1 (s = 0, t = n-1); every vertex lies on an s-t path."""
    if n < 2:
        raise InvalidParameters("need n >= 2")
    pairs = []
    for v in range(1, n):
        pairs.append((rng.randrange(0, v), v))
    for v in range(n - 1):
        if not any(a == v for a, _ in pairs):
            pairs.append((v, rng.randrange(v + 1, n)))
    for _ in range(n if extra is None else extra):
        a = rng.randrange(0, n - 1)
        pairs.append((a, rng.randrange(a + 1, n)))
    pairs.sort()
    return MultiDag.from_edges(n, pairs)


def gen_random_paths(n, k, max_weight, seed=0):
    """Flow made of k random weighted paths on a random DAG, restricted to the used edges.

    Returns (network, witness); the witness has k paths, so the minimum
    decomposition has at most k.
    """
    if n < 2 or k < 1 or max_weight < 1:
        raise InvalidParameters("need n >= 2, k >= 1, max_weight >= 1")
    rng = random.Random(seed)
    g = random_dag(n, rng)
    net, witness = random_path_flow(g, k, max_weight, rng)
    used = [e for e in g.edge_ids if net.flow[e] > 0]
    sub = subgraph(g, used)
    compact, _, emap = relabel(FlowNetwork(sub, {e: net.flow[e] for e in used}))
    witness = Decomposition(
        [WeightedPath(tuple(emap[e] for e in p.edges), p.weight) for p in witness.paths], "witness"
    )
    return compact, witness


def gen_series_parallel(depth, seed=0):
    """Random series/parallel composition tree of the given depth, starting from a single edge."""
    if depth < 0:
        raise InvalidParameters("depth must be non-negative")
    rng = random.Random(seed)
    b = _Builder()
    s, t = b.vertex(), b.vertex()

    def build(d, a, z):
        if d == 0:
            b.edge(a, z)
            return
        depths = [d - 1, rng.randrange(0, d)]
        rng.shuffle(depths)
        if rng.random() < 0.5:
            mid = b.vertex()
            build(depths[0], a, mid)
            build(depths[1], mid, z)
        else:
            for dd in depths + ([rng.randrange(0, d)] if rng.random() < 0.3 else []):
                build(dd, a, z)

    build(depth, s, t)
    g = b.graph()
    net, _, _ = relabel(FlowNetwork(g, {e: 0 for e in g.edge_ids}))
    return net.graph


def chk_network(k):
    """CH_k with the minimal flow of value 2k (zero on the middle edge)."""
    g = make_chk(k)
    flow = {}
    for e in g.edges:
        pair = (e.tail, e.head)
        flow[e.id] = {(0, 1): 1, (2, 3): 1, (0, 2): k, (1, 3): k, (1, 2): 0}[pair]
    check_flow(g, flow)
    return FlowNetwork(g, flow)


def pc_network(c):
    g = make_pc(c)
    return FlowNetwork(g, {e: 1 for e in g.edge_ids})


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: Tuple[int, ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameters(f"unknown family {self.family!r}")

    @property
    def label(self):
        return " ".join(str(p) for p in self.params)


def build_instance(spec):
    """Materialize an InstanceSpec as (network, witness decomposition or None)."""
    p = list(spec.params)
    fam = spec.family
    try:
        if fam == "genset":
            return gen_genset(p), None
        if fam == "threepart":
            return gen_3partition(p[1:], p[0])
        if fam == "chk":
            (k,) = p
            return chk_network(k), None
        if fam == "pc":
            (c,) = p
            return pc_network(c), None
        if fam == "random_paths":
            n, k, w = p
            return gen_random_paths(n, k, w, spec.seed)
        if fam == "series_parallel":
            depth, k, w = (p + [3, 100])[:3] if len(p) == 1 else p
            g = gen_series_parallel(depth, spec.seed)
            return random_path_flow(g, k, w, random.Random(spec.seed + 1))
        if fam == "adversarial":
            k, l = p
            return gen_adversarial(k, l)
    except (ValueError, IndexError, TypeError) as exc:
        raise InvalidParameters(f"bad parameters for {fam}: {p}") from exc
    raise InvalidParameters(f"unknown family {fam!r}")  # pragma: no cover
