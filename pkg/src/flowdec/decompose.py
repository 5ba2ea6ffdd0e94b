"""Flow decomposition algorithms and their verification.

``parity_fix_decompose`` is the log-factor approximation: repeatedly
subtract a minimum flow covering the odd edges, emit it as unit paths of
weight 2**i, halve what is left. ``greedy_decompose`` is the classic
widest-path heuristic and ``exact_mfd`` an exhaustive oracle for small
instances.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .errors import EmptyFlow, ParityAssertionFailed
from .graph import FlowNetwork
from .minflow import extract_unit_paths, flow_width, parity_cover_flow


@dataclass(frozen=True)
class WeightedPath:
    edges: tuple
    weight: int
    iteration: Optional[int] = None


@dataclass
class Decomposition:
    paths: List[WeightedPath]
    algorithm: str = ""

    def __len__(self):
        return len(self.paths)

    @property
    def size(self):
        return len(self.paths)

    def weights(self):
        return [p.weight for p in self.paths]

    def merged(self):
        """Combine identical edge sequences by summing their weights."""
        acc = {}
        for p in self.paths:
            acc[p.edges] = acc.get(p.edges, 0) + p.weight
        return Decomposition([WeightedPath(e, w) for e, w in acc.items()], self.algorithm)


@dataclass
class IterationStats:
    index: int
    value: int  # val(f_i)
    flow_width: int  # fwidth of the working flow at the start of the iteration


@dataclass
class DecompositionStats:
    size: int
    lower_bound: int
    log_factor: int
    iterations: List[IterationStats] = field(default_factory=list)


def _require_flow(network):
    if network.value == 0:
        raise EmptyFlow("flow value is zero")


def parity_fix_decompose(network, merge=False):
    _require_flow(network)
    g = network.graph
    f = dict(network.flow)
    paths = []
    iterations = []
    lower = None
    i = 0
    while any(f.values()):
        current = FlowNetwork(g, f)
        fw, _ = flow_width(current)
        if lower is None:
            lower = fw
        h = parity_cover_flow(current)
        h_net = FlowNetwork(g, h)
        value = h_net.value
        if value > fw:
            raise AssertionError(f"iteration {i}: val(f_i)={value} exceeds flow-width {fw}")
        iterations.append(IterationStats(i, value, fw))
        for p in extract_unit_paths(h_net):
            paths.append(WeightedPath(tuple(p), 1 << i, i))
        nxt = {}
        for eid, v in f.items():
            d = v - h[eid]
            if d & 1:
                raise ParityAssertionFailed(f"odd remainder on edge {eid}")
            nxt[eid] = d >> 1
        f = nxt
        i += 1
    dec = Decomposition(paths, "parityfix")
    if merge:
        dec = dec.merged()
    stats = DecompositionStats(dec.size, lower, network.log_factor, iterations)
    return dec, stats


def widest_path(graph, flow):
    """Maximum-bottleneck s-t path over positive edges; ties go to the smaller edge id."""
    best = {graph.source: None}  # None = unbounded
    via = {}
    for v in graph.topological_order:
        if v == graph.source:
            continue
        top, arg = 0, None
        for eid in graph.in_edges(v):
            fe = flow[eid]
            u = graph.edge[eid].tail
            if fe <= 0 or u not in best:
                continue
            b = fe if best[u] is None else min(best[u], fe)
            if b > top:
                top, arg = b, eid
        if arg is not None:
            best[v] = top
            via[v] = arg
    if graph.sink not in best:
        return None, 0
    path = []
    v = graph.sink
    while v != graph.source:
        eid = via[v]
        path.append(eid)
        v = graph.edge[eid].tail
    path.reverse()
    return path, best[graph.sink]


def greedy_decompose(network):
    _require_flow(network)
    g = network.graph
    f = dict(network.flow)
    paths = []
    while any(f.values()):
        path, w = widest_path(g, f)
        for eid in path:
            f[eid] -= w
        paths.append(WeightedPath(tuple(path), w))
    return Decomposition(paths, "greedy")


@dataclass
class Verdict:
    ok: bool
    kind: str = ""
    detail: object = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"{self.kind}({self.detail})"


def verify(network, decomposition):
    """Check that the weighted paths sum exactly to the flow; report the first violation."""
    g = network.graph
    paths = decomposition.paths if isinstance(decomposition, Decomposition) else decomposition
    total = {e: 0 for e in g.edge_ids}
    for idx, p in enumerate(paths):
        if p.weight < 1:
            return Verdict(False, "NonPositiveWeight", idx)
        if not p.edges:
            return Verdict(False, "EmptyPath", idx)
        for eid in p.edges:
            if eid not in g.edge:
                return Verdict(False, "UnknownEdge", eid)
        if g.edge[p.edges[0]].tail != g.source:
            return Verdict(False, "BadStart", idx)
        for a, b in zip(p.edges, p.edges[1:]):
            if g.edge[a].head != g.edge[b].tail:
                return Verdict(False, "BrokenWalk", idx)
        if g.edge[p.edges[-1]].head != g.sink:
            return Verdict(False, "BadEnd", idx)
        for eid in p.edges:
            total[eid] += p.weight
    for eid in g.edge_ids:
        if total[eid] < network.flow[eid]:
            return Verdict(False, "UnderSum", eid)
        if total[eid] > network.flow[eid]:
            return Verdict(False, "OverSum", eid)
    return Verdict(True)


def mfd_lower_bound(network):
    _require_flow(network)
    return flow_width(network)[0]
