"""Minimum integral flows under per-edge lower/upper bounds.

Width, flow-width and the parity subproblem of the parity-fixing
decomposition are all instances of one routine: start from a feasible
flow and push as much flow as possible back from t to s through the
residual graph. Whatever remains is a minimum-value flow.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import EmptyFlow, Infeasible, ParityAssertionFailed
from .graph import FlowNetwork, MultiDag, check_flow, flow_subgraph, zero_flow

INF = None  # upper bound marker: unbounded


@dataclass(frozen=True)
class BoundedFlowProblem:
    graph: MultiDag
    lower: Mapping = field(hash=False)
    upper: Mapping = field(hash=False)  # value None means unbounded
    witness: Optional[Mapping] = field(default=None, hash=False)

    def __post_init__(self):
        for eid in self.graph.edge_ids:
            lo, hi = self.lower[eid], self.upper[eid]
            if lo < 0:
                raise Infeasible(f"negative lower bound on edge {eid}")
            if hi is not None and lo > hi:
                raise Infeasible(f"lower bound exceeds upper bound on edge {eid}")
        if self.witness is not None:
            check_flow(self.graph, self.witness)
            for eid in self.graph.edge_ids:
                w = self.witness[eid]
                hi = self.upper[eid]
                if w < self.lower[eid] or (hi is not None and w > hi):
                    raise Infeasible(f"witness violates bounds on edge {eid}")


class _Residual:
    """Residual network with paired arcs; capacity None is infinite."""

    def __init__(self):
        self.adj = {}
        self.head = []
        self.cap = []

    def add(self, u, v, cap):
        self.adj.setdefault(u, []).append(len(self.head))
        self.head.append(v)
        self.cap.append(cap)
        self.adj.setdefault(v, []).append(len(self.head))
        self.head.append(u)
        self.cap.append(0)
        return len(self.head) - 2

    def max_flow(self, src, dst):
        """Shortest augmenting paths; arcs are scanned in insertion order."""
        total = 0
        while True:
            parent = {src: None}
            queue = deque([src])
            while queue and dst not in parent:
                u = queue.popleft()
                for a in self.adj.get(u, ()):
                    c = self.cap[a]
                    v = self.head[a]
                    if (c is None or c > 0) and v not in parent:
                        parent[v] = a
                        queue.append(v)
            if dst not in parent:
                return total
            bottleneck = None
            v = dst
            while parent[v] is not None:
                a = parent[v]
                c = self.cap[a]
                if c is not None and (bottleneck is None or c < bottleneck):
                    bottleneck = c
                v = self.head[a ^ 1]
            if bottleneck is None:
                raise Infeasible("unbounded augmenting path")
            v = dst
            while parent[v] is not None:
                a = parent[v]
                if self.cap[a] is not None:
                    self.cap[a] -= bottleneck
                if self.cap[a ^ 1] is not None:
                    self.cap[a ^ 1] += bottleneck
                v = self.head[a ^ 1]
            total += bottleneck


def _feasible_flow(problem):
    """Any flow within bounds, via the circulation-with-demands transformation."""
    g = problem.graph
    res = _Residual()
    arcs = {}
    excess = {v: 0 for v in g.vertices}
    for e in g.edges:
        lo, hi = problem.lower[e.id], problem.upper[e.id]
        arcs[e.id] = res.add(e.tail, e.head, None if hi is None else hi - lo)
        excess[e.head] += lo
        excess[e.tail] -= lo
    res.add(g.sink, g.source, None)
    super_s, super_t = ("S*",), ("T*",)
    need = 0
    for v in g.topological_order:
        if excess[v] > 0:
            res.add(super_s, v, excess[v])
            need += excess[v]
        elif excess[v] < 0:
            res.add(v, super_t, -excess[v])
    if res.max_flow(super_s, super_t) < need:
        raise Infeasible("no flow satisfies the bounds")
    return {eid: problem.lower[eid] + res.cap[a ^ 1] for eid, a in arcs.items()}


def solve_min_flow(problem):
    """Minimum-value integral flow g with lower <= g <= upper."""
    g = problem.graph
    start = dict(problem.witness) if problem.witness is not None else _feasible_flow(problem)
    res = _Residual()
    arcs = {}
    for e in g.edges:
        hi = problem.upper[e.id]
        cur = start[e.id]
        arcs[e.id] = res.add(e.tail, e.head, None if hi is None else hi - cur)
        # the paired reverse arc is the decrease capacity
        res.cap[arcs[e.id] + 1] = cur - problem.lower[e.id]
    res.max_flow(g.sink, g.source)
    return {eid: problem.lower[eid] + res.cap[a + 1] for eid, a in arcs.items()}


def flow_value(graph, flow):
    return sum(flow[e] for e in graph.out_edges(graph.source))


def width(graph):
    """Minimum number of s-t paths covering every edge, with a covering flow attaining it."""
    problem = BoundedFlowProblem(
        graph,
        {e: 1 for e in graph.edge_ids},
        {e: INF for e in graph.edge_ids},
    )
    g = solve_min_flow(problem)
    return flow_value(graph, g), g


def flow_width(network):
    """Fewest s-t paths covering each positive edge while using edge e at most f(e) times.

    The witness is a minimal flow on the whole graph (zero off the support).
    """
    sub = flow_subgraph(network)
    f = sub.flow
    problem = BoundedFlowProblem(sub.graph, {e: 1 for e in f}, dict(f), f)
    g = solve_min_flow(problem)
    witness = zero_flow(network.graph)
    witness.update(g)
    return flow_value(sub.graph, g), witness


def parity_cover_flow(network):
    """Min-value flow 0 <= g <= f that is positive on every odd edge of f.

    The result always leaves f - g even: every residual capacity starts
    even, so every augmentation is even too.
    """
    if network.value == 0:
        raise EmptyFlow("flow value is zero")
    f = network.flow
    problem = BoundedFlowProblem(network.graph, {e: v & 1 for e, v in f.items()}, dict(f), f)
    g = solve_min_flow(problem)
    for eid, v in f.items():
        if (v - g[eid]) & 1:
            raise ParityAssertionFailed(f"f - g is odd on edge {eid}")
    return g


def extract_unit_paths(network):
    """Split an integral flow into val(h) unit-weight s-t paths.

    At every vertex the smallest-id out-edge with remaining flow is taken.
    """
    g = network.graph
    rest = dict(network.flow)
    paths = []
    for _ in range(network.value):
        v = g.source
        path = []
        while v != g.sink:
            for eid in g.out_edges(v):
                if rest[eid] > 0:
                    break
            else:  # pragma: no cover - conservation makes this unreachable
                raise ValueError(f"flow stuck at vertex {v}")
            rest[eid] -= 1
            path.append(eid)
            v = g.edge[eid].head
        paths.append(path)
    return paths
