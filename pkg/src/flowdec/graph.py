"""Single-source/single-sink DAG multigraphs carrying integer flows.

Vertices and edges are identified by integers. Edge ids are assigned once
(by insertion order when built from a list) and never reassigned, so
derived graphs (flow-subgraphs, contractions, minors) keep pointing at the
same ids as their parent.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    ConservationViolated,
    CycleDetected,
    DanglingVertex,
    EmptyFlow,
    InvalidVertex,
    MultipleSinks,
    MultipleSources,
    NegativeFlow,
    UnknownEdge,
)

Flow = dict  # edge id -> non-negative int


class Edge(NamedTuple):
    id: int
    tail: int
    head: int


@dataclass(frozen=True, eq=True)
class MultiDag:
    vertices: tuple
    edges: tuple
    source: int
    sink: int

    @classmethod
    def from_edges(cls, n, pairs, source=None, sink=None):
        """Build a graph on vertices 0..n-1; edge i is ``pairs[i]``."""
        edges = [Edge(i, int(a), int(b)) for i, (a, b) in enumerate(pairs)]
        return cls.build(range(n), edges, source, sink)

    @classmethod
    def build(cls, vertices, edges, source=None, sink=None):
        """Validate and construct. ``edges`` holds Edge records (or id, tail, head triples)."""
        vertices = tuple(sorted(set(vertices)))
        edges = tuple(sorted((Edge(*e) for e in edges), key=lambda e: e.id))
        vset = set(vertices)
        seen = set()
        for e in edges:
            if e.tail not in vset or e.head not in vset:
                raise InvalidVertex(f"edge {e.id} references unknown vertex")
            if e.id in seen:
                raise UnknownEdge(f"duplicate edge id {e.id}")
            seen.add(e.id)
        indeg = {v: 0 for v in vertices}
        outdeg = {v: 0 for v in vertices}
        for e in edges:
            outdeg[e.tail] += 1
            indeg[e.head] += 1
        sources = [v for v in vertices if indeg[v] == 0]
        sinks = [v for v in vertices if outdeg[v] == 0]
        if len(sources) != 1:
            raise MultipleSources(f"expected one in-degree-0 vertex, found {sources}")
        if len(sinks) != 1:
            raise MultipleSinks(f"expected one out-degree-0 vertex, found {sinks}")
        if source is not None and source != sources[0]:
            raise MultipleSources(f"declared source {source} is not the unique source {sources[0]}")
        if sink is not None and sink != sinks[0]:
            raise MultipleSinks(f"declared sink {sink} is not the unique sink {sinks[0]}")
        g = cls(vertices, edges, sources[0], sinks[0])
        g.topological_order  # raises on cycles
        if g.source == g.sink:
            raise MultipleSinks("graph has no edges")
        for v in vertices:
            if v not in g._from_source or v not in g._to_sink:
                raise DanglingVertex(v)
        return g

    @cached_property
    def edge(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e.id)
        return out

    @cached_property
    def _in(self):
        inn = {v: [] for v in self.vertices}
        for e in self.edges:
            inn[e.head].append(e.id)
        return inn

    def out_edges(self, v):
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def out_degree(self, v):
        return len(self._out[v])

    def in_degree(self, v):
        return len(self._in[v])

    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return len(self.edges)

    @property
    def edge_ids(self):
        return [e.id for e in self.edges]

    @cached_property
    def topological_order(self):
        indeg = {v: len(self._in[v]) for v in self.vertices}
        heap = [v for v in self.vertices if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for eid in self._out[v]:
                w = self.edge[eid].head
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != len(self.vertices):
            raise CycleDetected("graph contains a directed cycle")
        return tuple(order)

    @cached_property
    def position(self):
        return {v: i for i, v in enumerate(self.topological_order)}

    @cached_property
    def _from_source(self):
        return _search(self, self.source, forward=True)

    @cached_property
    def _to_sink(self):
        return _search(self, self.sink, forward=False)


def _search(graph, start, forward=True, avoiding=None, allowed_edges=None):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for eid in graph.out_edges(v) if forward else graph.in_edges(v):
            if allowed_edges is not None and eid not in allowed_edges:
                continue
            e = graph.edge[eid]
            w = e.head if forward else e.tail
            if w == avoiding or w in seen:
                continue
            seen.add(w)
            queue.append(w)
    return seen


@dataclass(frozen=True)
class FlowNetwork:
    graph: MultiDag
    flow: Mapping = field(hash=False)

    @property
    def value(self):
        return sum(self.flow[e] for e in self.graph.out_edges(self.graph.source))

    @property
    def norm(self):
        """Largest edge flow, written ||f|| in the literature."""
        return max(self.flow.values(), default=0)

    @property
    def log_factor(self):
        """floor(log2 ||f||) + 1, the iteration bound of parity fixing."""
        return self.norm.bit_length()

    def with_flow(self, flow):
        return FlowNetwork(self.graph, flow)


def check_flow(graph, flow):
    """Raise if ``flow`` is not a non-negative conserving flow on ``graph``."""
    ids = set(graph.edge_ids)
    for eid in flow:
        if eid not in ids:
            raise UnknownEdge(f"flow given for unknown edge {eid}")
    for eid in graph.edge_ids:
        if eid not in flow:
            raise UnknownEdge(f"no flow value for edge {eid}")
        if flow[eid] < 0:
            raise NegativeFlow(eid)
    for v in graph.topological_order:
        if v in (graph.source, graph.sink):
            continue
        inflow = sum(flow[e] for e in graph.in_edges(v))
        outflow = sum(flow[e] for e in graph.out_edges(v))
        if inflow != outflow:
            raise ConservationViolated(v, inflow, outflow)


def validate(graph, flow):
    """Check ``flow`` against ``graph`` and return the pair as a FlowNetwork.

    ``graph`` may be a MultiDag or ``(n, [(tail, head), ...])``; ``flow`` a
    mapping from edge id or a sequence indexed by edge id.
    """
    if not isinstance(graph, MultiDag):
        n, pairs = graph
        graph = MultiDag.from_edges(n, pairs)
    if not isinstance(flow, Mapping):
        flow = dict(enumerate(flow))
    flow = {int(k): int(v) for k, v in flow.items()}
    check_flow(graph, flow)
    return FlowNetwork(graph, flow)


def topological_order(graph):
    """Vertices in topological order, ties broken by smallest vertex id."""
    return list(graph.topological_order)


def reachable(graph, source, target, avoiding=None):
    """True iff a directed path leads from ``source`` to ``target`` without visiting ``avoiding``."""
    vset = set(graph.vertices)
    for v in (source, target):
        if v not in vset:
            raise InvalidVertex(v)
    if avoiding is not None and avoiding not in vset:
        raise InvalidVertex(avoiding)
    if avoiding in (source, target):
        raise InvalidVertex("avoided vertex must differ from both endpoints")
    return target in _search(graph, source, avoiding=avoiding)


def capped_path_counts(graph, cap=2):
    """Numbers of s-v and v-t paths, saturated at ``cap``."""
    d_s = {v: 0 for v in graph.vertices}
    d_t = dict(d_s)
    d_s[graph.source] = 1
    order = graph.topological_order
    for v in order:
        for eid in graph.in_edges(v):
            d_s[v] = min(cap, d_s[v] + d_s[graph.edge[eid].tail])
    d_t[graph.sink] = 1
    for v in reversed(order):
        for eid in graph.out_edges(v):
            d_t[v] = min(cap, d_t[v] + d_t[graph.edge[eid].head])
    return d_s, d_t


def count_paths(graph):
    """Exact number of s-t paths (no cap)."""
    d = {v: 0 for v in graph.vertices}
    d[graph.source] = 1
    for v in graph.topological_order:
        for eid in graph.in_edges(v):
            d[v] += d[graph.edge[eid].tail]
    return d[graph.sink]


def all_paths(graph, allowed_edges=None):
    """Every s-t path as a tuple of edge ids, in lexicographic edge-id order."""
    out = []

    def walk(v, prefix):
        if v == graph.sink:
            out.append(tuple(prefix))
            return
        for eid in graph.out_edges(v):
            if allowed_edges is not None and eid not in allowed_edges:
                continue
            prefix.append(eid)
            walk(graph.edge[eid].head, prefix)
            prefix.pop()

    walk(graph.source, [])
    return out


def subgraph(graph, edge_ids):
    """The s-t DAG spanned by ``edge_ids`` (vertices that lose all edges are dropped)."""
    keep = [graph.edge[e] for e in sorted(edge_ids)]
    verts = {graph.source, graph.sink}
    for e in keep:
        verts.add(e.tail)
        verts.add(e.head)
    return MultiDag.build(verts, keep)


def flow_subgraph(network):
    """Restrict to the edges carrying positive flow; edge ids are preserved."""
    if network.value == 0:
        raise EmptyFlow("flow value is zero")
    keep = [e for e in network.graph.edge_ids if network.flow[e] > 0]
    if len(keep) == network.graph.m:
        return network
    g = subgraph(network.graph, keep)
    return FlowNetwork(g, {e: network.flow[e] for e in keep})


def yv_contract(network):
    """Contract every edge whose head has in-degree 1 or whose tail has out-degree 1.

    Returns the contracted network (vertices keep their ids, edges are
    renumbered from 0) and a map from each new edge id to the original
    edge ids it stands for, in path order. A path in the contracted graph
    expands to a path in the original by concatenating these sequences.
    """
    g = network.graph
    s, t = g.source, g.sink
    tail = {e.id: e.tail for e in g.edges}
    head = {e.id: e.head for e in g.edges}
    chain = {e.id: [e.id] for e in g.edges}
    value = {e.id: network.flow[e.id] for e in g.edges}
    out = {v: set(g.out_edges(v)) for v in g.vertices}
    inn = {v: set(g.in_edges(v)) for v in g.vertices}

    def pick():
        for eid in sorted(tail):
            a, b = tail[eid], head[eid]
            if a == s and b == t:
                continue
            if len(inn[b]) == 1 or len(out[a]) == 1:
                return eid
        return None

    while (c := pick()) is not None:
        a, b = tail.pop(c), head.pop(c)
        c_chain = chain.pop(c)
        del value[c]
        out[a].discard(c)
        inn[b].discard(c)
        if b == t:
            prepend = False
        elif a == s:
            prepend = True
        else:
            prepend = len(inn[b]) == 0
        if prepend:
            # b disappears into a; every path leaving b came through c
            for eid in out.pop(b):
                chain[eid] = c_chain + chain[eid]
                tail[eid] = a
                out[a].add(eid)
            del inn[b]
        else:
            # a disappears into b; every path entering a leaves through c
            for eid in inn.pop(a):
                chain[eid] = chain[eid] + c_chain
                head[eid] = b
                inn[b].add(eid)
            del out[a]
    order = sorted(chain, key=lambda e: chain[e][0])
    mapping = {}
    edges = []
    flow = {}
    for new_id, old in enumerate(order):
        mapping[new_id] = tuple(chain[old])
        edges.append(Edge(new_id, tail[old], head[old]))
        flow[new_id] = value[old]
    return FlowNetwork(MultiDag.build(out.keys(), edges), flow), mapping


def relabel(network):
    """Renumber vertices to 0..n-1 (topological order) and edges to 0..m-1 (id order).

    Returns the new network plus the vertex and edge maps (old -> new).
    """
    g = network.graph
    vmap = {v: i for i, v in enumerate(g.topological_order)}
    emap = {e.id: i for i, e in enumerate(g.edges)}
    edges = [Edge(emap[e.id], vmap[e.tail], vmap[e.head]) for e in g.edges]
    graph = MultiDag.build(range(g.n), edges)
    flow = {emap[e]: v for e, v in network.flow.items()}
    return FlowNetwork(graph, flow), vmap, emap


def zero_flow(graph):
    return {e: 0 for e in graph.edge_ids}


def path_flow(graph, paths, weights=None):
    """Induced flow of weighted paths (each path a sequence of edge ids)."""
    flow = zero_flow(graph)
    for i, p in enumerate(paths):
        w = 1 if weights is None else weights[i]
        for eid in p:
            flow[eid] += w
    return flow


def path_vertices(graph, path):
    if not path:
        return []
    walk = [graph.edge[path[0]].tail]
    for eid in path:
        walk.append(graph.edge[eid].head)
    return walk
