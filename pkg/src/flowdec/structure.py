"""Structural parameters: width-stability, parallel-width, directed minors."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import BudgetExceeded, InvalidParameters, PreconditionViolated
from .graph import Edge, MultiDag, _search
from .minflow import width

DEFAULT_PW_BUDGET = 1_000_000


def pw_budget_default():
    env = os.environ.get("FLOWDEC_PW_BUDGET")
    return int(env) if env else DEFAULT_PW_BUDGET


def make_chk(k):
    """CH_k: vertices s=0, u=1, v=2, t=3; k parallel (s,u), (s,v), (u,v), (u,t), k parallel (v,t)."""
    if k < 1:
        raise InvalidParameters("k must be positive")
    pairs = [(0, 1)] * k + [(0, 2), (1, 2), (1, 3)] + [(2, 3)] * k
    return MultiDag.from_edges(4, pairs)


def make_pc(c):
    """P_c: c parallel edges from s=0 to t=1."""
    if c < 1:
        raise InvalidParameters("c must be positive")
    return MultiDag.from_edges(2, [(0, 1)] * c)


def is_width_stable(graph):
    """Decide width-stability by looking for a CH_2 directed minor.

    A CH_2 minor exists iff there are internal vertices u != v with
    in-degree(u) >= 2, out-degree(v) >= 2, u reaching v, and two
    vertex-disjoint paths s -> v and u -> t. The disjoint pair is what
    makes the union of these paths a funnel; plain reachability is not
    enough (an s -> v path and a u -> t path through a common cut vertex
    give no minor).

    Returns ``(True, None)`` or ``(False, (u, v))``.
    """
    s, t = graph.source, graph.sink
    order = graph.topological_order
    for u in order:
        if u in (s, t) or graph.in_degree(u) < 2:
            continue
        from_u = _search(graph, u)
        ends = _disjoint_ends(graph, u)
        for v in order:
            if v in (s, t, u) or graph.out_degree(v) < 2 or v not in from_u:
                continue
            if v in ends:
                return False, (u, v)
    return True, None


def _disjoint_ends(graph, u):
    """Vertices v admitting vertex-disjoint paths s -> v and u -> t.

    Two-pebble game on the DAG: pebble x walks from s, pebble y from u,
    and only the topologically lower pebble may move, which keeps the two
    walks disjoint. v works iff a state (v, y) with y above v is reachable
    (y can then always finish at t above v).
    """
    pos = graph.position
    heads = {v: [graph.edge[e].head for e in graph.out_edges(v)] for v in graph.vertices}
    start = (graph.source, u)
    seen = {start}
    stack = [start]
    ends = set()
    while stack:
        x, y = stack.pop()
        if pos[x] < pos[y]:
            ends.add(x)
            moves = ((w, y) for w in heads[x])
        else:
            moves = ((x, w) for w in heads[y])
        for state in moves:
            if state[0] != state[1] and state not in seen:
                seen.add(state)
                stack.append(state)
    return ends


@dataclass
class ParallelWidth:
    lower: int
    upper: int
    exact: bool
    cut: Tuple[int, ...] = ()
    witness: Optional[dict] = field(default=None, repr=False)
    nodes: int = 0

    @property
    def value(self):
        return self.lower if self.exact else None

    def __str__(self):
        return str(self.lower) if self.exact else f"{self.lower}..{self.upper}"


def _connected_sets(graph, budget, blocked=()):
    """Yield every vertex set S with s in S, t not in S, all of S reachable from s inside S.

    Each set is produced once (include/exclude branching on the
    smallest-position frontier vertex).
    """
    pos = graph.position
    succ = {v: sorted({graph.edge[e].head for e in graph.out_edges(v)}, key=pos.get) for v in graph.vertices}
    excluded0 = {graph.sink, *blocked}
    stack = [(frozenset([graph.source]), frozenset(excluded0))]
    while stack:
        budget.tick()
        S, excluded = stack.pop()
        cand = None
        for v in S:
            for w in succ[v]:
                if w not in S and w not in excluded and (cand is None or pos[w] < pos[cand]):
                    cand = w
        if cand is None:
            yield S
            continue
        stack.append((S, excluded | {cand}))
        stack.append((S | {cand}, excluded))


class _Counter:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"exceeded {self.limit} search nodes")


def _cut_edges(graph, S):
    """The minimal cut-set induced by S: edges from S into vertices that reach t outside S."""
    T = set(graph.vertices) - S
    coreach = _search(graph, graph.sink, forward=False, allowed_edges={
        e.id for e in graph.edges if e.tail in T and e.head in T
    })
    return [e.id for e in graph.edges if e.tail in S and e.head in coreach]


def _funnel_flow(graph, S, cut):
    """Minimal flow of value |cut|: tree paths s -> tail, the cut edge, tree path head -> t."""
    inside = {e.id for e in graph.edges if e.tail in S and e.head in S}
    outside = {e.id for e in graph.edges if e.tail not in S and e.head not in S}
    down = _bfs_tree(graph, graph.source, inside, forward=True)
    up = _bfs_tree(graph, graph.sink, outside, forward=False)
    flow = {e: 0 for e in graph.edge_ids}
    for eid in cut:
        e = graph.edge[eid]
        flow[eid] += 1
        v = e.tail
        while v != graph.source:
            flow[down[v]] += 1
            v = graph.edge[down[v]].tail
        v = e.head
        while v != graph.sink:
            flow[up[v]] += 1
            v = graph.edge[up[v]].head
    return flow


def _bfs_tree(graph, root, allowed, forward):
    parent = {}
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for eid in graph.out_edges(v) if forward else graph.in_edges(v):
            if eid not in allowed:
                continue
            e = graph.edge[eid]
            w = e.head if forward else e.tail
            if w not in seen:
                seen.add(w)
                parent[w] = eid
                queue.append(w)
    return parent


def parallel_width(graph, budget=None):
    """Size of the largest minimal s-t cut-set.

    Every minimal cut-set is the set of edges leaving some S (reachable
    from s inside S) whose heads still reach t outside S, and every such
    S yields one; all such S are enumerated. If the node budget runs out the
    result carries bounds instead of an exact value.
    """
    if budget is None:
        budget = pw_budget_default()
    counter = _Counter(budget)
    best_S, best_cut = None, []
    exact = True
    try:
        for S in _connected_sets(graph, counter):
            cut = _cut_edges(graph, S)
            if len(cut) > len(best_cut):
                best_S, best_cut = S, cut
    except BudgetExceeded:
        exact = False
    witness = _funnel_flow(graph, best_S, best_cut) if best_S is not None else None
    if exact:
        return ParallelWidth(len(best_cut), len(best_cut), True, tuple(best_cut), witness, counter.used)
    lo = max(len(best_cut), width(graph)[0])
    return ParallelWidth(lo, graph.m, False, tuple(best_cut), witness, counter.used)


def has_pc_minor(graph, c, budget=None):
    """True iff P_c is a directed minor, i.e. the parallel-width is at least c.

    Looks for a vertex set A grown from s (out-tree side) such that at
    least c edges leave A into vertices that still reach t avoiding A
    (in-tree side).
    """
    if c < 1:
        raise InvalidParameters("c must be positive")
    if c == 1:
        return True
    if budget is None:
        budget = pw_budget_default()
    counter = _Counter(budget)
    for A in _connected_sets(graph, counter):
        rest = {e.id for e in graph.edges if e.tail not in A and e.head not in A}
        B = _search(graph, graph.sink, forward=False, allowed_edges=rest)
        if sum(1 for e in graph.edges if e.tail in A and e.head in B) >= c:
            return True
    return False


def d_minor_step(graph, op, edge_id):
    """Apply one directed-minor operation; parallel edges are never merged.

    ``op`` is ``"delete"``, ``"backward"`` (head has in-degree 1) or
    ``"forward"`` (tail has out-degree 1).
    """
    if edge_id not in graph.edge:
        raise PreconditionViolated(op, edge_id)
    e = graph.edge[edge_id]
    a, b = e.tail, e.head
    others = [x for x in graph.edges if x.id != edge_id]
    if op == "delete":
        if graph.out_degree(a) <= 1 or graph.in_degree(b) <= 1:
            raise PreconditionViolated(op, edge_id)
        return MultiDag.build(graph.vertices, others)
    if op == "backward":
        if graph.in_degree(b) != 1:
            raise PreconditionViolated(op, edge_id)
        keep, gone = a, b
    elif op == "forward":
        if graph.out_degree(a) != 1:
            raise PreconditionViolated(op, edge_id)
        keep, gone = b, a
    else:
        raise ValueError(f"unknown operation {op!r}")
    if not others:
        raise PreconditionViolated(op, edge_id)
    moved = [Edge(x.id, keep if x.tail == gone else x.tail, keep if x.head == gone else x.head) for x in others]
    return MultiDag.build([v for v in graph.vertices if v != gone], moved)


@dataclass
class StructureReport:
    width: int
    parallel_width: ParallelWidth
    width_stable: bool
    ch2_witness: Optional[Tuple[int, int]] = None


def analyze_structure(graph, pw_budget=None):
    w, _ = width(graph)
    stable, witness = is_width_stable(graph)
    return StructureReport(w, parallel_width(graph, pw_budget), stable, witness)
