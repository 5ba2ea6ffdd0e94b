"""Brute-force reference implementations used only by the tests.

Nothing here calls the min-flow machinery of the package; every quantity
is obtained by enumerating paths, flows or edge subsets directly.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from flowdec.errors import GraphError
from flowdec.graph import MultiDag


def st_paths(graph, edges=None):
    """All s-t paths (tuples of edge ids) using only ``edges`` (default: all)."""
    allowed = set(graph.edge_ids) if edges is None else set(edges)
    out = []

    def walk(v, acc):
        if v == graph.sink:
            out.append(tuple(acc))
            return
        for eid in graph.out_edges(v):
            if eid in allowed:
                acc.append(eid)
                walk(graph.edge[eid].head, acc)
                acc.pop()

    walk(graph.source, [])
    return out


def cover_number(graph, edges):
    """Fewest s-t paths inside ``edges`` whose union is ``edges``."""
    edges = frozenset(edges)
    paths = [frozenset(p) for p in st_paths(graph, edges)]
    for k in range(1, len(edges) + 1):
        for combo in itertools.combinations(paths, k):
            if frozenset().union(*combo) == edges:
                return k
    raise AssertionError("edge set is not a union of s-t paths")


def brute_width(graph):
    return cover_number(graph, graph.edge_ids)


def brute_fwidth(network):
    """Fewest s-t paths covering the support with edge e used at most f(e) times."""
    f = network.flow
    support = frozenset(e for e, v in f.items() if v > 0)
    paths = st_paths(network.graph, support)
    for k in range(1, sum(f[e] for e in network.graph.out_edges(network.graph.source)) + 1):
        for combo in itertools.combinations_with_replacement(paths, k):
            used = {}
            for p in combo:
                for e in p:
                    used[e] = used.get(e, 0) + 1
            if set(used) == support and all(used[e] <= f[e] for e in used):
                return k
    raise AssertionError("flow has no covering")


def brute_mfd(network, limit=6):
    """Size of a minimum flow decomposition by depth-limited path peeling, or None if > limit."""
    g = network.graph
    paths = st_paths(g)
    ids = list(g.edge_ids)
    index = {e: i for i, e in enumerate(ids)}

    @lru_cache(maxsize=None)
    def solvable(f, k):
        if not any(f):
            return True
        if k == 0:
            return False
        # the first positive edge in id order must lie on some path of the decomposition
        first = next(i for i, v in enumerate(f) if v)
        for p in paths:
            pos = [index[e] for e in p]
            if first not in pos or any(f[i] == 0 for i in pos):
                continue
            top = min(f[i] for i in pos)
            for w in range(top, 0, -1):
                nxt = list(f)
                for i in pos:
                    nxt[i] -= w
                if solvable(tuple(nxt), k - 1):
                    return True
        return False

    start = tuple(network.flow[e] for e in ids)
    for k in range(1, limit + 1):
        if solvable(start, k):
            return k
    return None


def minimal_flows(graph):
    """Every minimal flow (as a tuple over edge ids) with its value.

    A flow is minimal when no s-t path carries at least 2 on every edge.
    Minimal flows are sums of distinct unit paths, and minimality is lost
    for good once violated, so a pruned subset search finds them all.
    """
    ids = list(graph.edge_ids)
    index = {e: i for i, e in enumerate(ids)}
    paths = [tuple(index[e] for e in p) for p in st_paths(graph)]
    found = {}

    def is_minimal(f):
        return not any(all(f[i] >= 2 for i in p) for p in paths)

    def rec(start, f, value):
        found.setdefault(tuple(f), value)
        for j in range(start, len(paths)):
            for i in paths[j]:
                f[i] += 1
            if is_minimal(f):
                rec(j + 1, f, value + 1)
            for i in paths[j]:
                f[i] -= 1

    rec(0, [0] * len(ids), 0)
    return found


def brute_pw_from_flows(graph):
    return max(minimal_flows(graph).values())


def brute_width_from_flows(graph):
    return min(v for f, v in minimal_flows(graph).items() if all(f))


def _disconnects(graph, removed):
    seen = {graph.source}
    stack = [graph.source]
    while stack:
        v = stack.pop()
        for eid in graph.out_edges(v):
            if eid in removed:
                continue
            w = graph.edge[eid].head
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return graph.sink not in seen


def brute_pw_from_cuts(graph):
    """Largest inclusion-minimal set of edges whose removal separates s from t."""
    ids = list(graph.edge_ids)
    best = 0
    for r in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, r):
            cut = set(combo)
            if not _disconnects(graph, cut):
                continue
            if all(not _disconnects(graph, cut - {e}) for e in cut):
                best = max(best, r)
    return best


def path_unions(graph):
    """All non-empty edge sets that are unions of s-t paths."""
    paths = [frozenset(p) for p in st_paths(graph)]
    seen = set()
    frontier = set(paths)
    while frontier:
        seen |= frontier
        frontier = {a | p for a in frontier for p in paths} - seen
    return seen


def brute_width_stable(graph):
    """Definition check: width of a flow-support never exceeds that of a larger support.

    Any union of s-t paths inside supp(f) is the support of some g <= f when
    f is large enough, so it suffices to compare path-union supports.
    """
    unions = sorted(path_unions(graph), key=len)
    widths = {u: cover_number(graph, u) for u in unions}
    for big in unions:
        for small in unions:
            if small < big and widths[small] > widths[big]:
                return False
    return True


def dag_from_pairs(n, pairs):
    try:
        return MultiDag.from_edges(n, pairs)
    except GraphError:
        return None


def enumerate_dags(max_vertices, max_edges):
    """Every s-t DAG on 0..n-1 (vertex order = a topological order, 0 = s, n-1 = t)."""
    out = []
    for n in range(2, max_vertices + 1):
        slots = [(a, b) for a in range(n) for b in range(a + 1, n)]
        for m in range(1, max_edges + 1):
            for pairs in itertools.combinations_with_replacement(slots, m):
                g = dag_from_pairs(n, pairs)
                if g is not None and g.source == 0 and g.sink == n - 1:
                    out.append(g)
    return out


def random_dags(count, max_vertices, max_edges, seed):
    """Random s-t DAGs: a spine path plus random forward edges, dangling vertices excluded."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_vertices)
        pairs = [(i, i + 1) for i in range(n - 1)]
        extra = rng.randint(0, max_edges - len(pairs))
        for _ in range(extra):
            a = rng.randrange(n - 1)
            b = rng.randrange(a + 1, n)
            pairs.append((a, b))
        rng.shuffle(pairs)
        g = dag_from_pairs(n, pairs)
        if g is not None:
            out.append(g)
    return out
