"""Exhaustive minimum flow decomposition for desk-scale instances.

For a candidate size k the search routes k paths simultaneously through
the contracted graph in topological order. Path weights stay symbolic:
each routed edge contributes the linear equation "sum of weights of the
paths on e equals f(e)", kept in reduced row-echelon form over the
rationals. Branches die as soon as the system is inconsistent or forces a
weight outside [1, bound]. Paths that share their whole history are
interchangeable, so they are split among out-edges by counts only.

Sizes are tried upward from the flow-width lower bound; the first size
that admits a decomposition is optimal.
"""
from __future__ import annotations

from fractions import Fraction

from .decompose import Decomposition, WeightedPath, greedy_decompose, parity_fix_decompose
from .errors import BudgetExceeded, EmptyFlow
from .graph import flow_subgraph, yv_contract
from .minflow import flow_width

DEFAULT_BUDGET = 200_000


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


class _System:
    """Linear equations over k unknowns in reduced row-echelon form."""

    __slots__ = ("k", "rows")

    def __init__(self, k, rows=None):
        self.k = k
        self.rows = rows if rows is not None else {}  # pivot -> (coeffs, rhs)

    def copy(self):
        return _System(self.k, dict(self.rows))

    def add(self, members, rhs):
        """Add sum(x_i for i in members) == rhs; False if inconsistent."""
        coeffs = [Fraction(0)] * self.k
        for i in members:
            coeffs[i] += 1
        rhs = Fraction(rhs)
        for p, (row, r) in self.rows.items():
            c = coeffs[p]
            if c:
                coeffs = [a - c * b for a, b in zip(coeffs, row)]
                rhs -= c * r
        pivot = next((i for i, c in enumerate(coeffs) if c), None)
        if pivot is None:
            return rhs == 0
        c = coeffs[pivot]
        coeffs = [a / c for a in coeffs]
        rhs /= c
        for p, (row, r) in list(self.rows.items()):
            d = row[pivot]
            if d:
                self.rows[p] = ([a - d * b for a, b in zip(row, coeffs)], r - d * rhs)
        self.rows[pivot] = (coeffs, rhs)
        return True

    def free(self):
        return [i for i in range(self.k) if i not in self.rows]

    def determined_ok(self, bounds):
        """Every fully determined unknown must be an integer in [1, bound]."""
        free = self.free()
        for p, (row, r) in self.rows.items():
            if any(row[j] for j in free):
                continue
            if r.denominator != 1 or r < 1 or r > bounds[p]:
                return False
        return True


def _solve_free(system, bounds, budget):
    """Search integer values for the free unknowns so that all unknowns land in [1, bound]."""
    free = system.free()
    rows = list(system.rows.items())
    k = system.k
    values = [None] * k

    def pivot_range(assigned, depth):
        for p, (row, r) in rows:
            lo = hi = r
            for j in free[:depth]:
                lo -= row[j] * assigned[j]
                hi -= row[j] * assigned[j]
            for j in free[depth:]:
                c = row[j]
                if c > 0:
                    lo -= c * bounds[j]
                    hi -= c * 1
                elif c < 0:
                    lo -= c * 1
                    hi -= c * bounds[j]
            if hi < 1 or lo > bounds[p]:
                return False
        return True

    def rec(depth, assigned):
        budget.tick()
        if not pivot_range(assigned, depth):
            return None
        if depth == len(free):
            for p, (row, r) in rows:
                v = r - sum(row[j] * assigned[j] for j in free)
                if v.denominator != 1:
                    return None
                values[p] = int(v)
            for j in free:
                values[j] = assigned[j]
            return list(values)
        j = free[depth]
        for x in range(1, bounds[j] + 1):
            assigned[j] = x
            got = rec(depth + 1, assigned)
            if got is not None:
                return got
        assigned[j] = None
        return None

    return rec(0, {})


def _route(graph, flow, k, budget):
    """Find k weighted paths decomposing ``flow`` on ``graph``, or None."""
    order = [v for v in graph.topological_order if v != graph.sink]
    out = {v: [e for e in graph.out_edges(v) if flow[e] > 0] for v in graph.vertices}
    head = {e.id: e.head for e in graph.edges}
    edges_of = [[] for _ in range(k)]
    big = max(flow.values())

    def bounds_of():
        return [min((flow[e] for e in edges_of[i]), default=big) for i in range(k)]

    def at_vertex(idx, classes, system):
        budget.tick()
        if idx == len(order):
            bounds = bounds_of()
            if not system.determined_ok(bounds):
                return None
            weights = _solve_free(system, bounds, budget)
            if weights is None:
                return None
            return [list(p) for p in edges_of], weights
        v = order[idx]
        here = [c for c in classes if c[0] == v]
        rest = [c for c in classes if c[0] != v]
        outs = out[v]
        d = len(outs)
        if sum(len(c[1]) for c in here) < d:
            return None
        caps = [flow[e] for e in outs]
        for combo in _class_splits([len(c[1]) for c in here], caps, budget):
            members = [[] for _ in range(d)]
            new_classes = list(rest)
            for (_, paths), split in zip(here, combo):
                pos = 0
                for j, cnt in enumerate(split):
                    if cnt:
                        grp = paths[pos:pos + cnt]
                        pos += cnt
                        members[j].extend(grp)
                        new_classes.append((head[outs[j]], grp))
            sys2 = system.copy()
            if not all(sys2.add(members[j], flow[outs[j]]) for j in range(d)):
                continue
            for j in range(d):
                for i in members[j]:
                    edges_of[i].append(outs[j])
            if sys2.determined_ok(bounds_of()):
                got = at_vertex(idx + 1, new_classes, sys2)
                if got is not None:
                    return got
            for j in range(d):
                for i in members[j]:
                    edges_of[i].pop()
        return None

    return at_vertex(0, [(graph.source, list(range(k)))], _System(k))


def _class_splits(sizes, caps, budget):
    """Split each class among the d out-edges so every edge gets 1..cap paths."""
    d = len(caps)
    counts = [0] * d
    chosen = []
    remaining = sum(sizes)

    def rec(ci):
        nonlocal remaining
        budget.tick()
        if ci == len(sizes):
            if all(counts):
                yield tuple(chosen)
            return
        if sum(1 for c in counts if c == 0) > remaining:
            return
        remaining -= sizes[ci]
        limits = [caps[j] - counts[j] for j in range(d)]
        for split in _compositions(sizes[ci], limits):
            for j, x in enumerate(split):
                counts[j] += x
            chosen.append(split)
            yield from rec(ci + 1)
            chosen.pop()
            for j, x in enumerate(split):
                counts[j] -= x
        remaining += sizes[ci]

    return rec(0)


def _compositions(n, limits):
    """Ordered ways to write n as a sum of parts with part j in [0, limits[j]]."""
    room = [0] * (len(limits) + 1)
    for j in range(len(limits) - 1, -1, -1):
        room[j] = room[j + 1] + limits[j]

    def rec(j, left):
        if j == len(limits) - 1:
            if left <= limits[j]:
                yield (left,)
            return
        for first in range(min(left, limits[j]), max(0, left - room[j + 1]) - 1, -1):
            for tail in rec(j + 1, left - first):
                yield (first,) + tail

    if n <= room[0]:
        yield from rec(0, n)


def _expand(paths, weights, mapping, algorithm):
    out = []
    for p, w in zip(paths, weights):
        full = []
        for eid in p:
            full.extend(mapping[eid])
        out.append(WeightedPath(tuple(full), w))
    out.sort(key=lambda wp: (wp.edges, wp.weight))
    return Decomposition(out, algorithm)


class ExactResult:
    def __init__(self, decomposition, optimal, lower_bound, nodes):
        self.decomposition = decomposition
        self.optimal = optimal
        self.lower_bound = lower_bound
        self.nodes = nodes

    def __iter__(self):
        yield self.decomposition
        yield self.optimal


def exact_mfd(network, budget=DEFAULT_BUDGET):
    """Minimum flow decomposition by iterative deepening on the number of paths.

    Returns an ExactResult (unpacks as ``decomposition, optimal``). When the
    node budget runs out the best decomposition known so far is returned
    with ``optimal`` False.
    """
    if network.value == 0:
        raise EmptyFlow("flow value is zero")
    lower = flow_width(network)[0]
    best = min(
        (greedy_decompose(network), parity_fix_decompose(network)[0].merged()),
        key=lambda d: d.size,
    )
    best = Decomposition(best.paths, "exact")
    counter = _Budget(budget)
    if best.size <= lower:
        return ExactResult(best, True, lower, 0)
    contracted, mapping = yv_contract(flow_subgraph(network))
    g, f = contracted.graph, contracted.flow
    try:
        for k in range(lower, best.size):
            got = _route(g, f, k, counter)
            if got is not None:
                paths, weights = got
                return ExactResult(_expand(paths, weights, mapping, "exact"), True, lower, counter.used)
    except BudgetExceeded:
        return ExactResult(best, False, lower, counter.used)
    return ExactResult(best, True, lower, counter.used)
