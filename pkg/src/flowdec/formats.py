"""Plain-text file formats for flow networks and decompositions.

Graph file::

    # optional comment lines
    4
    0 1 5
    0 2 3
    ...

The first non-comment line is the vertex count n, every further line is
``tail head flow``. Edge ids follow line order. Source and sink are the
unique vertices without in-edges / out-edges.

Decomposition file: one path per line, ``weight : e0,e1,...`` with an
optional ``# v0 v1 ...`` vertex walk appended for humans. Only the edge
ids are read back.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .decompose import Decomposition, WeightedPath
from .errors import FlowDecError, UnknownEdge
from .graph import FlowNetwork, MultiDag, check_flow, path_vertices


class ParseError(FlowDecError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def _int(token, lineno, what):
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {token!r}", lineno) from None


@dataclass
class GraphFile:
    network: FlowNetwork
    header: List[str] = field(default_factory=list)

    @classmethod
    def parse(cls, text):
        header = []
        n = None
        pairs, flows = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if n is None:
                    header.append(raw)
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 1:
                    raise ParseError("expected the vertex count", lineno)
                n = _int(parts[0], lineno, "vertex count")
                if n < 2:
                    raise ParseError("need at least two vertices", lineno)
                continue
            if len(parts) != 3:
                raise ParseError(f"expected 'tail head flow', got {line!r}", lineno)
            a, b, f = (_int(p, lineno, what) for p, what in zip(parts, ("tail", "head", "flow")))
            if not (0 <= a < n and 0 <= b < n):
                raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
            if f < 0:
                raise ParseError("negative flow", lineno)
            pairs.append((a, b))
            flows.append(f)
        if n is None:
            raise ParseError("empty graph file")
        if not pairs:
            raise ParseError("no edges")
        graph = MultiDag.from_edges(n, pairs)
        flow = dict(enumerate(flows))
        check_flow(graph, flow)
        return cls(FlowNetwork(graph, flow), header)

    def format(self):
        g = self.network.graph
        if list(g.vertices) != list(range(g.n)) or list(g.edge_ids) != list(range(g.m)):
            raise ValueError("graph files need vertices 0..n-1 and edge ids 0..m-1")
        lines = list(self.header)
        lines.append(str(g.n))
        for e in g.edges:
            lines.append(f"{e.tail} {e.head} {self.network.flow[e.id]}")
        return "\n".join(lines) + "\n"


@dataclass
class DecompositionFile:
    paths: List[WeightedPath]
    header: List[str] = field(default_factory=list)
    comments: List[Optional[str]] = field(default_factory=list)

    @classmethod
    def from_decomposition(cls, decomposition, graph=None, header=()):
        paths = list(decomposition.paths)
        comments = []
        for p in paths:
            comments.append(" ".join(map(str, path_vertices(graph, p.edges))) if graph is not None else None)
        return cls(paths, list(header), comments)

    def decomposition(self, algorithm=""):
        return Decomposition(list(self.paths), algorithm)

    @classmethod
    def parse(cls, text):
        header, paths, comments = [], [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if not paths:
                    header.append(raw)
                continue
            body, sep, note = line.partition("#")
            comments.append(note.strip() if sep else None)
            w, colon, rest = body.partition(":")
            if not colon:
                raise ParseError("expected 'weight : e0,e1,...'", lineno)
            weight = _int(w.strip(), lineno, "weight")
            ids = [t.strip() for t in rest.split(",")]
            if ids == [""]:
                raise ParseError("path has no edges", lineno)
            edges = tuple(_int(t, lineno, "edge id") for t in ids)
            paths.append(WeightedPath(edges, weight))
        return cls(paths, header, comments)

    def format(self):
        lines = list(self.header)
        comments = self.comments or [None] * len(self.paths)
        for p, note in zip(self.paths, comments):
            line = f"{p.weight} : {','.join(map(str, p.edges))}"
            if note:
                line += f"  # {note}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def check_edges(self, graph):
        """Raise UnknownEdge if a path names an edge id the graph lacks."""
        for p in self.paths:
            for eid in p.edges:
                if eid not in graph.edge:
                    raise UnknownEdge(f"path references unknown edge {eid}")


def read_graph(path):
    with open(path, encoding="ascii") as fh:
        return GraphFile.parse(fh.read())


def read_decomposition(path):
    with open(path, encoding="ascii") as fh:
        return DecompositionFile.parse(fh.read())


def write_text(path, text):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


__all__ = [
    "GraphFile",
    "DecompositionFile",
    "ParseError",
    "read_graph",
    "read_decomposition",
    "write_text",
]
