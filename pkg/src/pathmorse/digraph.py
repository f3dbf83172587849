"""Finite digraphs: parsing, transitive closure, reachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

Vertex = Union[int, str]


class DigraphError(ValueError):
    pass


class ParseError(DigraphError):
    def __init__(self, lineno: int, line: str, why: str):
        super().__init__(f"line {lineno}: {why}: {line!r}")
        self.lineno = lineno


class UnknownVertexError(DigraphError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


@dataclass(frozen=True)
class Digraph:
    """A digraph on vertices ``0..n-1`` with user-facing labels.

    Edges are ordered pairs of distinct vertex indices.  Vertex order is the
    insertion order and is what every downstream path basis is sorted by.
    """

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise DigraphError("vertex labels must be unique")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise DigraphError(f"self-loop at {self.labels[u]!r}")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> Digraph:
        """Build from labelled edges; vertices appear in first-appearance order."""
        order: dict[str, int] = {}
        for v in vertices:
            order.setdefault(str(v), len(order))
        es = set()
        for u, v in edges:
            u, v = str(u), str(v)
            for x in (u, v):
                order.setdefault(x, len(order))
            es.add((order[u], order[v]))
        return cls(tuple(order), frozenset(es))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, v: Vertex) -> int:
        """Resolve a label or an index to a vertex index."""
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.n:
                return v
            raise UnknownVertexError(v)
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[v].append(u)
        return tuple(tuple(sorted(s)) for s in out)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def label_path(self, path: Iterable[int]) -> str:
        return "".join(self.labels[i] for i in path)

    def relabel(self, perm: list[int]) -> Digraph:
        """Reorder vertices: new vertex ``k`` is old vertex ``perm[k]``."""
        inv = {old: new for new, old in enumerate(perm)}
        return Digraph(tuple(self.labels[i] for i in perm),
                       frozenset((inv[u], inv[v]) for u, v in self.edges))

    def to_text(self) -> str:
        lines = [f"{self.labels[u]} -> {self.labels[v]}" for u, v in self.edge_list()]
        touched = {x for e in self.edges for x in e}
        lines += [f"vertex {lab}" for i, lab in enumerate(self.labels) if i not in touched]
        return "\n".join(lines) + ("\n" if lines else "")


def parse_digraph(text: str) -> Digraph:
    """Parse an edge-list document.

    One edge per line as ``a b`` or ``a -> b``; ``vertex a`` declares an
    isolated vertex; ``#`` starts a comment.
    """
    order: dict[str, int] = {}
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError(lineno, raw, "expected 'vertex <label>'")
            order.setdefault(tokens[1], len(order))
            continue
        if "->" in line:
            parts = [p.strip() for p in line.split("->")]
            if len(parts) != 2 or not all(p and len(p.split()) == 1 for p in parts):
                raise ParseError(lineno, raw, "expected '<label> -> <label>'")
            u, v = parts
        elif len(tokens) == 2:
            u, v = tokens
        else:
            raise ParseError(lineno, raw, "expected '<label> <label>'")
        if u == v:
            raise ParseError(lineno, raw, "self-loops are not allowed")
        for x in (u, v):
            order.setdefault(x, len(order))
        edges.add((order[u], order[v]))
    return Digraph(tuple(order), frozenset(edges))


def _bfs(g: Digraph, src: int) -> set[int]:
    """Vertices reachable from ``src`` by a path of length >= 1."""
    seen: set[int] = set()
    queue = deque(g.succ[src])
    seen.update(g.succ[src])
    while queue:
        u = queue.popleft()
        for w in g.succ[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def transitive_closure(g: Digraph) -> Digraph:
    """Smallest transitive superdigraph on the same vertices, without self-loops."""
    edges = set()
    for u in range(g.n):
        edges.update((u, w) for w in _bfs(g, u) if w != u)
    return Digraph(g.labels, frozenset(edges))


def is_transitive(g: Digraph) -> bool:
    return transitive_closure(g).edges == g.edges


def reachable(g: Digraph, u: Vertex, v: Vertex) -> bool:
    """True iff there is a directed path of length >= 1 from ``u`` to ``v``."""
    u, v = g.index(u), g.index(v)
    return v in _bfs(g, u)


def shortest_path(g: Digraph, u: Vertex, v: Vertex) -> tuple[int, ...] | None:
    """A shortest directed path of length >= 1 from ``u`` to ``v`` (or None)."""
    u, v = g.index(u), g.index(v)
    parent: dict[int, int] = {}
    queue = deque()
    for w in g.succ[u]:
        if w not in parent:
            parent[w] = u
            queue.append(w)
    while queue:
        x = queue.popleft()
        if x == v:
            path = [v]
            while True:
                p = parent[path[-1]]
                path.append(p)
                if p == u and len(path) > 1:
                    break
            return tuple(reversed(path))
        for w in g.succ[x]:
            if w not in parent:
                parent[w] = x
                queue.append(w)
    return None


def on_directed_cycle(g: Digraph, v: Vertex) -> bool:
    return reachable(g, v, v)


def degree(g: Digraph, v: Vertex) -> int:
    v = g.index(v)
    return len(g.succ[v]) + len(g.pred[v])
