"""Discrete Morse functions on digraphs.

With non-negative vertex values and path value = sum of vertex values, an
equal-value coface is exactly the insertion of a zero-valued vertex and an
equal-value face is exactly the deletion of one.  :func:`morse_violation`
decides the Morse property from that observation, using four graph
conditions that are checked against the enumerating oracle
:func:`morse_violation_bruteforce` in the test suite:

* M1: no zero lies on a directed cycle;
* M2: no directed path joins two distinct zeros;
* M3: for every edge ``u -> v`` at most one zero ``w`` with ``u -> w -> v``;
* M4: every vertex has at most one zero among its in- and out-neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .digraph import Digraph, DigraphError, Vertex, _bfs, on_directed_cycle, shortest_path, transitive_closure
from .paths import Path, faces, path_bases


class MorseError(ValueError):
    pass


class NotMorseError(MorseError):
    def __init__(self, violation: MorseViolation):
        super().__init__(violation.message)
        self.violation = violation


class ConditionStarError(MorseError):
    def __init__(self, witness: StarWitness):
        super().__init__(witness.message)
        self.witness = witness


class ValuesParseError(MorseError):
    pass


@dataclass(frozen=True)
class MorseFunction:
    """Non-negative rational values indexed by vertex."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(x) for x in self.values))
        for x in self.values:
            if x < 0:
                raise MorseError(f"negative value {x}")

    @classmethod
    def from_values(cls, g: Digraph, values: Mapping[Vertex, object] | Sequence) -> MorseFunction:
        if isinstance(values, Mapping):
            out: list = [None] * g.n
            for v, x in values.items():
                out[g.index(v)] = Fraction(x)
            missing = [g.labels[i] for i, x in enumerate(out) if x is None]
            if missing:
                raise MorseError(f"no value for vertices {', '.join(missing)}")
            return cls(tuple(out))
        if len(values) != g.n:
            raise MorseError(f"expected {g.n} values, got {len(values)}")
        return cls(tuple(Fraction(x) for x in values))

    def __len__(self):
        return len(self.values)

    @cached_property
    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators over a common denominator, for fast exact sums."""
        den = lcm(*(x.denominator for x in self.values)) if self.values else 1
        return tuple(int(x * den) for x in self.values), den

    def scaled_value(self, p: Path) -> int:
        """``den * f(p)`` as an integer, with ``den`` from :attr:`scaled`."""
        nums = self.scaled[0]
        return sum(nums[v] for v in p)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    @property
    def zero_set(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.values) if x == 0)

    def check_domain(self, g: Digraph) -> None:
        if len(self.values) != g.n:
            raise MorseError(f"function has {len(self.values)} values but digraph has {g.n} vertices")


def path_value(f: MorseFunction, p: Path) -> Fraction:
    """Sum of the vertex values along ``p``."""
    try:
        nums, den = f.scaled
        return Fraction(sum(nums[v] for v in p), den)
    except IndexError:
        raise MorseError(f"path {p} leaves the domain of f") from None


@dataclass(frozen=True)
class MorseViolation:
    """A concrete failure of the Morse definition.

    ``path`` is the allowed path at which a condition fails and ``witnesses``
    are its two equal-value cofaces or faces.
    """

    kind: str
    path: Path
    witnesses: tuple[Path, ...]
    message: str


def _lp(g, p):
    return g.label_path(p)


def morse_violation(g: Digraph, f: MorseFunction) -> MorseViolation | None:
    """Structural Morse check; returns None when ``f`` is Morse on ``g``."""
    f.check_domain(g)
    zeros = sorted(f.zero_set)
    zset = set(zeros)
    reach = {z: _bfs(g, z) for z in zeros}

    for z in zeros:
        if z in reach[z]:
            loop = shortest_path(g, z, z)
            return MorseViolation("zero-on-cycle", loop, (loop[:-1], loop[1:]),
                                  f"zero {g.labels[z]} lies on directed cycle {_lp(g, loop)}")
    for a in zeros:
        for b in zeros:
            if a != b and b in reach[a]:
                p = shortest_path(g, a, b)
                return MorseViolation("zero-reaches-zero", p, (p[:-1], p[1:]),
                                      f"zero {g.labels[a]} reaches zero {g.labels[b]} via {_lp(g, p)}")
    for u, v in g.edge_list():
        mids = sorted(set(g.succ[u]) & set(g.pred[v]) & zset)
        if len(mids) > 1:
            cof = tuple((u, w, v) for w in mids[:2])
            return MorseViolation("two-cofaces", (u, v), cof,
                                  f"two equal-value cofaces at {_lp(g, (u, v))}: "
                                  + ", ".join(_lp(g, c) for c in cof))
    for v in range(g.n):
        cof = [(z, v) for z in g.pred[v] if z in zset] + [(v, z) for z in g.succ[v] if z in zset]
        cof.sort(key=lambda c: (c[0] if c[1] == v else c[1], c))
        if len({c[0] if c[1] == v else c[1] for c in cof}) > 1:
            cof = tuple(cof[:2])
            return MorseViolation("two-cofaces", (v,), cof,
                                  f"two equal-value cofaces at {g.labels[v]}: "
                                  + ", ".join(_lp(g, c) for c in cof))
    return None


def is_morse(g: Digraph, f: MorseFunction) -> bool:
    return morse_violation(g, f) is None


def _cofaces(g: Digraph, p: Path) -> list[Path]:
    """Allowed paths obtained from the allowed path ``p`` by inserting one vertex."""
    out = set()
    m = len(p)
    for gap in range(m + 1):
        left = p[gap - 1] if gap else None
        right = p[gap] if gap < m else None
        for x in range(g.n):
            if (left is None or (left, x) in g.edges) and (right is None or (x, right) in g.edges):
                out.add(p[:gap] + (x,) + p[gap:])
    return sorted(out)


def _allowed_faces(g: Digraph, p: Path) -> list[Path]:
    """Allowed paths obtained from the allowed path ``p`` by deleting one vertex."""
    m = len(p)
    if m < 2:
        return []
    out = set()
    for i in range(m):
        if i == 0 or i == m - 1 or (p[i - 1], p[i + 1]) in g.edges:
            out.add(p[:i] + p[i + 1:])
    return sorted(out)


def morse_violation_bruteforce(g: Digraph, f: MorseFunction, max_len: int) -> MorseViolation | None:
    """Check both Morse conditions on every allowed path of dimension <= max_len."""
    f.check_domain(g)
    for basis in path_bases(g, max_len):
        for p in basis.paths:
            fp = f.scaled_value(p)
            eq = [c for c in _cofaces(g, p) if f.scaled_value(c) == fp]
            if len(eq) > 1:
                return MorseViolation("two-cofaces", p, tuple(eq[:2]),
                                      f"two equal-value cofaces at {_lp(g, p)}: "
                                      + ", ".join(_lp(g, c) for c in eq[:2]))
            eq = [b for b in _allowed_faces(g, p) if f.scaled_value(b) == fp]
            if len(eq) > 1:
                return MorseViolation("two-faces", p, tuple(eq[:2]),
                                      f"two equal-value faces of {_lp(g, p)}: "
                                      + ", ".join(_lp(g, b) for b in eq[:2]))
    return None


def is_morse_bruteforce(g: Digraph, f: MorseFunction, max_len: int) -> bool:
    return morse_violation_bruteforce(g, f, max_len) is None


@dataclass(frozen=True)
class StarWitness:
    """A vertex seeing two zeros, with a connecting path to each."""

    vertex: int
    zeros: tuple[int, int]
    paths: tuple[Path, Path]
    message: str


def condition_star_witness(g: Digraph, f: MorseFunction) -> StarWitness | None:
    """Condition (*): every vertex meets at most one zero among the allowed
    paths that start or end at it (the 0-path at the vertex included)."""
    f.check_domain(g)
    zeros = sorted(f.zero_set)
    if len(zeros) < 2:
        return None
    fwd = [_bfs(g, v) for v in range(g.n)]
    for v in range(g.n):
        seen = [z for z in zeros if z == v or z in fwd[v] or v in fwd[z]]
        if len(seen) > 1:
            ps = []
            for z in seen[:2]:
                if z == v:
                    ps.append((v,))
                elif v in fwd[z]:
                    ps.append(shortest_path(g, z, v))
                else:
                    ps.append(shortest_path(g, v, z))
            msg = (f"vertex {g.labels[v]} meets zeros {g.labels[seen[0]]} and {g.labels[seen[1]]} "
                   f"via {_lp(g, ps[0])} and {_lp(g, ps[1])}")
            return StarWitness(v, (seen[0], seen[1]), (ps[0], ps[1]), msg)
    return None


def condition_star(g: Digraph, f: MorseFunction) -> bool:
    return condition_star_witness(g, f) is None


def extend_to_closure(g: Digraph, f: MorseFunction) -> MorseFunction:
    """Extend a Morse function on ``g`` to its transitive closure.

    Vertex sets agree, so the extension keeps every value; what is checked is
    that the result is Morse on the closure.
    """
    bad = morse_violation(g, f)
    if bad is not None:
        raise NotMorseError(bad)
    w = condition_star_witness(g, f)
    if w is not None:
        raise ConditionStarError(w)
    fbar = MorseFunction(f.values)
    bad = morse_violation(transitive_closure(g), fbar)
    if bad is not None:  # pragma: no cover - would contradict the extension theorem
        raise AssertionError(f"extension is not Morse on the closure: {bad.message}")
    return fbar


def is_critical(g: Digraph, f: MorseFunction, p: Path) -> bool:
    zero = f.zero_set
    n = len(p) - 1
    for i, v in enumerate(p):
        if v in zero and n > 0:
            if i == 0 or i == n or (p[i - 1], p[i + 1]) in g.edges:
                return False
    for z in zero:
        if (z, p[0]) in g.edges or (p[-1], z) in g.edges:
            return False
        for i in range(n):
            if (p[i], z) in g.edges and (z, p[i + 1]) in g.edges:
                return False
    return True


def critical_paths(g: Digraph, f: MorseFunction, n: int, basis=None) -> list[Path]:
    """Allowed n-paths with neither an equal-value coface nor an equal-value face."""
    bad = morse_violation(g, f)
    if bad is not None:
        raise NotMorseError(bad)
    if basis is None:
        basis = path_bases(g, n)[n]
    return [p for p in basis.paths if is_critical(g, f, p)]


def is_flat_witten_morse(g: Digraph, f: MorseFunction, max_len: int | None = None) -> bool:
    """Bounded check of the Witten-Morse and flatness inequalities."""
    f.check_domain(g)
    if max_len is None:
        max_len = max(g.n, 1)
    for basis in path_bases(g, max_len):
        for p in basis.paths:
            fp = path_value(f, p)
            up = [path_value(f, c) for c in _cofaces(g, p)]
            down = [path_value(f, b) for b in _allowed_faces(g, p)]
            for a, b in combinations(up, 2):
                if not (fp < (a + b) / 2 and fp <= min(a, b)):
                    return False
            for a, b in combinations(down, 2):
                if not (fp > (a + b) / 2 and fp >= max(a, b)):
                    return False
    return True


def single_zero_morse(g: Digraph, v: Vertex, positive_values: Mapping[Vertex, object] | None = None) -> MorseFunction:
    """A Morse function vanishing only at ``v``, which must lie on no directed cycle.

    Without ``positive_values`` the other vertices get ``index + 1``.
    """
    z = g.index(v)
    if on_directed_cycle(g, z):
        raise DigraphError(f"vertex {g.labels[z]} lies on a directed cycle")
    vals: list = [None] * g.n
    vals[z] = Fraction(0)
    if positive_values is None:
        for i in range(g.n):
            if i != z:
                vals[i] = Fraction(i + 1)
    else:
        for w, x in positive_values.items():
            i = g.index(w)
            if i == z:
                continue
            x = Fraction(x)
            if x <= 0:
                raise MorseError(f"value for {g.labels[i]} must be positive, got {x}")
            vals[i] = x
        missing = [g.labels[i] for i, x in enumerate(vals) if x is None]
        if missing:
            raise MorseError(f"no value for vertices {', '.join(missing)}")
    f = MorseFunction(tuple(vals))
    if not is_morse(g, f) or not condition_star(g, f):  # pragma: no cover
        raise AssertionError("single-zero function failed the Morse checks")
    return f


def parse_values(text: str, g: Digraph) -> MorseFunction:
    """Parse ``<label> <rational>`` lines; every vertex needs exactly one value."""
    vals: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValuesParseError(f"line {lineno}: expected '<label> <value>': {raw!r}")
        label, val = parts
        try:
            i = g.index(label)
        except KeyError:
            raise ValuesParseError(f"line {lineno}: unknown vertex {label!r}") from None
        try:
            x = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise ValuesParseError(f"line {lineno}: bad value {val!r}") from None
        if x < 0:
            raise ValuesParseError(f"line {lineno}: negative value for {label}")
        if i in vals:
            raise ValuesParseError(f"line {lineno}: duplicate value for {label}")
        vals[i] = x
    missing = [g.labels[i] for i in range(g.n) if i not in vals]
    if missing:
        raise ValuesParseError(f"no value for vertices {', '.join(missing)}")
    return MorseFunction(tuple(vals[i] for i in range(g.n)))
