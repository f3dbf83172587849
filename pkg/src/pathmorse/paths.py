"""Elementary paths, chains, the boundary operator and the Omega spaces.

A path is a tuple of vertex indices; an n-path has n + 1 entries.  Faces are
taken in the full space of elementary paths, so a face such as ``aa``
(consecutive repeat) is a genuine, non-allowed basis element.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .digraph import Digraph
from .linalg import QQ, Matrix, Subspace, kernel

Path = tuple


def faces(path: Path) -> Iterator[tuple[int, Path]]:
    """Yield ``(i, d_i path)`` for every vertex deletion."""
    for i in range(len(path)):
        yield i, path[:i] + path[i + 1:]


def is_allowed(g: Digraph, path: Path) -> bool:
    if not path:
        return False
    for v in path:
        g.index(v)
    return all((path[i], path[i + 1]) in g.edges for i in range(len(path) - 1))


@dataclass(frozen=True)
class PathBasis:
    """The allowed n-paths of a digraph in lexicographic order."""

    dim: int
    paths: tuple[Path, ...]
    index: dict = dc_field(compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, dim: int, paths: Iterable[Path]) -> PathBasis:
        ps = tuple(sorted(paths))
        return cls(dim, ps, {p: i for i, p in enumerate(ps)})

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __contains__(self, p):
        return p in self.index

    def labels(self, g: Digraph) -> list[str]:
        return [g.label_path(p) for p in self.paths]


def enumerate_allowed(g: Digraph, n: int) -> PathBasis:
    """All allowed elementary n-paths, by depth-first extension along edges."""
    if n < 0:
        return PathBasis.of(n, [])
    out = []

    def extend(path):
        if len(path) == n + 1:
            out.append(path)
            return
        for w in g.succ[path[-1]]:
            extend(path + (w,))

    for v in range(g.n):
        extend((v,))
    return PathBasis.of(n, out)


def path_bases(g: Digraph, top: int) -> list[PathBasis]:
    """Bases for dimensions ``0..top``, built incrementally."""
    bases = [PathBasis.of(0, [(v,) for v in range(g.n)])]
    for n in range(1, top + 1):
        prev = bases[-1].paths
        bases.append(PathBasis.of(n, (p + (w,) for p in prev for w in g.succ[p[-1]])))
    return bases


class Chain:
    """A finite formal combination of equal-length paths with exact coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, terms: Mapping[Path, object] | None = None, dim: int | None = None):
        clean = {}
        for p, c in (terms or {}).items():
            c = QQ(c)
            if c:
                clean[tuple(p)] = c
        dims = {len(p) - 1 for p in clean}
        if len(dims) > 1:
            raise ValueError("all paths in a chain must have the same dimension")
        if dim is None:
            dim = dims.pop() if dims else None
        elif dims and dims != {dim}:
            raise ValueError(f"chain terms do not have dimension {dim}")
        self.dim = dim
        self.terms = clean

    @classmethod
    def path(cls, p: Path, coef=1) -> Chain:
        return cls({tuple(p): coef})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Chain) -> Chain:
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return Chain(out, self.dim if self.dim is not None else other.dim)

    def __neg__(self) -> Chain:
        return Chain({p: -c for p, c in self.terms.items()}, self.dim)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __rmul__(self, c) -> Chain:
        return Chain({p: c * a for p, a in self.terms.items()}, self.dim)

    def coefficient(self, p: Path):
        return self.terms.get(tuple(p), 0)

    def support(self) -> list[Path]:
        return sorted(self.terms)

    def format(self, g: Digraph | None = None) -> str:
        """Render as a signed sum, e.g. ``v0v2 - v0v1``."""
        if not self.terms:
            return "0"
        out = []
        for p in self.support():
            c = Fraction(self.terms[p])
            name = g.label_path(p) if g is not None else "".join(f"[{v}]" for v in p)
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)

    def __repr__(self):
        return f"Chain({self.format()})"


def boundary(c: Chain) -> Chain:
    """Alternating sum of all face deletions (faces with repeats included)."""
    if c.dim is None or c.dim <= 0:
        return Chain({}, None if c.dim is None else c.dim - 1)
    out: dict = {}
    for p, a in c.terms.items():
        for i, f in faces(p):
            out[f] = out.get(f, 0) + (a if i % 2 == 0 else -a)
    return Chain(out, c.dim - 1)


def chain_to_vector(c: Chain, basis: PathBasis, field=QQ) -> dict:
    """Coordinates of ``c`` in ``basis``; raises if ``c`` leaves the basis."""
    vec = {}
    for p, a in c.terms.items():
        if p not in basis.index:
            raise ValueError(f"path {p} is not in the basis")
        a = field(a)
        if a:
            vec[basis.index[p]] = a
    return vec


def vector_to_chain(vec: Mapping, basis: PathBasis) -> Chain:
    return Chain({basis.paths[i]: Fraction(a) for i, a in vec.items()}, basis.dim)


def _face_rows(basis: PathBasis, allowed: PathBasis):
    """Split each boundary into allowed-face and non-allowed-face parts."""
    inside, outside = [], []
    for p in basis.paths:
        ins: dict = {}
        outs: dict = {}
        for i, f in faces(p):
            s = 1 if i % 2 == 0 else -1
            j = allowed.index.get(f)
            if j is not None:
                ins[j] = ins.get(j, 0) + s
            else:
                outs[f] = outs.get(f, 0) + s
        inside.append(ins)
        outside.append(outs)
    return inside, outside


def boundary_matrix(g: Digraph, n: int, field=QQ, bases: list[PathBasis] | None = None) -> Matrix:
    """Matrix of the boundary from allowed n-paths to allowed (n-1)-paths.

    One row per domain path.  Non-allowed faces are dropped, so this is the
    true boundary only on chains whose boundary is allowed (e.g. on Omega),
    and the regularised boundary on a transitive digraph.
    """
    dom = bases[n] if bases is not None else enumerate_allowed(g, n)
    if n <= 0:
        return Matrix.zeros(len(dom), 0, field)
    cod = bases[n - 1] if bases is not None else enumerate_allowed(g, n - 1)
    inside, _ = _face_rows(dom, cod)
    return Matrix(len(dom), len(cod), inside, field)


def nonallowed_face_matrix(dom: PathBasis, cod: PathBasis, field=QQ) -> tuple[Matrix, list[Path]]:
    """Coefficients of each domain boundary on faces outside ``cod``."""
    _, outside = _face_rows(dom, cod)
    cols = sorted({f for row in outside for f in row})
    idx = {f: j for j, f in enumerate(cols)}
    rows = [{idx[f]: a for f, a in row.items() if a} for row in outside]
    return Matrix(len(dom), len(cols), rows, field), cols


def omega_basis(g: Digraph, n: int, field=QQ, bases: list[PathBasis] | None = None) -> Subspace:
    """Omega_n: allowed n-chains whose boundary is allowed, in allowed-path coordinates."""
    dom = bases[n] if bases is not None else enumerate_allowed(g, n)
    if n == 0:
        return Subspace.full(len(dom), field)
    cod = bases[n - 1] if bases is not None else enumerate_allowed(g, n - 1)
    m, _ = nonallowed_face_matrix(dom, cod, field)
    return kernel(m)
