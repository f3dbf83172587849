"""Exact linear algebra over the rationals and prime fields.

Matrices act on row vectors from the right: ``x @ M``.  Row ``i`` of ``M(op)``
holds the coordinates of ``op(basis[i])`` in the codomain basis, so the
composite ``B o A`` has matrix ``M(A) @ M(B)``.  Kernels are left kernels
accordingly.

Storage is sparse (one dict per row); everything is exact, nothing is ever
rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class LinalgError(ValueError):
    pass


class StabilizationError(LinalgError):
    """Raised when a matrix power does not reach a fixpoint within the cap."""


# ---------------------------------------------------------------------------
# coefficient fields

class Rationals:
    """The field Q.  Integral values are kept as ``int`` for speed."""

    characteristic = 0
    name = "q"

    def __call__(self, x) -> int | Fraction:
        if isinstance(x, int):
            return x
        return self.reduce(Fraction(x))

    @staticmethod
    def reduce(x):
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inverse(self, x):
        return self.reduce(Fraction(1) / x)

    def to_fraction(self, x) -> Fraction:
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """Z/p for a prime p.  Elements are ints in ``range(p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise LinalgError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"zp:{p}"

    def __call__(self, x) -> int:
        p = self.characteristic
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise LinalgError(f"{x} has no image in Z/{p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    def reduce(self, x):
        return x % self.characteristic

    def inverse(self, x):
        return pow(x, -1, self.characteristic)

    def to_fraction(self, x) -> Fraction:
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = Rationals()


def field_from_spec(spec: str):
    """Parse a coefficient spec: ``q``, ``z`` (rationals for ranks) or ``zp:<p>``."""
    spec = spec.strip().lower()
    if spec in ("q", "z", "rationals", "integers"):
        return QQ
    if spec.startswith("zp:"):
        return PrimeField(int(spec[3:]))
    raise LinalgError(f"unknown coefficient spec {spec!r}")


# ---------------------------------------------------------------------------
# sparse row helpers

def _axpy(target: dict, coef, row: Mapping, field) -> None:
    """target += coef * row, dropping zeros."""
    red = field.reduce
    for j, a in row.items():
        v = red(target.get(j, 0) + coef * a)
        if v:
            target[j] = v
        else:
            target.pop(j, None)


def _scaled(row: Mapping, coef, field) -> dict:
    red = field.reduce
    out = {}
    for j, a in row.items():
        v = red(coef * a)
        if v:
            out[j] = v
    return out


class Matrix:
    """An immutable sparse matrix over a field."""

    __slots__ = ("nrows", "ncols", "field", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[Mapping] | None = None, field=QQ):
        if nrows < 0 or ncols < 0:
            raise LinalgError("negative dimension")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            self._rows = tuple({} for _ in range(nrows))
        else:
            built = []
            for row in rows:
                clean = {}
                for j, a in row.items():
                    if not 0 <= j < ncols:
                        raise LinalgError(f"column {j} out of range for {ncols} columns")
                    a = field(a)
                    if a:
                        clean[j] = a
                built.append(clean)
            if len(built) != nrows:
                raise LinalgError(f"expected {nrows} rows, got {len(built)}")
            self._rows = tuple(built)

    @classmethod
    def _wrap(cls, nrows, ncols, rows, field) -> Matrix:
        # trusted constructor: rows are already clean dicts
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.field, m._rows = nrows, ncols, field, tuple(rows)
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field=QQ, ncols: int | None = None) -> Matrix:
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise LinalgError("ragged matrix")
        return cls(len(data), ncols, ({j: a for j, a in enumerate(r) if a} for r in data), field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=QQ) -> Matrix:
        return cls._wrap(nrows, ncols, ({} for _ in range(nrows)), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> Matrix:
        return cls._wrap(n, n, ({i: 1} for i in range(n)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> dict:
        return dict(self._rows[i])

    def rows(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, 0)

    def to_dense(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self._rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    @property
    def T(self) -> Matrix:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, a in r.items():
                cols[j][i] = a
        return Matrix._wrap(self.ncols, self.nrows, cols, self.field)

    def _check_field(self, other: Matrix):
        if self.field != other.field:
            raise LinalgError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.ncols != other.nrows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self._rows:
            acc: dict = {}
            for k, a in r.items():
                _axpy(acc, a, other._rows[k], self.field)
            out.append(acc)
        return Matrix._wrap(self.nrows, other.ncols, out, self.field)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} + {other.shape}")
        out = []
        for r, s in zip(self._rows, other._rows):
            acc = dict(r)
            _axpy(acc, 1, s, self.field)
            out.append(acc)
        return Matrix._wrap(self.nrows, self.ncols, out, self.field)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._wrap(self.nrows, self.ncols, (_scaled(r, c, self.field) for r in self._rows), self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix._wrap(len(idx), self.ncols, (dict(self._rows[i]) for i in idx), self.field)

    def vecmul(self, vec: Mapping) -> dict:
        """Row vector (as a sparse dict) times this matrix."""
        acc: dict = {}
        for k, a in vec.items():
            _axpy(acc, a, self._rows[k], self.field)
        return acc

    def to_strings(self) -> list[list[str]]:
        """Row-major entries rendered as ``"p/q"`` strings (``"p"`` when integral)."""
        return [[str(Fraction(x)) for x in r] for r in self.to_dense()]

    def __repr__(self):
        return f"Matrix({self.to_dense()!r}, field={self.field!r})"


# ---------------------------------------------------------------------------
# elimination

def _echelon(rows: Sequence[Mapping], field, track: bool = False):
    """Incremental reduced row echelon form.

    Returns ``(pivots, dependencies)`` where ``pivots`` maps pivot column to
    the reduced row, and ``dependencies`` lists, for every input row that
    reduced to zero, the combination of input rows (dict index -> coef)
    that vanishes.  Dependencies are only collected when ``track`` is set.
    """
    pivots: dict[int, dict] = {}
    combos: dict[int, dict] = {}
    deps = []
    for i, row in enumerate(rows):
        r = {j: a for j, a in row.items() if a}
        c = {i: 1} if track else None
        for p in [j for j in r if j in pivots]:
            coef = r.get(p)
            if not coef:
                continue
            _axpy(r, -coef, pivots[p], field)
            if track:
                _axpy(c, -coef, combos[p], field)
        if not r:
            if track:
                deps.append(c)
            continue
        p = min(r)
        inv = field.inverse(r[p])
        r = _scaled(r, inv, field)
        if track:
            c = _scaled(c, inv, field)
        for q, other in pivots.items():
            coef = other.get(p)
            if coef:
                _axpy(other, -coef, r, field)
                if track:
                    _axpy(combos[q], -coef, c, field)
        pivots[p] = r
        if track:
            combos[p] = c
    return pivots, deps


def rank(m: Matrix) -> int:
    pivots, _ = _echelon(m._rows, m.field)
    return len(pivots)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    pivots, _ = _echelon(m._rows, m.field)
    cols = sorted(pivots)
    return Matrix._wrap(len(cols), m.ncols, (pivots[p] for p in cols), m.field), cols


class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its canonical RREF basis.

    Two equal subspaces have identical bases, so ``==`` is syntactic.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, basis: Matrix, pivots: list[int]):
        self.ambient_dim = basis.ncols
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Mapping], ambient_dim: int, field=QQ) -> Subspace:
        vecs = list(vectors)
        m = Matrix(len(vecs), ambient_dim, vecs, field)
        return cls(*rref(m))

    @classmethod
    def row_space(cls, m: Matrix) -> Subspace:
        return cls(*rref(m))

    @classmethod
    def zero(cls, ambient_dim: int, field=QQ) -> Subspace:
        return cls(Matrix.zeros(0, ambient_dim, field), [])

    @classmethod
    def full(cls, ambient_dim: int, field=QQ) -> Subspace:
        return cls(Matrix.identity(ambient_dim, field), list(range(ambient_dim)))

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[dict]:
        return self.basis.rows()

    def __contains__(self, vec: Mapping) -> bool:
        r = {j: self.field(a) for j, a in vec.items() if a}
        for k, p in enumerate(self.pivots):
            coef = r.get(p)
            if coef:
                _axpy(r, -coef, self.basis._rows[k], self.field)
        return not r

    def contains_space(self, other: Subspace) -> bool:
        return all(v in self for v in other.basis._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.to_dense()})"


def kernel(m: Matrix) -> Subspace:
    """Left kernel ``{x : x @ m = 0}``; its dimension is ``m.nrows - rank(m)``."""
    _, deps = _echelon(m._rows, m.field, track=True)
    return Subspace.span(deps, m.nrows, m.field)


def image(m: Matrix) -> Subspace:
    """Row space of ``m``, i.e. the image of ``x -> x @ m``."""
    return Subspace.row_space(m)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise LinalgError("field mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, a.field)
    # x A = y B  <=>  (x, y) in the left kernel of [A; -B]
    stacked = Matrix._wrap(a.dim + b.dim, a.ambient_dim,
                           list(a.basis._rows) + list((-b.basis)._rows), a.field)
    ker = kernel(stacked)
    k = a.dim
    vecs = []
    for sol in ker.basis._rows:
        x = {i: c for i, c in sol.items() if i < k}
        vecs.append(a.basis.vecmul(x))
    return Subspace.span(vecs, a.ambient_dim, a.field)


def fixed_space(m: Matrix) -> Subspace:
    """``{x : x @ m = x}``."""
    if m.nrows != m.ncols:
        raise LinalgError(f"fixed_space needs a square matrix, got {m.shape}")
    return kernel(m - Matrix.identity(m.nrows, m.field))


def matrix_power_stabilize(m: Matrix, cap: int) -> tuple[Matrix, int]:
    """Return ``(m**k, k)`` for the smallest ``k <= cap`` with ``m**k == m**(k+1)``."""
    if m.nrows != m.ncols:
        raise LinalgError(f"matrix_power_stabilize needs a square matrix, got {m.shape}")
    if cap < 1:
        raise LinalgError("cap must be positive")
    power = m
    for k in range(1, cap + 1):
        nxt = power @ m
        if nxt == power:
            return power, k
        power = nxt
    raise StabilizationError(f"no stabilization within {cap} steps")


# ---------------------------------------------------------------------------
# integers

def smith_decomposition(m: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(S, D, T)`` as dense integer lists with ``S @ m @ T == D``,
    ``S`` and ``T`` unimodular and ``D`` diagonal with ``d_1 | d_2 | ...``.
    """
    A = [[int(x) for x in row] for row in m]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    S = [[int(i == j) for j in range(nr)] for i in range(nr)]
    T = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for M in (A, T):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for M in (A, S):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (A, T):
            for row in M:
                row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder now sits in row/column t; move it to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, nr) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, nc) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            S[t] = [-a for a in S[t]]
        t += 1
    return S, A, T


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    _, D, _ = smith_decomposition(m)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def integer_left_kernel(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of ``{x in Z^r : x @ m = 0}`` (a saturated lattice)."""
    if not m:
        return []
    S, D, _ = smith_decomposition(m)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    return [list(row) for row in S[r:]]


def to_integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m.to_dense():
        fr = [Fraction(x) for x in row]
        if any(x.denominator != 1 for x in fr):
            raise LinalgError("matrix has non-integral entries")
        out.append([int(x) for x in fr])
    return out
