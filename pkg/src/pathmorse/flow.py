"""Gradient vector field of a Morse function and the flow Phi = Id + dV + Vd.

Matrices follow the row convention of :mod:`pathmorse.linalg`: row ``i`` of
``M(op)`` holds the coordinates of ``op(basis[i])``, so the matrix of a
composite ``B after A`` is ``M(A) @ M(B)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace

from .digraph import Digraph, is_transitive
from .linalg import QQ, Matrix, Subspace, fixed_space, matrix_power_stabilize
from .morse import MorseFunction, NotMorseError, morse_violation
from .paths import Chain, PathBasis, boundary_matrix, chain_to_vector, faces, omega_basis, path_bases, vector_to_chain


class FlowError(RuntimeError):
    """Internal consistency failure (would indicate a bug, not bad input)."""


def inner_boundary(gamma, alpha) -> int:
    """``<d gamma, alpha>``: signed count of the faces of gamma equal to alpha."""
    return sum(1 if i % 2 == 0 else -1 for i, q in faces(tuple(gamma)) if q == tuple(alpha))


@dataclass
class GradientField:
    """``V_n`` for ``n = 0..top`` as matrices from P_n to P_{n+1}.

    ``pairs`` maps each non-critical-upward path to ``(sign, coface)``.
    """

    g: Digraph
    f: MorseFunction
    bases: list[PathBasis]
    matrices: list[Matrix]
    pairs: dict = dc_field(repr=False)

    @property
    def top(self) -> int:
        return len(self.matrices) - 1

    def apply(self, c: Chain) -> Chain:
        out: dict = {}
        for p, a in c.terms.items():
            hit = self.pairs.get(p)
            if hit is not None:
                s, q = hit
                out[q] = out.get(q, 0) + s * a
        return Chain(out, None if c.dim is None else c.dim + 1)

    def image_paths(self, n: int) -> set:
        """(n+1)-paths that are ``V`` of some n-path."""
        return {q for p, (_, q) in self.pairs.items() if len(p) == n + 1}


def gradient(g: Digraph, f: MorseFunction, top: int, bases: list[PathBasis] | None = None,
             field=QQ) -> GradientField:
    """grad f on ``g``: each allowed path maps to minus the sign of itself in
    the boundary of its unique equal-value coface, or to zero."""
    bad = morse_violation(g, f)
    if bad is not None:
        raise NotMorseError(bad)
    if bases is None or len(bases) < top + 2:
        bases = path_bases(g, top + 1)
    zeros = sorted(f.zero_set)
    pairs: dict = {}
    mats = []
    for n in range(top + 1):
        up = bases[n + 1]
        rows = []
        for p in bases[n].paths:
            hits = []
            for i in range(n + 2):
                for z in zeros:
                    q = p[:i] + (z,) + p[i:]
                    if q in up.index:
                        hits.append((i, q))
            if len(hits) > 1:
                raise FlowError(f"{g.label_path(p)} has {len(hits)} equal-value cofaces")
            if hits:
                i, q = hits[0]
                s = -1 if i % 2 == 0 else 1
                pairs[p] = (s, q)
                rows.append({up.index[q]: field(s)})
            else:
                rows.append({})
        mats.append(Matrix(len(bases[n]), len(up), rows, field))
    return GradientField(g, f, bases[:top + 2], mats, pairs)


@dataclass
class FlowOperator:
    """``M(Phi_n)`` for ``n = 0..top``, with optional stabilized powers."""

    grad: GradientField
    boundaries: list[Matrix]  # boundaries[n] = M(d_n), n = 0..top+1
    matrices: list[Matrix]
    stable: list[Matrix] | None = None
    exponents: list[int] | None = None

    @property
    def top(self) -> int:
        return len(self.matrices) - 1

    @property
    def bases(self) -> list[PathBasis]:
        return self.grad.bases

    def infinity(self, n: int) -> Matrix:
        if self.stable is None:
            raise FlowError("flow has not been stabilized")
        return self.stable[n]

    def apply(self, c: Chain, power: str = "one") -> Chain:
        n = c.dim
        m = self.matrices[n] if power == "one" else self.infinity(n)
        basis = self.bases[n]
        return vector_to_chain(m.vecmul(chain_to_vector(c, basis, m.field)), basis)


def flow(V: GradientField) -> FlowOperator:
    """Assemble ``M(Phi_n) = E + M(d_n) M(V_{n-1}) + M(V_n) M(d_{n+1})``.

    The allowed paths form a chain complex only on a transitive digraph, so
    ``V`` must have been built on one (normally a transitive closure).
    """
    g, bases = V.g, V.bases
    if not is_transitive(g):
        raise FlowError("the flow needs a transitive digraph; build the gradient on the closure")
    field = V.matrices[0].field if V.matrices else QQ
    top = V.top
    ds = [boundary_matrix(g, n, field, bases) for n in range(top + 2)]
    mats = []
    for n in range(top + 1):
        m = Matrix.identity(len(bases[n]), field) + V.matrices[n] @ ds[n + 1]
        if n > 0:
            m = m + ds[n] @ V.matrices[n - 1]
        mats.append(m)
    for n in range(1, top + 1):
        # d after Phi equals Phi after d
        if mats[n] @ ds[n] != ds[n] @ mats[n - 1]:
            raise FlowError(f"flow does not commute with the boundary in dimension {n}")
    return FlowOperator(V, ds, mats)


def stabilize(fl: FlowOperator, cap: int | None = None) -> FlowOperator:
    """Per-dimension ``Phi^infinity``; default cap is ``dim P_n + 1``."""
    stable, exps = [], []
    for n, m in enumerate(fl.matrices):
        c = cap if cap is not None else len(fl.bases[n]) + 1
        s, k = matrix_power_stabilize(m, c)
        stable.append(s)
        exps.append(k)
    return replace(fl, stable=stable, exponents=exps)


def flow_invariant_space(fl: FlowOperator, n: int) -> Subspace:
    """Chains fixed by Phi in dimension n."""
    return fixed_space(fl.matrices[n])


@dataclass(frozen=True)
class InvarianceWitness:
    dim: int
    chain: Chain
    image: Chain
    reason: str


@dataclass
class InvarianceReport:
    holds: bool
    witnesses: list[InvarianceWitness]
    checked_through: int


def check_omega_invariance(g: Digraph, V: GradientField, top: int | None = None,
                           omega: list[Subspace] | None = None,
                           gbases: list[PathBasis] | None = None) -> InvarianceReport:
    """Test ``V(Omega_n(g)) <= Omega_{n+1}(g)`` on every Omega basis chain.

    ``V`` lives on a supergraph of ``g`` (normally the closure).  Every
    failing basis chain is reported, in dimension order.
    """
    if top is None:
        top = V.top
    top = min(top, V.top)
    field = V.matrices[0].field if V.matrices else QQ
    if gbases is None or len(gbases) < top + 2:
        gbases = path_bases(g, top + 1)
    if omega is None or len(omega) < top + 2:
        omega = [omega_basis(g, n, field, gbases) for n in range(top + 2)]
    wits = []
    for n in range(top + 1):
        for vec in omega[n].vectors():
            c = vector_to_chain(vec, gbases[n])
            img = V.apply(c)
            outside = [p for p in img.support() if p not in gbases[n + 1].index]
            if outside:
                wits.append(InvarianceWitness(n, c, img, f"{g.label_path(outside[0])} is not allowed"))
                continue
            if chain_to_vector(img, gbases[n + 1], field) not in omega[n + 1]:
                wits.append(InvarianceWitness(n, c, img, "boundary leaves the allowed paths"))
    return InvarianceReport(not wits, wits, top)
