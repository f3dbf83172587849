"""Chain complexes, Betti numbers, and the direct and Morse pipelines.

The direct pipeline computes homology of the Omega complex of a digraph G.
The Morse pipeline works on the transitive closure: it builds the gradient
flow of the extended Morse function, stabilizes it, and takes the image of
Omega(G) under the stabilized flow as its chain complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .digraph import Digraph, transitive_closure
from .flow import FlowOperator, GradientField, InvarianceReport, check_omega_invariance, flow, gradient, stabilize
from .linalg import (QQ, Matrix, Rationals, Subspace, integer_left_kernel, intersect, rank,
                     smith_normal_form, to_integer_rows)
from .morse import MorseFunction, NotMorseError, critical_paths, extend_to_closure, morse_violation
from .paths import PathBasis, boundary_matrix, nonallowed_face_matrix, omega_basis, path_bases, vector_to_chain


class ClosednessError(RuntimeError):
    pass


class DisagreementError(RuntimeError):
    """Direct and Morse Betti numbers differ although Omega is V-invariant."""


def default_max_dim(g: Digraph) -> int:
    return max(0, min(g.n - 1, 6))


@dataclass
class ChainComplex:
    """Subspaces ``groups[n]`` of the coordinate spaces ``bases[n]`` with the
    ambient boundary matrices ``boundaries[n]`` (rows P_n, columns P_{n-1})."""

    bases: list[PathBasis]
    groups: list[Subspace]
    boundaries: list[Matrix]

    def __post_init__(self):
        for n in range(1, len(self.groups)):
            for v in self.groups[n].vectors():
                if self.boundaries[n].vecmul(v) not in self.groups[n - 1]:
                    raise ClosednessError(f"boundary leaves the chain group in dimension {n}")

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def restricted(self, n: int) -> Matrix:
        """Boundary of the basis chains of ``groups[n]`` in ambient coordinates."""
        return self.groups[n].basis @ self.boundaries[n]

    def dims(self) -> list[int]:
        return [s.dim for s in self.groups]

    def ranks(self) -> list[int]:
        return [0] + [rank(self.restricted(n)) for n in range(1, len(self.groups))]

    def betti(self, upto: int | None = None) -> list[int]:
        if upto is None:
            upto = self.top - 1
        d, r = self.dims(), self.ranks() + [0]
        return [d[n] - r[n] - r[n + 1] for n in range(upto + 1)]

    def basis_strings(self, g: Digraph, upto: int | None = None) -> list[list[str]]:
        if upto is None:
            upto = self.top
        return [[vector_to_chain(v, self.bases[n]).format(g) for v in self.groups[n].vectors()]
                for n in range(upto + 1)]


@dataclass
class ChainComplexReport:
    mode: str
    max_dim: int
    coeffs: str
    dims: list[int]
    ranks: list[int]
    betti: list[int]
    morse_dims: list[int] | None = None
    morse_ranks: list[int] | None = None
    morse_betti: list[int] | None = None
    invariance: bool | None = None
    agreement: bool | None = None
    morse_basis: list[list[str]] | None = None
    warnings: list[str] = dc_field(default_factory=list)
    torsion: list[list[int]] | None = None

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "max_dim": self.max_dim,
            "coeffs": self.coeffs,
            "dims": self.dims,
            "ranks": self.ranks,
            "betti": self.betti,
            "morse_dims": self.morse_dims,
            "morse_ranks": self.morse_ranks,
            "morse_betti": self.morse_betti,
            "invariance": self.invariance,
            "agreement": self.agreement,
            "morse_basis": self.morse_basis,
            "warnings": list(self.warnings),
            "torsion": self.torsion,
        }


def _coeff_name(field, integer: bool) -> str:
    if integer:
        return "z"
    if isinstance(field, Rationals):
        return "q"
    return field.name


def omega_complex(g: Digraph, top: int, field=QQ, bases: list[PathBasis] | None = None) -> ChainComplex:
    if bases is None or len(bases) < top + 1:
        bases = path_bases(g, top)
    groups = [omega_basis(g, n, field, bases) for n in range(top + 1)]
    ds = [boundary_matrix(g, n, field, bases) for n in range(top + 1)]
    return ChainComplex(bases[:top + 1], groups, ds)


def integer_torsion(g: Digraph, max_dim: int, bases: list[PathBasis] | None = None) -> list[list[int]]:
    """Torsion coefficients of H_n(G; Z) for ``n = 0..max_dim``.

    Omega_n(Z) is saturated in Z^{P_n}, so the torsion of Omega_n / B_n equals
    that of Z^{P_n} / B_n, read off the Smith form of a Z-basis of B_n.
    """
    if bases is None or len(bases) < max_dim + 2:
        bases = path_bases(g, max_dim + 1)
    out = []
    for n in range(max_dim + 1):
        dom, cod = bases[n + 1], bases[n]
        if not len(dom):
            out.append([])
            continue
        m, _ = nonallowed_face_matrix(dom, cod)
        zbasis = integer_left_kernel(to_integer_rows(m)) if m.ncols else \
            [[int(i == j) for j in range(len(dom))] for i in range(len(dom))]
        if not zbasis:
            out.append([])
            continue
        d = to_integer_rows(boundary_matrix(g, n + 1, QQ, bases))
        img = [[sum(a * d[i][j] for i, a in enumerate(row) if a) for j in range(len(cod))] for row in zbasis]
        out.append([x for x in smith_normal_form(img) if x > 1])
    return out


def direct_homology(g: Digraph, max_dim: int | None = None, field=QQ, integer: bool = False) -> ChainComplexReport:
    """Betti numbers of the Omega complex for dimensions ``0..max_dim``."""
    N = default_max_dim(g) if max_dim is None else max_dim
    bases = path_bases(g, N + 1)
    cx = omega_complex(g, N + 1, field, bases)
    rep = ChainComplexReport("direct", N, _coeff_name(field, integer), cx.dims(), cx.ranks(), cx.betti(N))
    if integer:
        rep.torsion = integer_torsion(g, N, bases)
    return rep


@dataclass
class MorseComplex:
    """Everything the Morse pipeline computes, kept for inspection."""

    g: Digraph
    gbar: Digraph
    f: MorseFunction
    max_dim: int
    grad: GradientField
    flow: FlowOperator
    omega: list[Subspace]            # Omega_n(G) in P_n(G) coordinates, n = 0..N+2
    gbases: list[PathBasis]          # P_n(G)
    complex: ChainComplex            # Phi^inf(Omega_n(G)) in P_n(closure) coordinates
    critical: list[list[tuple]]      # Crit_n(closure)
    critical_image: list[Subspace]   # Phi^inf(Crit_n(closure))
    literal: list[Subspace]          # Omega_n(G) intersected with Phi^inf(Crit_n)
    invariance: InvarianceReport
    warnings: list[str]

    @property
    def groups(self) -> list[Subspace]:
        return self.complex.groups

    @property
    def bases(self) -> list[PathBasis]:
        return self.complex.bases


def embed(vec: dict, src: PathBasis, dst: PathBasis) -> dict:
    """Re-index coordinates from a path basis of G into one of a supergraph."""
    return {dst.index[src.paths[i]]: a for i, a in vec.items()}


def morse_complex(g: Digraph, f: MorseFunction, max_dim: int | None = None, field=QQ) -> MorseComplex:
    """Reduced complex of a Morse function satisfying Condition (*).

    The chain group in dimension n is the image of Omega_n(G) under the
    stabilized flow of the closure.  Whenever Omega(G) is invariant under the
    closure gradient this equals Omega_n(G) intersected with the image of the
    critical paths; both are computed and any difference is reported.
    """
    N = default_max_dim(g) if max_dim is None else max_dim
    bad = morse_violation(g, f)
    if bad is not None:
        raise NotMorseError(bad)
    fbar = extend_to_closure(g, f)
    gbar = transitive_closure(g)
    top = N + 1
    cbases = path_bases(gbar, top + 1)
    V = gradient(gbar, fbar, top, cbases, field)
    fl = stabilize(flow(V))
    gbases = path_bases(g, top + 1)
    omega = [omega_basis(g, n, field, gbases) for n in range(top + 2)]

    groups, crit, cimg, literal = [], [], [], []
    warnings = []
    for n in range(top + 1):
        inf = fl.infinity(n)
        amb = len(cbases[n])
        om = [embed(v, gbases[n], cbases[n]) for v in omega[n].vectors()]
        groups.append(Subspace.span((inf.vecmul(v) for v in om), amb, field))
        cs = critical_paths(gbar, fbar, n, cbases[n])
        crit.append(cs)
        cimg.append(Subspace.span((inf.row(cbases[n].index[p]) for p in cs), amb, field))
        literal.append(intersect(Subspace.span(om, amb, field), cimg[-1]))
        if literal[-1] != groups[-1] and n <= N:
            warnings.append(f"dimension {n}: Omega(G) meets Phi^inf(Crit) in dimension {literal[-1].dim}, "
                            f"Phi^inf(Omega(G)) has dimension {groups[-1].dim}")
    cx = ChainComplex(cbases[:top + 1], groups, fl.boundaries[:top + 1])
    inv = check_omega_invariance(g, V, top, omega, gbases)
    if not inv.holds:
        w = inv.witnesses[0]
        warnings.insert(0, f"Omega(G) is not invariant under the closure gradient: V({w.chain.format(gbar)}) = "
                           f"{w.image.format(gbar)}; the Morse complex may not compute the path homology")
    return MorseComplex(g, gbar, fbar, N, V, fl, omega, gbases, cx, crit, cimg, literal, inv, warnings)


def morse_homology(g: Digraph, f: MorseFunction, max_dim: int | None = None, field=QQ) -> ChainComplexReport:
    mc = morse_complex(g, f, max_dim, field)
    cx = mc.complex
    N = mc.max_dim
    return ChainComplexReport("morse", N, _coeff_name(field, False), cx.dims(), cx.ranks(), cx.betti(N),
                              invariance=mc.invariance.holds,
                              morse_basis=cx.basis_strings(mc.gbar, N),
                              warnings=list(mc.warnings))


def compare(g: Digraph, f: MorseFunction, max_dim: int | None = None, field=QQ,
            integer: bool = False) -> ChainComplexReport:
    """Run both pipelines; disagreement under invariance is a fatal error."""
    N = default_max_dim(g) if max_dim is None else max_dim
    mc = morse_complex(g, f, N, field)
    d = direct_homology(g, N, field, integer)
    m_betti = mc.complex.betti(N)
    agree = d.betti == m_betti
    if mc.invariance.holds and not agree:
        raise DisagreementError(f"direct Betti {d.betti} but Morse Betti {m_betti} with invariance holding")
    warnings = list(mc.warnings)
    if not agree:
        warnings.append(f"direct Betti {d.betti} differ from Morse Betti {m_betti}")
    if integer:
        warnings.append("torsion is reported for the direct pipeline only")
    return ChainComplexReport("both", N, d.coeffs, d.dims, d.ranks, d.betti,
                              morse_dims=mc.complex.dims(), morse_ranks=mc.complex.ranks(), morse_betti=m_betti,
                              invariance=mc.invariance.holds, agreement=agree,
                              morse_basis=mc.complex.basis_strings(mc.gbar, N),
                              warnings=warnings, torsion=d.torsion)
