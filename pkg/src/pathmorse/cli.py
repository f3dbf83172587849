"""Command-line interface.

Exit status: 0 on success, 1 on domain errors (not Morse, Condition (*)
fails, a vertex on a cycle), 2 on I/O and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench as benchmod
from .digraph import DigraphError, ParseError, parse_digraph, transitive_closure
from .flow import FlowError, flow, flow_invariant_space, gradient, stabilize
from .homology import (DisagreementError, compare, default_max_dim, direct_homology, morse_homology,
                       omega_complex)
from .linalg import LinalgError, field_from_spec
from .morse import (ConditionStarError, MorseError, NotMorseError, ValuesParseError, condition_star_witness,
                    extend_to_closure, morse_violation, parse_values, single_zero_morse)
from .paths import path_bases, vector_to_chain


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args):
    return parse_digraph(_read(args.graph))


def _max_dim(args, g) -> int:
    n = getattr(args, "max_dim", None)
    if n is None:
        return default_max_dim(g)
    if n < 0:
        raise UsageError("--max-dim must be non-negative")
    return n


def _field(args):
    spec = getattr(args, "coeffs", None) or "q"
    try:
        return field_from_spec(spec), spec == "z"
    except LinalgError as exc:
        raise UsageError(str(exc)) from None


def _values(args, g):
    if getattr(args, "auto_zero", False):
        return single_zero_morse(g, benchmod.auto_zero(g))
    if not getattr(args, "values", None):
        raise UsageError("--values is required")
    return parse_values(_read(args.values), g)


def _matrix_json(m, rows, cols):
    return {"rows": rows, "cols": cols, "entries": m.to_strings()}


def _fmt_vals(g, f):
    return {g.labels[i]: str(Fraction(x)) for i, x in enumerate(f.values)}


# -- subcommands -------------------------------------------------------------

def cmd_closure(args):
    g = _graph(args)
    gbar = transitive_closure(g)
    added = sorted(gbar.edges - g.edges)
    doc = {"vertices": list(g.labels),
           "edges": [[g.labels[u], g.labels[v]] for u, v in gbar.edge_list()],
           "added": [[g.labels[u], g.labels[v]] for u, v in added]}
    text = g.to_text() + "".join(f"{g.labels[u]} -> {g.labels[v]}\n" for u, v in added)
    return doc, text


def cmd_omega(args):
    g = _graph(args)
    field, _ = _field(args)
    N = _max_dim(args, g)
    cx = omega_complex(g, N, field)
    doc = {"max_dim": N, "dims": cx.dims(), "allowed": [len(b) for b in cx.bases],
           "basis": cx.basis_strings(g)}
    lines = []
    for n, gens in enumerate(doc["basis"]):
        lines.append(f"Omega_{n}: dim {len(gens)} (allowed paths {doc['allowed'][n]})")
        lines += [f"  {c}" for c in gens]
    return doc, "\n".join(lines) + "\n"


def cmd_morse_check(args):
    g = _graph(args)
    f = _values(args, g)
    bad = morse_violation(g, f)
    if bad is not None:
        raise NotMorseError(bad)
    w = condition_star_witness(g, f)
    doc = {"morse": True, "zeros": [g.labels[z] for z in sorted(f.zero_set)],
           "condition_star": w is None,
           "condition_star_witness": None if w is None else
           {"vertex": g.labels[w.vertex], "paths": [g.label_path(p) for p in w.paths]}}
    text = "Morse: yes\n" + ("Condition (*): yes\n" if w is None else f"Condition (*): no, {w.message}\n")
    return doc, text


def cmd_extend(args):
    g = _graph(args)
    f = _values(args, g)
    fbar = extend_to_closure(g, f)
    gbar = transitive_closure(g)
    doc = {"values": _fmt_vals(gbar, fbar),
           "closure_edges": [[g.labels[u], g.labels[v]] for u, v in gbar.edge_list()]}
    text = "".join(f"{k} {v}\n" for k, v in doc["values"].items())
    return doc, text


def cmd_flow(args):
    g = _graph(args)
    f = _values(args, g)
    field, _ = _field(args)
    N = _max_dim(args, g)
    fbar = extend_to_closure(g, f)
    gbar = transitive_closure(g)
    bases = path_bases(gbar, N + 1)
    V = gradient(gbar, fbar, N, bases, field)
    fl = stabilize(flow(V))
    dims = []
    for n in range(N + 1):
        lab = bases[n].labels(gbar)
        fixed = flow_invariant_space(fl, n)
        dims.append({
            "dim": n,
            "basis": lab,
            "V": _matrix_json(V.matrices[n], lab, bases[n + 1].labels(gbar)),
            "boundary": _matrix_json(fl.boundaries[n], lab, bases[n - 1].labels(gbar) if n else []),
            "phi": _matrix_json(fl.matrices[n], lab, lab),
            "phi_inf": _matrix_json(fl.stable[n], lab, lab),
            "exponent": fl.exponents[n],
            "fixed_space": [vector_to_chain(v, bases[n]).format(gbar) for v in fixed.vectors()],
        })
    doc = {"max_dim": N, "dims": dims}
    lines = []
    for d in dims:
        lines.append(f"dimension {d['dim']}: Phi stabilizes at exponent {d['exponent']}")
        lines += [f"  fixed: {c}" for c in d["fixed_space"]]
    return doc, "\n".join(lines) + "\n"


def _betti_text(rep):
    lines = [f"mode: {rep.mode}", f"betti: {rep.betti}"]
    if rep.morse_betti is not None:
        lines.append(f"morse betti: {rep.morse_betti}")
    if rep.invariance is not None:
        lines.append(f"invariance: {str(rep.invariance).lower()}")
    if rep.agreement is not None:
        lines.append(f"agreement: {str(rep.agreement).lower()}")
    if rep.torsion:
        lines.append(f"torsion: {rep.torsion}")
    if rep.morse_basis is not None:
        for n, gens in enumerate(rep.morse_basis):
            lines.append(f"M_{n}: " + (", ".join(gens) if gens else "0"))
    lines += [f"warning: {w}" for w in rep.warnings]
    return "\n".join(lines) + "\n"


def cmd_homology(args):
    g = _graph(args)
    field, integer = _field(args)
    N = _max_dim(args, g)
    mode = args.mode or "both"
    if mode == "direct":
        rep = direct_homology(g, N, field, integer)
    else:
        f = _values(args, g)
        if mode == "morse":
            if integer:
                raise UsageError("integer coefficients are supported by the direct pipeline only")
            rep = morse_homology(g, f, N, field)
        else:
            rep = compare(g, f, N, field, integer)
    return rep.to_json(), _betti_text(rep)


def cmd_compare(args):
    g = _graph(args)
    field, integer = _field(args)
    rep = compare(g, _values(args, g), _max_dim(args, g), field, integer)
    return rep.to_json(), _betti_text(rep)


def _parse_sizes(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            r = range(int(a), int(b) + 1)
        else:
            r = range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}; expected a..b") from None
    if not len(r) or r.start < 1:
        raise UsageError(f"empty or invalid --sizes {text!r}")
    return r


def cmd_bench(args):
    sizes = _parse_sizes(args.sizes)
    try:
        density = Fraction(args.density)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --density {args.density!r}") from None
    if not 0 <= density <= 1:
        raise UsageError("--density must lie in [0, 1]")
    recs = benchmod.bench(sizes, density, args.trials, args.seed, getattr(args, "max_dim", None), args.workers)
    summary = benchmod.summarize(recs)
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(benchmod.to_csv(recs))
        except OSError as exc:
            raise UsageError(f"cannot write {args.csv}: {exc.strerror}") from None
    doc = {"records": [json.loads(line) for line in benchmod.to_json_lines(recs).splitlines()],
           "summary": summary}
    text = benchmod.to_json_lines(recs) + json.dumps({"summary": summary}, sort_keys=True) + "\n"
    return doc, text


# -- parser ------------------------------------------------------------------

def _globals(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=d if suppress else False,
                   help="emit one JSON document")
    p.add_argument("--coeffs", default=d if suppress else "q", help="q, z or zp:<p>")
    p.add_argument("--max-dim", type=int, default=d, help="top homology dimension")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathmorse", description=__doc__.splitlines()[0])
    _globals(ap, False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, graph=True, values=False, help=None):
        p = sub.add_parser(name, help=help)
        _globals(p, True)
        if graph:
            p.add_argument("graph", help="edge-list file")
        if values:
            p.add_argument("--values", help="vertex-value file")
            p.add_argument("--auto-zero", action="store_true",
                           help="single zero at the highest-degree vertex off every cycle")
        p.set_defaults(fn=fn)
        return p

    add("closure", cmd_closure, help="transitive closure")
    add("omega", cmd_omega, help="Omega bases")
    add("morse-check", cmd_morse_check, values=True, help="validate a Morse function")
    add("extend", cmd_extend, values=True, help="extend to the closure")
    add("flow", cmd_flow, values=True, help="gradient and flow matrices")
    p = add("homology", cmd_homology, values=True, help="path homology")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--morse", dest="mode", action="store_const", const="morse")
    m.add_argument("--direct", dest="mode", action="store_const", const="direct")
    m.add_argument("--both", dest="mode", action="store_const", const="both")
    add("compare", cmd_compare, values=True, help="direct vs Morse homology")
    p = add("bench", cmd_bench, graph=False, help="random DAG benchmark")
    p.add_argument("--sizes", default="4..8")
    p.add_argument("--density", default="0.4")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    return ap


DOMAIN_ERRORS = (MorseError, DigraphError, FlowError, DisagreementError, LinalgError)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = sys.stdout
    try:
        doc, text = args.fn(args)
        code, reason = 0, None
    except (UsageError, ParseError, ValuesParseError) as exc:
        code, reason, doc = 2, str(exc), None
    except (NotMorseError, ConditionStarError) as exc:
        code, reason, doc = 1, str(exc), None
    except DOMAIN_ERRORS as exc:
        code, reason, doc = 1, str(exc), None
    if args.json:
        payload = {"ok": code == 0, "command": args.command}
        if code:
            payload.update({"exit": code, "reason": reason})
        else:
            payload["result"] = doc
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif code:
        sys.stderr.write(f"error: {reason}\n")
    else:
        out.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
