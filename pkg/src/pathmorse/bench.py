"""Benchmark harness: random DAGs, automatic zero choice, both pipelines."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .digraph import Digraph, DigraphError, degree, on_directed_cycle, transitive_closure
from .homology import DisagreementError, default_max_dim, direct_homology, morse_complex
from .morse import MorseFunction, single_zero_morse


def auto_zero(g: Digraph) -> int:
    """Vertex off every directed cycle with the largest degree in the closure."""
    gbar = transitive_closure(g)
    best = None
    for v in range(g.n):
        if on_directed_cycle(g, v):
            continue
        d = degree(gbar, v)
        if best is None or d > best[0]:
            best = (d, v)
    if best is None:
        raise DigraphError("every vertex lies on a directed cycle")
    return best[1]


def generate_random_dag(n: int, density, seed) -> Digraph:
    """Each pair ``i < j`` of a random vertex order becomes an edge with probability ``density``."""
    rng = random.Random(seed)
    density = Fraction(density)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for a in range(n):
        for b in range(a + 1, n):
            if density >= 1 or (density > 0 and rng.random() < density):
                edges.add((order[a], order[b]))
    return Digraph(tuple(f"v{i}" for i in range(n)), frozenset(edges))


@dataclass
class BenchRecord:
    trial: int
    seed: int
    vertices: int
    edges: int
    closure_edges: int
    zero: str
    omega_dims: list[int]
    morse_dims: list[int]
    direct_seconds: float
    morse_seconds: float
    invariance: bool | None
    agreement: bool | None
    error: str | None = None

    @property
    def omega_total(self) -> int:
        return sum(self.omega_dims)

    @property
    def morse_total(self) -> int:
        return sum(self.morse_dims)


CSV_COLUMNS = ["trial", "seed", "vertices", "edges", "closure_edges", "zero", "omega_dims", "morse_dims",
               "omega_total", "morse_total", "direct_seconds", "morse_seconds", "invariance", "agreement", "error"]


def random_positive_values(g: Digraph, z: int, seed) -> dict:
    """Distinct small positive rationals (quarters) for every vertex except ``z``."""
    rng = random.Random(seed)
    pool = rng.sample(range(1, 4 * g.n + 1), g.n)
    return {i: Fraction(k, 4) for i, k in enumerate(pool) if i != z}


def run_instance(g: Digraph, trial: int = 0, seed: int = 0, max_dim: int | None = None,
                 f: MorseFunction | None = None) -> BenchRecord:
    """Time both pipelines on one digraph.

    Without ``f`` the function has a single zero at :func:`auto_zero` and
    random positive values seeded by ``seed``.
    """
    try:
        if f is None:
            z = auto_zero(g)
            f = single_zero_morse(g, z, random_positive_values(g, z, seed))
        N = default_max_dim(g) if max_dim is None else max_dim
        t0 = time.perf_counter()
        d = direct_homology(g, N)
        t1 = time.perf_counter()
        mc = morse_complex(g, f, N)
        mb = mc.complex.betti(N)
        t2 = time.perf_counter()
        agree = d.betti == mb
        if mc.invariance.holds and not agree:
            raise DisagreementError(f"direct Betti {d.betti} but Morse Betti {mb} with invariance holding")
        return BenchRecord(trial, seed, g.n, len(g.edges), len(mc.gbar.edges),
                           " ".join(g.labels[z] for z in sorted(f.zero_set)),
                           d.dims[:N + 1], mc.complex.dims()[:N + 1], round(t1 - t0, 6), round(t2 - t1, 6),
                           mc.invariance.holds, agree)
    except Exception as exc:  # per-trial failures are recorded, the run continues
        return BenchRecord(trial, seed, g.n, len(g.edges), -1, "", [], [], 0.0, 0.0, None, None,
                           f"{type(exc).__name__}: {exc}")


def _trial(args):
    trial, n, density, seed, max_dim = args
    return run_instance(generate_random_dag(n, density, seed), trial, seed, max_dim)


def plan(sizes: range, density, trials: int, seed: int) -> list[tuple]:
    """Trial parameters; sizes cycle through the range, seeds come from one master RNG."""
    rng = random.Random(seed)
    sz = list(sizes)
    return [(t, sz[t % len(sz)], density, rng.randrange(2**31)) for t in range(trials)]


def bench(sizes: range, density, trials: int, seed: int, max_dim: int | None = None,
          workers: int = 1) -> list[BenchRecord]:
    jobs = [p + (max_dim,) for p in plan(sizes, density, trials, seed)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_trial, jobs))  # map keeps trial order
    return [_trial(j) for j in jobs]


def summarize(records: list[BenchRecord]) -> dict:
    ok = [r for r in records if r.error is None]
    ratios = [r.morse_total / r.omega_total for r in ok if r.omega_total]
    return {
        "trials": len(records),
        "errors": len(records) - len(ok),
        "mean_reduction_ratio": sum(ratios) / len(ratios) if ratios else None,
        "invariance_true": sum(1 for r in ok if r.invariance),
        "agreement_true": sum(1 for r in ok if r.agreement),
        "bound_violations": sum(1 for r in ok if any(m > o for m, o in zip(r.morse_dims, r.omega_dims))),
        "invariance_without_agreement": sum(1 for r in ok if r.invariance and not r.agreement),
    }


def _row(r: BenchRecord) -> dict:
    d = asdict(r)
    d["omega_total"] = r.omega_total
    d["morse_total"] = r.morse_total
    return d


def to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = _row(r)
        row["omega_dims"] = " ".join(map(str, r.omega_dims))
        row["morse_dims"] = " ".join(map(str, r.morse_dims))
        w.writerow(row)
    return buf.getvalue()


def to_json_lines(records: list[BenchRecord]) -> str:
    return "".join(json.dumps(_row(r), sort_keys=True) + "\n" for r in records)
