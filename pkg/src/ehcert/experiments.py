"""Seeded experiment batches over parameter grids.

A config is a JSON object::

    {"generator": {"kind": "gnp", "n": [40, 80], "p": ["1/10", "1/2"]},
     "operation": {"name": "strengthening", "pattern": "P4", "eps": ["1/5"]},
     "seeds": [0, 1, 2]}

List-valued entries span the grid; scalars are fixed.  Every certificate is
verified before it is tallied, and a failure aborts the run with the
offending case written out.  Rows carry no timings, so the CSV is identical
across reruns; timings go to the summary only.
"""

import csv
import io as _io
import itertools
import json
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from . import certificates as C
from .bits import as_fraction
from .cliques import ramsey_extract
from .construct import cycle_graph, path_graph, pattern_by_name, random_forest, random_graph
from .errors import EhcertError, PreconditionError
from .fixtures import free_host, planted_swiss
from .foxsudakov import countcliques_dichotomy, foxsudmain_dichotomy, strengthening_dichotomy
from .io import format_graph
from .numerics import real_text

GENERATORS = ("gnp", "cycle", "swiss", "free")
OPERATIONS = ("strengthening", "foxsudmain", "countcliques", "ramsey", "certify")


class ExperimentFailure(EhcertError):
    """A certificate failed verification; ``case`` holds the serialized graph and certificate."""

    def __init__(self, message, case):
        self.case = case
        super().__init__(message)


@dataclass(frozen=True)
class ExperimentConfig:
    generator: dict
    operation: dict
    seeds: tuple
    output: str = None

    @classmethod
    def from_dict(cls, d):
        try:
            gen, op, seeds = dict(d["generator"]), dict(d["operation"]), tuple(int(s) for s in d["seeds"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"bad experiment config: {exc}") from None
        if gen.get("kind") not in GENERATORS:
            raise PreconditionError(f"generator kind must be one of {GENERATORS}")
        if op.get("name") not in OPERATIONS:
            raise PreconditionError(f"operation name must be one of {OPERATIONS}")
        return cls(gen, op, seeds, d.get("output"))

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))

    def cases(self):
        """Parameter dicts in a fixed order: generator grid, operation grid, then seeds."""
        axes = []
        for scope, spec in (("gen", self.generator), ("op", self.operation)):
            for key in sorted(spec):
                vals = spec[key] if isinstance(spec[key], list) else [spec[key]]
                axes.append([(scope, key, v) for v in vals])
        axes.append([("seed", "seed", s) for s in self.seeds])
        if any(not a for a in axes):
            raise PreconditionError("experiment grid is empty")
        for combo in itertools.product(*axes):
            gen = {k: v for sc, k, v in combo if sc == "gen"}
            op = {k: v for sc, k, v in combo if sc == "op"}
            yield gen, op, combo[-1][2]


def build_graph(gen, seed):
    kind = gen["kind"]
    if kind == "gnp":
        return random_graph(int(gen["n"]), float(as_fraction(gen["p"])), seed)
    if kind == "cycle":
        return cycle_graph(int(gen["n"]))
    if kind == "free":
        return free_host(gen["pattern"], int(gen["n"]), seed)
    if kind == "swiss":
        f = path_graph(int(gen.get("forest_path", 2)))
        return planted_swiss(f, int(gen.get("s", 1)), int(gen.get("t", 1)), int(gen.get("pad", 0)))
    raise PreconditionError(f"unknown generator {kind!r}")


def run_operation(op, g, seed):
    name = op["name"]
    if name == "strengthening":
        return strengthening_dichotomy(g, pattern_by_name(op["pattern"]), as_fraction(op["eps"]))
    if name == "foxsudmain":
        return foxsudmain_dichotomy(g, pattern_by_name(op["pattern"]), as_fraction(op["eps"]), int(op["t"]))
    if name == "countcliques":
        return countcliques_dichotomy(g, int(op["h"]), as_fraction(op["c"]))
    if name == "ramsey":
        return ramsey_extract(g, int(op["t"]), int(op["k"]))
    if name == "certify":
        from .pipeline import eh_certify

        f = random_forest(int(op.get("forest_n", 2)), seed) if op.get("random_forest") else \
            path_graph(int(op.get("forest_n", 2)))
        out = eh_certify(g, f, int(op.get("s", 1)), int(op.get("t", 1)), seed=seed)
        return out.certificate
    raise PreconditionError(f"unknown operation {name!r}")


def _slack(cert):
    """Size above the weakest claimed floor, when the certificate has one."""
    if cert is None:
        return ""
    bd = cert.bounds
    if "min_size" in bd:
        sizes = [len(v) for v in cert.sets.values()] or [len(b) for b in cert.blocks]
        return real_text(min(sizes) - bd["min_size"]) if sizes else ""
    if cert.kind == "CliqueCountBound":
        return real_text(bd["count"] - bd["lower"])
    return ""


@dataclass
class Summary:
    rows: list
    counts: Counter = field(default_factory=Counter)
    seconds: float = 0.0

    def csv(self):
        buf = _io.StringIO()
        if self.rows:
            w = csv.DictWriter(buf, fieldnames=list(self.rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(self.rows)
        return buf.getvalue()

    def text(self):
        parts = [f"{k}: {v}" for k, v in sorted(self.counts.items())]
        return f"{len(self.rows)} cases in {self.seconds:.2f}s; " + ", ".join(parts)


def run_experiments(cfg, failure_dir=None):
    """Run every grid case; returns a :class:`Summary` with one row per case."""
    if isinstance(cfg, dict):
        cfg = ExperimentConfig.from_dict(cfg)
    rows, counts = [], Counter()
    start = time.perf_counter()
    for gen, op, seed in cfg.cases():
        g = build_graph(gen, seed)
        try:
            cert = run_operation(op, g, seed)
            outcome = "inconclusive" if cert is None else cert.kind
        except EhcertError as exc:
            cert, outcome = None, type(exc).__name__
        if cert is not None:
            bad = C.verify_certificate(cert, g)
            if bad:
                case = {"graph": format_graph(g), "certificate": C.to_text(cert), "violations": bad}
                if failure_dir is not None:
                    d = Path(failure_dir)
                    d.mkdir(parents=True, exist_ok=True)
                    (d / "graph.txt").write_text(case["graph"])
                    (d / "certificate.json").write_text(case["certificate"])
                raise ExperimentFailure(f"verification failed for {gen} {op} seed {seed}: {bad[:3]}", case)
        branch = "" if cert is None else str(cert.extra.get("branch", cert.extra.get("route", "")))
        counts[outcome] += 1
        row = {f"gen_{k}": gen[k] for k in sorted(gen)}
        row.update({f"op_{k}": op[k] for k in sorted(op)})
        row.update({"seed": seed, "n": g.n, "m": g.m, "outcome": outcome, "branch": branch,
                    "size": "" if cert is None else len(cert.vertices()), "slack": _slack(cert)})
        rows.append(row)
    return Summary(rows, counts, time.perf_counter() - start)


__all__ = ["ExperimentConfig", "ExperimentFailure", "Summary", "build_graph", "run_experiments"]
