"""Command line: ``certify``, ``generate``, ``verify``, ``experiments``, ``constants``.

Exit codes: 0 when a certificate is produced and verified, 2 when the run is
inconclusive, 1 on any error (including a certificate that fails to verify).
"""

import argparse
import sys
from pathlib import Path

from . import certificates as C
from .constants import LEVEL_KEYS, constants_sheet
from .construct import cycle_graph, path_graph, random_forest, random_graph, swiss_army
from .errors import EhcertError
from .experiments import ExperimentConfig, run_experiments
from .fixtures import free_host, planted_swiss
from .io import format_graph, read_certificate, read_graph, write_certificate
from .numerics import real_text
from .pipeline import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_VERIFIED, eh_certify


def _overrides(pairs):
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise EhcertError(f"override {item!r} is not of the form key=value")
        out[key.strip()] = value.strip()
    return out


def _emit(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _forest(args):
    if args.forest:
        return read_graph(args.forest)
    return path_graph(args.forest_path)


def cmd_certify(args):
    g = read_graph(args.graph)
    f = _forest(args)
    sheet = constants_sheet(args.s, args.t, f.n, overrides=_overrides(args.override))
    out = eh_certify(g, f, args.s, args.t, sheet=sheet, seed=args.seed)
    if args.trace:
        Path(args.trace).write_text(out.trace.to_json() + "\n")
    if out.inconclusive:
        print(f"inconclusive: {out.reason}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if C.verify_certificate(out.certificate, g):
        print("internal error: certificate failed verification", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        write_certificate(out.certificate, args.out)
    else:
        sys.stdout.write(C.to_text(out.certificate))
    print(f"verified {out.certificate.kind}", file=sys.stderr)
    return EXIT_VERIFIED


def cmd_generate(args):
    kind = args.kind
    p = args.params
    if kind == "gnp":
        g = random_graph(int(p[0]), float(p[1]), args.seed)
    elif kind == "cycle":
        g = cycle_graph(int(p[0]))
    elif kind == "path":
        g = path_graph(int(p[0]))
    elif kind == "forest":
        g = random_forest(int(p[0]), args.seed)
    elif kind == "free":
        g = free_host(p[0], int(p[1]), args.seed)
    elif kind == "swiss":
        f = _forest(args)
        g = planted_swiss(f, args.s, args.t, args.pad) if args.pad else swiss_army(f, args.s, args.t)
    else:
        raise EhcertError(f"unknown generator {kind!r}")
    _emit(format_graph(g), args.out)
    return 0


def cmd_verify(args):
    cert = read_certificate(args.certificate)
    g = read_graph(args.graph)
    bad = C.verify_certificate(cert, g)
    if bad:
        for line in bad:
            print(line)
        return EXIT_ERROR
    print(f"verified {cert.kind}")
    return EXIT_VERIFIED


def cmd_experiments(args):
    cfg = ExperimentConfig.load(args.config)
    summary = run_experiments(cfg, failure_dir=args.failures)
    _emit(summary.csv(), args.out or cfg.output)
    print(summary.text(), file=sys.stderr)
    return 0


def cmd_constants(args):
    sheet = constants_sheet(args.s, args.t, args.nf, h=args.h, overrides=_overrides(args.override))
    for key, value in sorted(sheet.values.items()):
        mark = " (override)" if sheet.is_overridden(key) else ""
        print(f"{key} = {real_text(sheet[key])}{mark}")
    if args.y:
        for key in LEVEL_KEYS:
            v = sheet.at(key, args.y)
            print(f"{key}@y={args.y} = {'unbounded' if v is None else real_text(v)}")
    return 0


def _forest_args(p):
    p.add_argument("--forest", help="forest as an edge-list file")
    p.add_argument("--forest-path", type=int, default=2, help="use a path on this many vertices (default 2)")


def build_parser():
    ap = argparse.ArgumentParser(prog="ehcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="certify a graph against F^s_t and its complement")
    p.add_argument("graph")
    _forest_args(p)
    p.add_argument("-s", type=int, default=1)
    p.add_argument("-t", type=int, default=1)
    p.add_argument("--override", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", metavar="FILE", help="write the run trace as JSON")
    p.add_argument("--out", metavar="FILE", help="write the certificate here instead of stdout")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    p.add_argument("kind", choices=["gnp", "cycle", "path", "forest", "free", "swiss"])
    p.add_argument("params", nargs="*", help="gnp N P | cycle N | path N | forest N | free PATTERN N | swiss")
    _forest_args(p)
    p.add_argument("-s", type=int, default=1)
    p.add_argument("-t", type=int, default=1)
    p.add_argument("--pad", type=int, default=0, help="isolated vertices appended to a swiss graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o", metavar="FILE")
    p.set_defaults(run=cmd_generate)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("certificate")
    p.add_argument("graph")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("experiments", help="run a seeded experiment grid and emit CSV")
    p.add_argument("config")
    p.add_argument("--out", "-o", metavar="FILE")
    p.add_argument("--failures", metavar="DIR", help="where to write a case that fails verification")
    p.set_defaults(run=cmd_experiments)

    p = sub.add_parser("constants", help="print the constant sheet")
    p.add_argument("-s", type=int, default=1)
    p.add_argument("-t", type=int, default=1)
    p.add_argument("--nf", type=int, default=1)
    p.add_argument("--h", type=int)
    p.add_argument("--y", help="also print the level constants at this y")
    p.add_argument("--override", action="append", metavar="KEY=VALUE")
    p.set_defaults(run=cmd_constants)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (EhcertError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
