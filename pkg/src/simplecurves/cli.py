"""Command line interface.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 verification failure,
4 stabilisation failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from . import atlas, germ
from .classify import recognize
from .deform import DeformationError, shipped_families, verify_family
from .germ import StabilizationError, delta_certificate, signature, stable_reduce
from .notation import GermSyntaxError, format_germ, parse_germ
from .plane import resolve_report

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_STABILIZE = 0, 1, 2, 3, 4

COMMANDS = ("invariants", "classify", "resolve", "verify-atlas", "verify-adjacency", "adjacency-dot", "atlas-list")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _records(rec: dict[str, str]) -> str:
    return "\n".join(f"{k}={v}" for k, v in rec.items())


def _inputs(arg: str | None) -> list[str]:
    """Germ texts from the argument: literal text, a file (one per line) or ``-``."""
    if arg is None:
        raise UsageError("a germ (text, file or '-') is required")
    if arg == "-":
        lines = sys.stdin.read().splitlines()
    elif not arg.lstrip().startswith("(") and Path(arg).is_file():
        lines = Path(arg).read_text(encoding="utf-8").splitlines()
    else:
        return [arg]
    return [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def _invariants(text: str, fmt: str) -> str:
    g = parse_germ(text)
    sig = signature(g)
    cert = delta_certificate(g)
    rec = {"germ": format_germ(g), **sig.as_records(), "certified_N": str(cert.N)}
    if fmt == "records":
        return _records(rec)
    return "\n".join(f"{k:>20}: {v}" for k, v in rec.items())


def _classify(text: str, fmt: str) -> str:
    g = parse_germ(text)
    res = recognize(g)
    if fmt == "records":
        return _records({"germ": format_germ(g), **res.records()})
    return f"{format_germ(g)}\n{res.render()}"


def _resolve(text: str, fmt: str) -> str:
    g = parse_germ(text)
    if g.n != 2:
        reduced = stable_reduce(g)
        if reduced.n != 2:
            raise UsageError("resolve needs a germ of embedding dimension 2")
        g = reduced
    rep = resolve_report(g)
    tree = rep["tree"]
    summary = {
        "germ": format_germ(g),
        "multiplicity_sequences": ";".join(",".join(map(str, s)) for s in rep["multiplicity_sequences"]),
        "satellites": str(rep["satellites"]),
        "modality": str(rep["modality"]),
        "bpv_simple": str(rep["bpv_simple"]).lower(),
        "ade": rep["ade"] or "-",
        "delta": str(tree.delta()),
        "milnor": str(tree.milnor()),
    }
    if fmt == "records":
        return tree.export() + "\n\n" + _records(summary)
    lines = [tree.export(), ""] + [f"{k:>22}: {v}" for k, v in summary.items()]
    return "\n".join(lines)


def _verify_atlas(lam: Fraction, fmt: str) -> tuple[str, bool]:
    reports = atlas.verify_table()
    table_instances = len(reports)
    for e in atlas.entries():
        if e.equations or e.matrix:
            reports.append(atlas.verify_entry(e, lam=lam))
    ok = all(r.ok for r in reports)
    if fmt == "records":
        body = "\n\n".join(
            _records({"entry": r.label, "params": ",".join(f"{k}={v}" for k, v in r.params.items()) or "-",
                      "ok": str(r.ok).lower(), "failures": "; ".join(c.name for c in r.failures()) or "-"})
            for r in reports
        )
    else:
        body = "\n".join(r.render() for r in reports)
    summary = (
        f"{len(atlas.table_rows())} table rows ({table_instances} instances) and "
        f"{len(reports) - table_instances} further entries: {'all verified' if ok else 'FAILURES'}"
    )
    return body + "\n\n" + summary, ok


def _verify_adjacency(sample_s: Fraction | None, fmt: str) -> tuple[str, bool]:
    out, ok = [], True
    for f in shipped_families():
        if sample_s is not None and f.s0 is not None:
            from dataclasses import replace

            f = replace(f, s0=sample_s)
        rep = verify_family(f)
        ok &= rep.ok
        if fmt == "records":
            out.append(_records({**f.record(), "ok": str(rep.ok).lower(),
                                 "failures": "; ".join(c.name for c in rep.failures()) or "-"}))
        else:
            out.append(rep.render())
    sep = "\n\n" if fmt == "records" else "\n"
    return sep.join(out), ok


def _atlas_list(fmt: str) -> str:
    rows = []
    for e in atlas.entries() + atlas.table_rows():
        params = ",".join(f"{p.name}>={p.low}" for p in e.params) or "-"
        rec = {"label": e.label, "kind": e.kind, "params": params, "alias": e.alias or "-",
               "group": e.group, "citation": e.citation or "-"}
        rows.append(_records(rec) if fmt == "records" else f"{e.label:<34} {e.kind:<10} {params:<12} {e.group}")
    return ("\n\n" if fmt == "records" else "\n").join(rows)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simplecurves", description="Invariants and classification of parametrised curve germs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("germ", nargs="?", help="germ text, a file with one germ per line, or '-' for stdin")
    p.add_argument("--truncation", type=int, default=None, help="initial jet truncation (doubles until certified)")
    p.add_argument("--lambda", dest="lam", type=Fraction, default=atlas.DEFAULT_LAMBDA, help="modulus for atlas equations")
    p.add_argument("--sample-s", type=Fraction, default=None, help="value of s for the general fibre")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv: Iterable[str] | None = None) -> tuple[int, str]:
    """Run one command; returns the exit status and the report text."""
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.truncation is not None:
        if args.truncation < 1:
            return EXIT_USAGE, "truncation must be positive"
        germ.DEFAULT_N = args.truncation
    try:
        if args.command in ("invariants", "classify", "resolve"):
            handler = {"invariants": _invariants, "classify": _classify, "resolve": _resolve}[args.command]
            report = "\n\n".join(handler(t, args.format) for t in _inputs(args.germ))
            status = EXIT_OK
        elif args.command == "verify-atlas":
            report, ok = _verify_atlas(args.lam, args.format)
            status = EXIT_OK if ok else EXIT_VERIFY
        elif args.command == "verify-adjacency":
            report, ok = _verify_adjacency(args.sample_s, args.format)
            status = EXIT_OK if ok else EXIT_VERIFY
        elif args.command == "adjacency-dot":
            report, status = atlas.adjacency_dot().rstrip("\n"), EXIT_OK
        else:
            report, status = _atlas_list(args.format), EXIT_OK
    except GermSyntaxError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except atlas.AtlasError as exc:
        return EXIT_USAGE, f"error: {exc}"
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}"
    except DeformationError as exc:
        return EXIT_VERIFY, f"verification failure: {exc}"
    except StabilizationError as exc:
        return EXIT_STABILIZE, f"stabilisation failure: {exc}"
    if args.output is not None:
        args.output.write_text(report + "\n", encoding="utf-8")
        return status, ""
    return status, report


def main(argv: Iterable[str] | None = None) -> int:
    status, report = run(argv)
    if report:
        stream = sys.stdout if status in (EXIT_OK, EXIT_VERIFY) else sys.stderr
        print(report, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
