"""Command-line front end: ``m2codes {tables,factor,build,search,examples,verify}``.

Exit codes: 0 success (including ``reported`` findings), 1 usage error,
2 precondition error, 3 falsification of a check that must hold.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .codes import DEFAULT_CAP, CodeSpec, build_code, code_metrics, min_distances, search_assignments
from .errors import CardinalityMismatch, FalsificationError, PreconditionError, UnsupportedP
from .exactalg import validate_params
from .polyfactor import factor_xn_minus_1
from .reference_codes import REFERENCE_CODES, run_binary_literal, run_reference
from .verify import run_verification
from .weights import (
    hom_weight,
    lee_f3_table,
    table_to_csv,
    table_to_json,
    table_to_text,
    weight_table,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_FALSIFIED = 0, 1, 2, 3
SEARCH_CSV_COLUMNS = ("assignment", "s", "cardinality", "d_Ham", "d_B", "d_nhom", "d_L", "enumerated")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    p: int = 2
    n: int = 1
    gamma: Fraction = Fraction(1)
    cap: int = DEFAULT_CAP
    format: str = "json"
    seed: int = 0
    output_dir: Path | None = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cfg = cls(
            p=args.p,
            n=getattr(args, "n", None) or 1,
            gamma=args.gamma,
            cap=args.cap,
            format=args.format,
            seed=args.seed,
            output_dir=Path(args.out) if args.out else None,
        )
        if cfg.cap < 1:
            raise UsageError("--cap must be at least 1")
        return cfg


def parse_gamma(text: str) -> Fraction:
    try:
        g = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if g <= 0:
        raise argparse.ArgumentTypeError("gamma must be positive")
    return g


def parse_assignment(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"assignment must be comma-separated integers: {text!r}")


def provenance(command: str, cfg: RunConfig, n=None, **parameters) -> dict:
    return {
        "tool_version": __version__,
        "p": cfg.p,
        "n": n,
        "command": command,
        "parameters": {"gamma": str(cfg.gamma), "cap": cfg.cap, **parameters},
    }


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, default=_json_default) + "\n"


def emit(text: str, cfg: RunConfig, filename: str | None = None) -> None:
    if cfg.output_dir is not None and filename:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        (cfg.output_dir / filename).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------


def cmd_tables(cfg: RunConfig) -> int:
    try:
        validate_params(cfg.p)
    except PreconditionError as exc:
        raise UnsupportedP(str(exc)) from exc
    if cfg.p > 7:
        raise UnsupportedP(f"tables are produced for p <= 7, got {cfg.p}")
    matrix = weight_table(cfg.p, "matrix")
    if cfg.gamma != 1:
        for row in matrix:
            row["w_hom"] = hom_weight(row["element"], cfg.gamma)
    chain = weight_table(cfg.p, "chain")
    f3 = lee_f3_table()
    if cfg.format == "json":
        doc = {
            **provenance("tables", cfg),
            "matrix_table": table_to_json(matrix),
            "chain_table": table_to_json(chain),
            "f3_reference_table": {
                "note": "F_3+uF_3 values reproduced under the rule y in {0, x}",
                "rows": f3,
            },
        }
        emit(dumps(doc), cfg, f"tables_p{cfg.p}.json")
    elif cfg.format == "csv":
        parts = [("matrix", matrix), ("chain", chain), ("f3_reference", f3)]
        if cfg.output_dir is not None:
            for name, rows in parts:
                emit(table_to_csv(rows), cfg, f"{name}_p{cfg.p}.csv" if name != "f3_reference" else "f3_reference.csv")
        else:
            sys.stdout.write("\n".join(f"# {name}\n{table_to_csv(rows)}" for name, rows in parts))
    else:
        text = "\n".join(f"{title}\n{table_to_text(rows)}" for title, rows in [
            (f"M_2(F_{cfg.p})", matrix),
            (f"F_{cfg.p * cfg.p}+uF_{cfg.p * cfg.p}", chain),
            ("F_3+uF_3 reference (rule: y in {0, x})", f3),
        ])
        emit(text, cfg, f"tables_p{cfg.p}.txt")
    return EXIT_OK


def cmd_factor(cfg: RunConfig) -> int:
    fs = factor_xn_minus_1(cfg.p, cfg.n)
    if cfg.format == "json":
        emit(dumps({**provenance("factor", cfg, cfg.n), **fs.to_json()}), cfg, f"factor_p{cfg.p}_n{cfg.n}.json")
    elif cfg.format == "csv":
        rows = [{"index": i, "degree": f.degree, "factor": str(f)} for i, f in enumerate(fs.factors)]
        emit(_csv(rows, ("index", "degree", "factor")), cfg, f"factor_p{cfg.p}_n{cfg.n}.csv")
    else:
        lines = [f"x^{cfg.n} - 1 over F_{cfg.p ** 2}:"]
        lines += [f"  [{i}] {f}" for i, f in enumerate(fs.factors)]
        emit("\n".join(lines) + "\n", cfg, f"factor_p{cfg.p}_n{cfg.n}.txt")
    return EXIT_OK


def _metrics_doc(m, cfg: RunConfig) -> dict:
    doc = m.to_json()
    if cfg.gamma != 1 and m.d_nhom is not None:
        doc["d_hom"] = str(cfg.gamma * m.d_nhom)
    return doc


def cmd_build(cfg: RunConfig, assignment, construction: str = "module",
              allow_mismatch: bool = False, generator: bool = False) -> int:
    spec = CodeSpec.from_assignment(cfg.p, cfg.n, assignment)
    status = "ok"
    try:
        G = build_code(spec, construction=construction)
    except CardinalityMismatch as exc:
        if not allow_mismatch:
            raise
        G, status = exc.generator, "cardinality_mismatch"
    m = code_metrics(G, cfg.cap) if allow_mismatch else min_distances(G, cfg.cap)
    doc = {
        **provenance("build", cfg, cfg.n, assignment=spec.label(), construction=construction),
        "factors": [str(f) for f in spec.factor_set.factors],
        "F0": str(spec.F0), "F1": str(spec.F1), "F2": str(spec.F2),
        "status": status,
        "metrics": _metrics_doc(m, cfg),
    }
    if generator:
        doc["generator"] = G.rows.tolist()
    if cfg.format == "json":
        emit(dumps(doc), cfg, f"build_p{cfg.p}_n{cfg.n}.json")
    else:
        row = _search_row(m)
        if cfg.format == "csv":
            emit(_csv([row], SEARCH_CSV_COLUMNS), cfg, f"build_p{cfg.p}_n{cfg.n}.csv")
        else:
            emit("".join(f"{k}: {v}\n" for k, v in row.items()), cfg, f"build_p{cfg.p}_n{cfg.n}.txt")
    return EXIT_OK


def _search_row(m) -> dict:
    return {
        "assignment": m.assignment,
        "s": m.s,
        "cardinality": m.cardinality,
        "d_Ham": m.d_ham,
        "d_B": m.d_b,
        "d_nhom": "" if m.d_nhom is None else str(m.d_nhom),
        "d_L": m.d_l,
        "enumerated": m.enumerated,
    }


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in columns})
    return buf.getvalue()


def cmd_search(cfg: RunConfig, construction: str = "module") -> int:
    results = search_assignments(cfg.p, cfg.n, cfg.cap, construction=construction)
    out = cfg.output_dir or Path("results")
    out.mkdir(parents=True, exist_ok=True)
    doc = {
        **provenance("search", cfg, cfg.n, construction=construction),
        "rows": [_metrics_doc(m, cfg) for m in results],
    }
    stem = f"p{cfg.p}_n{cfg.n}"
    (out / f"{stem}.json").write_text(dumps(doc))
    (out / f"{stem}.csv").write_text(_csv([_search_row(m) for m in results], SEARCH_CSV_COLUMNS))
    mismatched = sum(m.matches_formula is False for m in results)
    sys.stdout.write(
        f"{len(results)} assignments written to {out / stem}.{{json,csv}}; "
        f"{mismatched} with rank != 2s\n"
    )
    return EXIT_OK


def cmd_examples(cfg: RunConfig) -> int:
    reports = [run_reference(ref, cfg.cap) for ref in REFERENCE_CODES]
    literal = run_binary_literal(cfg.cap)
    statuses = [r["status"] for r in reports]
    doc = {
        **provenance("examples", cfg),
        "codes": reports,
        "binary_label_order_assignment": literal,
        "summary": {s: statuses.count(s) for s in ("pass", "reported", "fail")},
    }
    if cfg.format == "json":
        emit(dumps(doc), cfg, "examples.json")
    else:
        rows = [{"code": r["name"], **{k: d[k] for k in ("quantity", "expected", "measured", "status")}}
                for r in reports for d in r["diffs"]]
        if cfg.format == "csv":
            emit(_csv(rows, ("code", "quantity", "expected", "measured", "status")), cfg, "examples.csv")
        else:
            emit(table_to_text(rows), cfg, "examples.txt")
    return EXIT_FALSIFIED if "fail" in statuses else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    rep = run_verification(cfg.p)
    doc = {**provenance("verify", cfg), **rep.to_json()}
    if cfg.format == "json":
        emit(dumps(doc), cfg, f"verify_p{cfg.p}.json")
    else:
        rows = [{"check": c.name, "status": c.status} for c in rep.checks]
        if cfg.format == "csv":
            emit(_csv(rows, ("check", "status")), cfg, f"verify_p{cfg.p}.csv")
        else:
            emit(table_to_text(rows), cfg, f"verify_p{cfg.p}.txt")
    return EXIT_OK if rep.ok else EXIT_FALSIFIED


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime with p = 2 or 3 mod 5")
    common.add_argument("--gamma", type=parse_gamma, default=Fraction(1), metavar="NUM/DEN",
                        help="average value of the homogeneous weight (default 1)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest code size that is enumerated (default 2^20)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", metavar="DIR", help="write files here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)

    with_n = argparse.ArgumentParser(add_help=False)
    with_n.add_argument("--n", type=int, required=True, help="code length, coprime to p")

    parser = _Parser(prog="m2codes", description="Cyclic codes over 2x2 matrices mod p and their chain-ring images.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("tables", parents=[common], help="weight tables of A_p and F_{p^2}+uF_{p^2}")
    sub.add_parser("factor", parents=[common, with_n], help="irreducible factors of x^n - 1")
    b = sub.add_parser("build", parents=[common, with_n], help="build one code and measure it")
    b.add_argument("--assignment", type=parse_assignment, required=True, metavar="CSV",
                   help="class index (0, 1 or 2) for each factor, in factor order")
    b.add_argument("--construction", choices=("module", "pullback"), default="module")
    b.add_argument("--allow-mismatch", action="store_true",
                   help="report metrics even when the rank differs from 2s")
    b.add_argument("--generator", action="store_true", help="include the generator matrix")
    s = sub.add_parser("search", parents=[common, with_n], help="sweep every factor assignment")
    s.add_argument("--construction", choices=("module", "pullback"), default="module")
    sub.add_parser("examples", parents=[common], help="rebuild the two reference codes")
    sub.add_parser("verify", parents=[common], help="run the invariant suite for one prime")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.from_args(args)
        if args.command == "tables":
            return cmd_tables(cfg)
        if args.command == "factor":
            return cmd_factor(cfg)
        if args.command == "build":
            return cmd_build(cfg, args.assignment, args.construction, args.allow_mismatch, args.generator)
        if args.command == "search":
            return cmd_search(cfg, args.construction)
        if args.command == "examples":
            return cmd_examples(cfg)
        return cmd_verify(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FalsificationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
