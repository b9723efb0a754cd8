from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from . import ENGINE_VERSION
from .builders.builtin import default_registry
from .builders.frobenius import MAX_COLORS, cphi6_3n1, cphi6_gen, cphi_oracle
from .core.config import DEFAULT_CACHE_DIR, PROFILES, EngineConfig, log_level
from .core.errors import QphiError
from .core.series import CoefficientRing, Series, first_difference
from .runtime.runner import LedgerRunner
from .verify.ledger import Ledger, load_ledger
from .verify.report import (
    Status,
    VerificationReport,
    Witness,
    dumps,
    exit_code,
    render_table,
    report_document,
)
from .verify.scan import scan_congruences

_logger = logging.getLogger(__name__)

METHODS = ("gen", "oracle", "3n1")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _emit(document: Dict[str, Any], out: Optional[str], human: str) -> None:
    """JSON to ``out`` when given, the human rendering to stdout otherwise."""
    if out:
        _write(out, dumps(document))
    else:
        print(human)


def build_config(args: argparse.Namespace) -> EngineConfig:
    return EngineConfig.from_env(
        jobs=getattr(args, "jobs", None),
        profile=getattr(args, "profile", None),
        cache_dir=getattr(args, "cache_dir", None),
        use_cache=False if getattr(args, "no_cache", False) else None,
    )


def build_series(k: int, terms: int, ring: CoefficientRing, method: Optional[str] = None) -> Series:
    """sum cphi_k(n) q^n through ``terms`` by the chosen construction."""
    method = method or ("gen" if k == 6 else "oracle")
    if method == "oracle":
        return cphi_oracle(k, terms, ring)
    if k != 6:
        raise QphiError(f"method {method!r} exists only for k = 6")
    if method == "gen":
        return cphi6_gen(terms, ring)
    return cphi6_3n1(terms, ring)


# Verbs
def cmd_expand(args: argparse.Namespace) -> int:
    ring = CoefficientRing.parse(args.ring)
    series = build_series(args.k, args.terms, ring, args.method)
    document = {
        "engine": ENGINE_VERSION,
        "parameters": {"k": str(args.k), "terms": str(args.terms), "ring": ring.label, "method": args.method or "default"},
        "series": series.to_json(),
    }
    _emit(document, args.out, "\n".join(f"{n}\t{c}" for n, c in enumerate(series.coeffs)))
    return 0


def _verify(args: argparse.Namespace, names: Optional[List[str]], order: Optional[int]) -> int:
    config = build_config(args)
    ledger: Ledger = load_ledger(args.ledger)
    reports = LedgerRunner(ledger, config).run(names, order)
    parameters: Dict[str, Any] = {
        "profile": config.profile,
        "jobs": config.jobs,
        "base_modulus": config.base_modulus,
        "cache": config.cache_dir if config.use_cache else "off",
    }
    if order is not None:
        parameters["terms"] = order
    if names:
        parameters["entries"] = ",".join(names)
    _emit(report_document(reports, ENGINE_VERSION, parameters, ledger.info()), args.out, render_table(reports))
    return exit_code(reports)


def cmd_verify(args: argparse.Namespace) -> int:
    return _verify(args, args.entry, args.terms)


def cmd_verify_all(args: argparse.Namespace) -> int:
    return _verify(args, None, None)


def cmd_oracle(args: argparse.Namespace) -> int:
    ring = CoefficientRing.parse(args.ring)
    oracle = cphi_oracle(args.k, args.terms, ring)
    parameters = {"k": args.k, "terms": args.terms, "ring": ring.label}
    if args.k != 6:
        document = {"engine": ENGINE_VERSION, "parameters": {k: str(v) for k, v in parameters.items()}, "series": oracle.to_json()}
        _emit(document, args.out, "\n".join(f"{n}\t{c}" for n, c in enumerate(oracle.coeffs)))
        return 0
    gen = cphi6_gen(args.terms, ring)
    index = first_difference(oracle, gen)
    if index is None:
        report = VerificationReport(name="oracle-vs-gen", status=Status.PASS, checked_through=args.terms)
    else:
        report = VerificationReport(
            name="oracle-vs-gen",
            status=Status.FAIL,
            checked_through=args.terms,
            first_failure=Witness(index, oracle[index], gen[index]),
        )
    _emit(report_document([report], ENGINE_VERSION, parameters), args.out, render_table([report]))
    return exit_code([report])


def cmd_scan(args: argparse.Namespace) -> int:
    try:
        moduli = [int(m) for m in args.moduli.split(",") if m.strip()]
    except ValueError:
        raise QphiError(f"--moduli must be a comma-separated list of integers, got {args.moduli!r}") from None
    claims = scan_congruences(args.k, args.max_a, moduli, args.terms, args.min_witnesses, minimal=not args.all)
    document = {
        "engine": ENGINE_VERSION,
        "parameters": {
            "k": str(args.k),
            "max_a": str(args.max_a),
            "moduli": ",".join(str(m) for m in moduli),
            "terms": str(args.terms),
            "min_witnesses": str(args.min_witnesses),
        },
        "claims": [c.to_json() for c in claims],
    }
    lines = [f"{c.describe()}  [{c.label}, {c.n_range} instances]" for c in claims] or ["no congruences found"]
    _emit(document, args.out, "\n".join(lines))
    return 0


def cmd_ops(args: argparse.Namespace) -> int:
    specs = default_registry().list_specs()
    lines = []
    for spec in specs:
        params = ", ".join(f"{k}: {v}" for k, v in spec["parameters"].items())
        lines.append(f"{spec['name']}({params})  {spec['description']}")
    _emit({"engine": ENGINE_VERSION, "ops": specs}, args.out, "\n".join(lines))
    return 0


# Parser
def _k(text: str) -> int:
    k = int(text)
    if not 1 <= k <= MAX_COLORS:
        raise argparse.ArgumentTypeError(f"k must be in 1..{MAX_COLORS}")
    return k


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qphi", description="Exact q-series engine for generalized Frobenius partitions")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG (default from QPHI_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="Write a JSON report to this path instead of printing a table")

    def add_runner(p: argparse.ArgumentParser) -> None:
        p.add_argument("--ledger", default=None, help="Ledger JSON file (default: the shipped ledger)")
        p.add_argument("--profile", default="quick", choices=PROFILES, help="quick caps orders; full runs the declared ones")
        p.add_argument("--jobs", type=_positive, default=None, help="Worker threads (default 4)")
        p.add_argument("--cache-dir", default=None, help=f"Series cache directory (default $QPHI_CACHE or {DEFAULT_CACHE_DIR})")
        p.add_argument("--no-cache", action="store_true", help="Disable the on-disk series cache")
        add_out(p)

    p = sub.add_parser("expand", help="Print cphi_k(0..N)")
    p.add_argument("--k", type=_k, default=6)
    p.add_argument("--terms", type=_nonnegative, default=20)
    p.add_argument("--ring", default="exact", help="exact or mod:M")
    p.add_argument("--method", choices=METHODS, default=None, help="gen and 3n1 need k = 6 (3n1 prints cphi_6(3n+1))")
    add_out(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="Verify selected ledger entries")
    p.add_argument("--entry", action="append", required=True, help="Ledger entry name (repeatable)")
    p.add_argument("--terms", type=_nonnegative, default=None, help="Override the order (identities) or order cap (congruences)")
    add_runner(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="Verify every ledger entry")
    add_runner(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("oracle", help="Quadratic-form oracle; for k = 6 compared against the closed formula")
    p.add_argument("--k", type=_k, default=6)
    p.add_argument("--terms", type=_nonnegative, default=200)
    p.add_argument("--ring", default="exact", help="exact or mod:M")
    add_out(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("scan", help="Search for empirical congruences cphi_k(an+b) == 0 (mod M)")
    p.add_argument("--k", type=_k, default=6)
    p.add_argument("--max-a", type=_positive, default=27)
    p.add_argument("--moduli", default="243", help="Comma-separated moduli, e.g. 4,9,27")
    p.add_argument("--terms", type=_nonnegative, default=600)
    p.add_argument("--min-witnesses", type=_positive, default=10)
    p.add_argument("--all", action="store_true", help="Keep claims implied by coarser ones")
    add_out(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ops", help="List the expression ops a ledger may use")
    add_out(p)
    p.set_defaults(func=cmd_ops)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=log_level(args.verbose), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (QphiError, ValueError, KeyError, OSError) as exc:
        _logger.debug("command failed", exc_info=True)
        print(f"qphi: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
