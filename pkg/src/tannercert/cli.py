"""Command-line interface.

Subcommands:

    certify       exit 0 if certified, 1 if not, 2 on input error
    ml-decode     exhaustive ML decode of an LLR file
    lp-decode     exact LP decode of an LLR file
    verify-lemma  exact decomposition checks (--which 2|3|4), exit 0 on pass
    cover-check   certificate preservation on random M-covers
    run           experiment batch from a key=value config file
    plot          re-render report figures from a results.json

All reports are JSON on stdout; rationals are printed exactly as 'p/q'.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import certify
from .channel import read_llr_file
from .codefile import load_code
from .codes import parse_word
from .covers import check_cover_optimality
from .decoders import lp_decode, ml_decode
from .decomposition import (
    verify_codeword_expectation,
    verify_itree_expectation,
    verify_prefix_decomposition,
)
from .errors import BudgetError, InputError
from .harness import ExperimentConfig, parse_omega, run_experiment

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _add_instance_args(p: argparse.ArgumentParser, llr: bool = True) -> None:
    p.add_argument("--code", required=True, help="code definition file")
    p.add_argument("--x", required=True, help="codeword bitstring")
    if llr:
        p.add_argument("--llr", required=True, help="LLR file, one rational per line")
    p.add_argument("--h", type=int, required=True, help="half tree height")
    p.add_argument("--omega", required=True,
                   help="schedule: uniform:c | geometric:r | comma list of rationals")
    p.add_argument("--i", type=int, required=True, help="local-code node tree degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanner-cert",
        description="Local-optimality certificates and exact decoding for Tanner codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="compute a local-optimality certificate")
    _add_instance_args(p)
    p.add_argument("--witness", action="store_true",
                   help="include the minimizing tree for the worst root")

    p = sub.add_parser("ml-decode", help="exhaustive maximum-likelihood decoding")
    p.add_argument("--code", required=True)
    p.add_argument("--llr", required=True)

    p = sub.add_parser("lp-decode", help="exact LP decoding")
    p.add_argument("--code", required=True)
    p.add_argument("--llr", required=True)
    p.add_argument("--skip-unique", action="store_true",
                   help="skip the uniqueness LPs")

    p = sub.add_parser("verify-lemma", help="exact decomposition identity checks")
    p.add_argument("--which", type=int, choices=(2, 3, 4), required=True,
                   help="2: codeword expectation, 3: prefix-tree sum, 4: i-tree expectation")
    _add_instance_args(p, llr=False)
    p.add_argument("--root", type=int, default=None,
                   help="single root for --which 4 (default: all support roots)")

    p = sub.add_parser("cover-check", help="certificate preservation on M-covers")
    _add_instance_args(p)
    p.add_argument("--M", type=int, required=True, dest="m", help="cover degree")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true",
                   help="use the all-identity cyclic cover instead of random covers")

    p = sub.add_parser("run", help="run an experiment batch")
    p.add_argument("--config", required=True, help="flat key = value config file")

    p = sub.add_parser("plot", help="re-render figures from a results.json")
    p.add_argument("--results", required=True)
    p.add_argument("--out", default=None, help="figure directory (default: alongside)")
    return parser


def _cmd_certify(args) -> int:
    code = load_code(args.code)
    x = parse_word(args.x)
    llr = read_llr_file(args.llr)
    omega = parse_omega(args.omega, args.h)
    report = certify(code, x, llr, args.h, omega, args.i,
                     want_witness=args.witness)
    _emit(report.to_json_dict())
    return EXIT_OK if report.certified else EXIT_NEGATIVE


def _cmd_ml(args) -> int:
    code = load_code(args.code)
    llr = read_llr_file(args.llr)
    _emit(ml_decode(code, llr).to_json_dict())
    return EXIT_OK


def _cmd_lp(args) -> int:
    code = load_code(args.code)
    llr = read_llr_file(args.llr)
    result = lp_decode(code, llr, check_unique=not args.skip_unique)
    _emit(result.to_json_dict())
    return EXIT_OK


def _cmd_verify(args) -> int:
    code = load_code(args.code)
    x = parse_word(args.x)
    omega = parse_omega(args.omega, args.h)
    if args.which == 3:
        report = verify_prefix_decomposition(code, x, args.h, omega)
        _emit(report.to_json_dict())
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    if args.which == 2:
        report = verify_codeword_expectation(code, x, args.h, args.i, omega)
        _emit(report.to_json_dict())
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    sub = code.induced_support_graph(x)
    roots = [args.root] if args.root is not None else list(sub.variables)
    if not roots:
        raise InputError("no support roots; supply a nonzero codeword")
    reports = [
        verify_itree_expectation(sub, r, args.h, args.i, omega) for r in roots
    ]
    ok = all(r.passed for r in reports)
    _emit({
        "identity": "itree-expectation",
        "passed": ok,
        "roots": {str(r.params["root"]): r.passed for r in reports},
    })
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_cover(args) -> int:
    code = load_code(args.code)
    x = parse_word(args.x)
    llr = read_llr_file(args.llr)
    omega = parse_omega(args.omega, args.h)
    log = []
    violations = 0
    for t in range(args.trials):
        rep = check_cover_optimality(
            code, x, llr, args.h, omega, args.i, args.m,
            seed=args.seed + t, deterministic=args.deterministic,
        )
        entry = rep.to_json_dict()
        entry["trial"] = t
        log.append(entry)
        violations += rep.violation
    _emit({"m": args.m, "trials": args.trials, "violations": violations,
           "log": log})
    return EXIT_OK if violations == 0 else EXIT_NEGATIVE


def _cmd_run(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    outcome = run_experiment(config)
    _emit({
        "summary": outcome.summary,
        "csv": str(outcome.csv_path),
        "json": str(outcome.json_path),
        "figures": [str(p) for p in outcome.figure_paths],
    })
    return EXIT_NEGATIVE if outcome.failed else EXIT_OK


def _cmd_plot(args) -> int:
    from .figures import render_experiment_figures
    from .harness import _record_from_dict

    payload = json.loads(Path(args.results).read_text())
    records = [_record_from_dict(d) for d in payload["records"]]
    out = Path(args.out) if args.out else Path(args.results).parent / "figures"
    paths = render_experiment_figures(records, payload["summary"], out)
    _emit({"figures": [str(p) for p in paths]})
    return EXIT_OK


_HANDLERS = {
    "certify": _cmd_certify,
    "ml-decode": _cmd_ml,
    "lp-decode": _cmd_lp,
    "verify-lemma": _cmd_verify,
    "cover-check": _cmd_cover,
    "run": _cmd_run,
    "plot": _cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (InputError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
