"""Command-line front end.

Commands load algebras and functionals from JSON, dispatch to the library
and emit a JSON report.  Exit codes: 0 on success, 2 on mathematical
failure (not representable, no convergence, domination or order violations,
failed cross-checks), 1 on I/O, parse or usage problems.  Every report
embeds the tolerance, the seed and the library version; the environment
variable FUNCORD_SEED overrides --seed when set.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (
    BadToleranceError,
    ConfigError,
    ConstructionError,
    CrossCheckFailedError,
    FuncordError,
    InvalidDecompositionError,
    MissingInputError,
    NoConvergenceError,
    NotDominatedError,
    NotMatrixAlgebraError,
    NotRepresentableError,
    OrderViolationError,
    ToleranceConflictError,
    UnknownCommandError,
    VerificationFailedError,
)
from .functional import gns_triple, gram_matrix, hilbert_bound, is_representable
from .intervals import infimum, is_extreme_in_interval
from .lebesgue import lebesgue_decompose
from .parallel import parallel_sum
from . import diffcheck, jsonio
from .algebra import validate_structure
from .oracles import truncated_counterexample_trend

COMMANDS = ("validate", "gram", "gns", "parsum", "lebesgue", "extreme",
            "infimum", "oracle-check", "trend")

_MATH_ERRORS = (NotRepresentableError, NoConvergenceError, NotDominatedError,
                InvalidDecompositionError, VerificationFailedError,
                CrossCheckFailedError, ToleranceConflictError,
                OrderViolationError)


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    tol: float = 1e-7
    seed: int = 0
    out: str | None = None
    backend: str | None = None
    suite: str | None = None
    cases: int = 100
    trunc: int = 32
    pretty: bool = False


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so errors map to exit codes."""

    def error(self, message):
        if "invalid choice" in message and "command" in message:
            raise UnknownCommandError(message)
        if "required" in message:
            raise MissingInputError(message)
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="funcord", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, **flags):
        p = sub.add_parser(name)
        for flag, required in flags.items():
            p.add_argument(f"--{flag}", required=required)
        p.add_argument("--algebra", help="algebra JSON for label references")
        p.add_argument("--tol", default="1e-7")
        p.add_argument("--seed", default="0")
        p.add_argument("--out")
        p.add_argument("--pretty", action="store_true")
        return p

    add("validate")
    add("gram", f=True)
    add("gns", f=True)
    add("parsum", f=True, g=True)
    add("lebesgue", f=True, g=True)
    add("extreme", h=True, lo=True, hi=True)
    p = add("infimum", f=True, g=True)
    p.add_argument("--backend", choices=("generic", "matrix", "commutative"))
    p = add("oracle-check")
    p.add_argument("--suite", choices=("commutative", "matrix", "trend"),
                   required=True)
    p.add_argument("--cases", default="100")
    p = add("trend")
    p.add_argument("--d", default="32")
    return parser


def parse_config(argv) -> RunConfig:
    args = _build_parser().parse_args(argv)
    try:
        tol = float(args.tol)
    except ValueError:
        raise BadToleranceError(f"--tol {args.tol!r} is not a number") from None
    if not tol > 0.0 or not np.isfinite(tol):
        raise BadToleranceError(f"--tol must be a positive number, got {tol!r}")
    try:
        seed = int(args.seed)
    except ValueError:
        raise ConfigError(f"--seed {args.seed!r} is not an integer") from None

    inputs = {}
    for key in ("f", "g", "h", "lo", "hi", "algebra"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value
    cfg = RunConfig(
        command=args.command,
        inputs=inputs,
        tol=tol,
        seed=seed,
        out=args.out,
        backend=getattr(args, "backend", None),
        suite=getattr(args, "suite", None),
        cases=int(getattr(args, "cases", 100)),
        trunc=int(getattr(args, "d", 32)),
        pretty=args.pretty,
    )
    if cfg.command == "validate" and "algebra" not in cfg.inputs:
        raise MissingInputError("validate needs --algebra")
    return cfg


def _load_inputs(cfg: RunConfig):
    """Resolve the algebra (if any) and every functional input."""
    registry = {}
    algebra = None
    if "algebra" in cfg.inputs:
        payload = jsonio.load_json(cfg.inputs["algebra"])
        entries = payload if isinstance(payload, list) else [payload]
        loaded = [jsonio.algebra_from_json(entry, validate=False)
                  for entry in entries]
        for alg in loaded:
            registry[alg.label] = alg
        algebra = loaded[0]

    functionals = {}
    for key in ("f", "g", "h", "lo", "hi"):
        if key not in cfg.inputs:
            continue
        obj = jsonio.load_json(cfg.inputs[key])
        ref = obj.get("algebra")
        if isinstance(ref, str) and ref in registry:
            functionals[key] = jsonio.functional_from_json(obj, registry)
        elif isinstance(ref, dict):
            # Share one instance per identical inline definition.
            marker = jsonio.dump_json(ref, None)
            if marker not in registry:
                registry[marker] = jsonio.algebra_from_json(ref)
            functionals[key] = jsonio.functional_from_json(
                obj, algebra=registry[marker])
        elif algebra is not None:
            functionals[key] = jsonio.functional_from_json(obj, algebra=algebra)
        else:
            functionals[key] = jsonio.functional_from_json(obj, registry)
    return algebra, functionals


def execute(cfg: RunConfig) -> tuple[int, dict]:
    """Run one command; returns (exit_code, report)."""
    seed = int(os.environ.get("FUNCORD_SEED", cfg.seed))
    report = {
        "command": cfg.command,
        "version": __version__,
        "tol": cfg.tol,
        "seed": seed,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    try:
        algebra, funcs = _load_inputs(cfg)
        result = _dispatch(cfg, algebra, funcs, seed)
    except _MATH_ERRORS as exc:
        report["error"] = type(exc).__name__
        report["message"] = str(exc)
        if isinstance(exc, NotRepresentableError):
            report["failed_condition"] = exc.failed_condition
        return 2, report
    except (ConfigError, ConstructionError, NotMatrixAlgebraError,
            OSError, ValueError, KeyError) as exc:
        report["error"] = type(exc).__name__
        report["message"] = str(exc)
        return 1, report
    report["result"] = result
    return 0, report


def _dispatch(cfg: RunConfig, algebra, funcs, seed) -> dict:
    command = cfg.command
    if command == "validate":
        rep = validate_structure(algebra)
        return {
            "valid": rep.valid,
            "tolerance": rep.tolerance,
            "violations": [
                {"kind": v.kind, "indices": list(v.indices),
                 "residual": v.residual}
                for v in rep.violations
            ],
        }
    if command == "gram":
        gram = gram_matrix(funcs["f"])
        return {"entries": jsonio.complex_to_pairs(gram.entries),
                "scale": gram.scale}
    if command == "gns":
        f = funcs["f"]
        rep = is_representable(f)
        if not rep.representable:
            raise NotRepresentableError(
                f"functional is not representable: {rep.failed_condition}",
                rep.failed_condition)
        triple = gns_triple(f)
        return {
            "space_dim": triple.space_dim,
            "representation": [jsonio.complex_to_pairs(m) for m in triple.rep],
            "cyclic": jsonio.complex_to_pairs(triple.cyclic),
            "hilbert_bound": hilbert_bound(f),
        }
    if command == "parsum":
        res = parallel_sum(funcs["f"], funcs["g"])
        return {
            "value": jsonio.functional_to_json(res.value),
            "projection_rank": res.projection_rank,
            "residual": res.residual,
        }
    if command == "lebesgue":
        rep = lebesgue_decompose(funcs["f"], funcs["g"], cfg.tol)
        out = rep.to_json()
        out["regular"] = jsonio.functional_to_json(rep.regular)
        out["singular"] = jsonio.functional_to_json(rep.singular)
        return out
    if command == "extreme":
        flag = is_extreme_in_interval(funcs["h"], funcs["lo"], funcs["hi"])
        return {"extreme": bool(flag)}
    if command == "infimum":
        res = infimum(funcs["f"], funcs["g"], cfg.tol, backend=cfg.backend)
        return {
            "status": res.status,
            "value": jsonio.functional_to_json(res.value) if res.value else None,
            "reason": res.reason,
        }
    if command == "oracle-check":
        if cfg.suite == "commutative":
            return diffcheck.commutative_suite(cfg.cases, seed, cfg.tol)
        if cfg.suite == "matrix":
            return diffcheck.matrix_suite(cfg.cases, seed, cfg.tol)
        return diffcheck.trend_suite(cfg.trunc)
    if command == "trend":
        rows = truncated_counterexample_trend(cfg.trunc)
        return {"rows": [[m, c] for m, c in rows]}
    raise UnknownCommandError(f"unknown command {command!r}")


def _summarize(report: dict) -> str:
    lines = [f"funcord {report['command']} (v{report['version']})"]
    if "error" in report:
        lines.append(f"  error: {report['error']}: {report['message']}")
    else:
        result = report["result"]
        for key in sorted(result):
            value = result[key]
            if isinstance(value, (int, float, str, bool)) or value is None:
                lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code, report = execute(cfg)
    text = jsonio.dump_json(report, cfg.out)
    if cfg.out is None:
        print(text)
    if cfg.pretty:
        print(_summarize(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
