"""Command-line entry point: load, check, derive, deform, classify, report.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
input errors.  Reports render as text or JSON with identical items and
deterministic ordering/number formatting, so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .axioms import check_all
from .braid_systems import (
    BraidSystemError,
    build_Gn,
    classify_majid,
    complete,
    completion_scan_bound,
    is_braid_system,
    match_family,
    sigma_family,
)
from .catalog import list_catalog, run_catalog
from .derived import DerivationError, derivation_certificates, derive, structure_identities
from .multiop import MultiOp, SingularOperatorError
from .qgspec import (
    BUILTINS,
    QGSpec,
    SpecFormatError,
    builtin,
    load,
    save,
)
from .report import merge, round3

ENV_TOL = "BRAIDCHECK_TOL"
SUITES = ("axioms", "derived", "identities", "all")


class UsageError(Exception):
    pass


class CheckAbort(Exception):
    """A check could not even be evaluated (derivation failure)."""


def _resolve_spec(name: str, tol: float | None) -> QGSpec:
    if name in BUILTINS:
        spec = builtin(name)
    elif os.path.exists(name):
        spec = load(name)
    else:
        raise UsageError(f"unknown built-in or missing file: {name}")
    if tol is not None:
        import dataclasses

        spec = dataclasses.replace(spec, tol=tol)
    return spec


def _effective_tol(args) -> float | None:
    if getattr(args, "tol", None) is not None:
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        return args.tol
    env = os.environ.get(ENV_TOL)
    if env:
        try:
            value = float(env)
        except ValueError:
            raise UsageError(f"{ENV_TOL}={env!r} is not a number") from None
        if value <= 0:
            raise UsageError(f"{ENV_TOL} must be positive")
        return value
    return None


def _emit(fmt: str, text: str, obj: dict, path: str | None = None) -> None:
    payload = (
        json.dumps(obj, indent=2, sort_keys=False) + "\n"
        if fmt == "json"
        else text + "\n"
    )
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _op_records(op: MultiOp) -> dict:
    return {
        "dim": op.dim,
        "arity_in": op.arity_in,
        "arity_out": op.arity_out,
        "entries": [
            {"indices": list(idx), "re": v.real, "im": v.imag}
            for idx, v in op.nonzeros()
        ],
    }


def _op_text(name: str, op: MultiOp) -> list[str]:
    lines = [f"{name}: {op.shape_str()}"]
    for idx, v in op.nonzeros():
        out_part = ",".join(map(str, idx[: op.arity_out]))
        in_part = ",".join(map(str, idx[op.arity_out:]))
        lines.append(f"  {name}[({out_part})<-({in_part})] = {v.real:.17g}{v.imag:+.17g}j")
    return lines


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_list(args) -> int:
    obj = {
        "command": "list",
        "builtins": sorted(BUILTINS),
        "catalog": list_catalog(),
    }
    lines = ["built-in specs:"]
    lines += [f"  {name}" for name in sorted(BUILTINS)]
    lines.append("identity catalog:")
    lines += [f"  {e['id']:<6} {e['ref']:<38} {e['description']}" for e in obj["catalog"]]
    _emit(args.format, "\n".join(lines), obj, args.output)
    return 0


def _cmd_check(args) -> int:
    tol = _effective_tol(args)
    spec = _resolve_spec(args.spec, tol)
    only = [s for s in (args.only or "").split(",") if s]
    parts = []
    if only:
        try:
            report = run_catalog(spec, subset=only)
        except KeyError as exc:
            raise UsageError(str(exc).strip("'\"")) from exc
        except DerivationError as exc:
            raise CheckAbort(str(exc)) from exc
    else:
        if args.suite in ("axioms", "all"):
            parts.append(check_all(spec))
        if args.suite in ("derived", "identities", "all"):
            try:
                der = derive(spec)
            except DerivationError as exc:
                raise CheckAbort(str(exc)) from exc
            if args.suite in ("derived", "all"):
                parts.append(derivation_certificates(spec, der))
                parts.append(structure_identities(spec, der))
            if args.suite in ("identities", "all"):
                parts.append(run_catalog(spec, der))
        report = merge(*parts)
    obj = {
        "command": "check",
        "spec": args.spec,
        "suite": "only" if only else args.suite,
        "tol": spec.tol,
        **report.to_json_obj(),
    }
    _emit(args.format, report.to_text(), obj, args.output)
    return 0 if report.overall else 1


def _cmd_derive(args) -> int:
    tol = _effective_tol(args)
    spec = _resolve_spec(args.spec, tol)
    try:
        der = derive(spec)
    except DerivationError as exc:
        raise CheckAbort(str(exc)) from exc
    if args.what == "tau":
        fmt = args.format or "text"
        obj = {"command": "derive", "what": "tau", "spec": args.spec, "tau": _op_records(der.tau)}
        text = "\n".join(_op_text("tau", der.tau))
    else:
        fmt = args.format or "json"
        names = ["tau", "tau_inv", "sigma_inv", "st_inv", "s_inv_t", "braided_mult"]
        obj = {
            "command": "derive",
            "what": "all",
            "spec": args.spec,
            "operators": {name: _op_records(getattr(der, name)) for name in names},
        }
        lines = []
        for name in names:
            lines += _op_text(name, getattr(der, name))
        text = "\n".join(lines)
    _emit(fmt, text, obj, args.output)
    return 0


def _cmd_gn(args) -> int:
    tol = _effective_tol(args)
    spec = _resolve_spec(args.spec, tol)
    try:
        result = build_Gn(spec, n=args.n)
    except (DerivationError, BraidSystemError, SingularOperatorError) as exc:
        raise CheckAbort(str(exc)) from exc
    if args.output:
        save(result.spec_n, args.output)
    obj = {
        "command": "gn",
        "spec": args.spec,
        "n": args.n,
        "output": args.output,
        **result.report.to_json_obj(),
    }
    lines = [f"G_{args.n} of {args.spec}:"]
    if args.output:
        lines.append(f"written to {args.output}")
    lines.append(result.report.to_text())
    # -o names the exported spec file, so the report always goes to stdout
    _emit(args.format, "\n".join(lines), obj)
    return 0 if result.report.overall else 1


def _cmd_braid_system(args) -> int:
    tol = _effective_tol(args)
    spec = _resolve_spec(args.spec, tol)
    try:
        lo, hi = (int(p) for p in args.range.split(".."))
    except ValueError:
        raise UsageError(f"--range must look like -2..2, got {args.range!r}") from None
    try:
        der = derive(spec)
    except DerivationError as exc:
        raise CheckAbort(str(exc)) from exc
    ops = [spec.braiding, der.tau]
    report = is_braid_system(spec, ops)
    system = complete(spec, ops, max_depth=args.depth)
    scan_lo, scan_hi = completion_scan_bound(args.depth)
    scan_lo, scan_hi = min(scan_lo, lo), max(scan_hi, hi)
    family = sigma_family(spec, der, scan_lo, scan_hi)
    system = match_family(system, family, spec.tol)
    unmatched = [i for i, n in enumerate(system.family_match) if n is None]
    obj = {
        "command": "braid-system",
        "spec": args.spec,
        "depth": args.depth,
        "range": [lo, hi],
        "scan_range": [scan_lo, scan_hi],
        "axioms_pass": report.overall,
        "round_sizes": list(system.round_sizes),
        "closed": system.closed,
        "unbounded": system.unbounded,
        "members": [
            {"index": i, "matches_n": n} for i, n in enumerate(system.family_match)
        ],
        **report.to_json_obj(),
    }
    lines = [
        f"braid system {{sigma, tau}} over {args.spec}: "
        f"{'PASS' if report.overall else 'FAIL'}",
        f"round sizes: {' -> '.join(map(str, system.round_sizes))}",
        f"closed: {'yes' if system.closed else 'no'} "
        f"(depth {system.depth_reached}"
        + (", unbounded growth" if system.unbounded else "") + ")",
        f"family match against sigma_n, n in [{scan_lo}..{scan_hi}]:",
    ]
    for i, n in enumerate(system.family_match):
        tag = f"sigma_{n}" if n is not None else "UNMATCHED"
        lines.append(f"  member {i}: {tag}")
    _emit(args.format, "\n".join(lines), obj, args.output)
    return 0 if report.overall and not unmatched else 1


def _cmd_classify(args) -> int:
    tol = _effective_tol(args)
    spec = _resolve_spec(args.spec, tol)
    try:
        cls = classify_majid(spec)
    except (DerivationError, SingularOperatorError) as exc:
        raise CheckAbort(str(exc)) from exc
    obj = {
        "command": "classify",
        "spec": args.spec,
        "tol": spec.tol,
        "m1": cls.m1,
        "ml": cls.ml,
        "mr": cls.mr,
        "m3": cls.m3,
        "majid_type": cls.majid_type,
        "mixed": cls.mixed,
        "residuals": {k: round3(v) for k, v in cls.residuals.items()},
    }
    def b(x):  # noqa: E306
        return "true" if x else "false"

    if cls.mixed:
        text = (
            "majid_type: MIXED VERDICT "
            f"(M1={b(cls.m1)}, ML={b(cls.ml)}, MR={b(cls.mr)}, M3={b(cls.m3)}) "
            "- the four conditions must agree on a valid spec"
        )
    else:
        text = (
            f"majid_type: {b(cls.majid_type)} "
            f"(M1={b(cls.m1)}, ML={b(cls.ml)}, MR={b(cls.mr)}, M3={b(cls.m3)})"
        )
    _emit(args.format, text, obj, args.output)
    return 1 if cls.mixed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidcheck",
        description="Verify braided quantum group structures given by "
        "structure-constant tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_spec=True):
        if with_spec:
            p.add_argument("spec", help="built-in name or path to a .bqg.json file")
            p.add_argument("--tol", type=float, default=None,
                           help=f"tolerance override (default: spec file or {ENV_TOL})")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", default=None, help="write the report to a file")

    p = sub.add_parser("list", help="list built-in specs and the identity catalog")
    common(p, with_spec=False)
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("check", help="run axiom and identity suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--only", default=None,
                   help="comma-separated catalog ids, e.g. 2.47,2.38")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("derive", help="derive the secondary braiding and friends")
    p.add_argument("what", choices=("tau", "all"))
    common(p)
    p.set_defaults(func=_cmd_derive, format=None)

    p = sub.add_parser("gn", help="build and certify the deformed group G_n")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_gn)

    p = sub.add_parser("braid-system", help="certify and complete {sigma, tau}")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--range", default="-2..2",
                   help="family indices to report against, pass as --range=-2..2")
    common(p)
    p.set_defaults(func=_cmd_braid_system)

    p = sub.add_parser("classify", help="counit-multiplicativity classification")
    common(p)
    p.set_defaults(func=_cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"braidcheck: {exc}", file=sys.stderr)
        return 2
    except (SpecFormatError, OSError) as exc:
        print(f"braidcheck: {exc}", file=sys.stderr)
        return 2
    except CheckAbort as exc:
        print(f"braidcheck: check aborted: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
