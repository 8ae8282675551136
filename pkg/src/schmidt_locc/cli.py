"""Command-line interface.

States are JSON objects ``{"coeffs": [...]}`` given inline, or ``@path`` to
read one from a file. Exit codes: 0 success, 1 property failure, 2 input
error, 3 infeasible request.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys

from . import equal_entropy, locc_order, suites
from .errors import EmptyRange, Infeasible, SchmidtError
from .schmidt_core import SearchConfig, entropy, make_schmidt

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


class InputError(Exception):
    """Unparseable command-line state."""


def fmt(x: float) -> str:
    return f"{x:.17g}"


# JSON forbids ".45"; accept it since that is how coefficients get written by hand
_BARE_DECIMAL = re.compile(r"(?<![\w.])(-?)\.(\d)")


def load_state(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc}") from exc
    try:
        data = json.loads(_BARE_DECIMAL.sub(r"\g<1>0.\2", text))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("coeffs")
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in data):
        raise InputError('expected {"coeffs": [numbers...]}')
    return make_schmidt(data)


def state_json(v) -> str:
    return '{"coeffs": [' + ", ".join(fmt(x) for x in v) + "]}"


def config_from(args) -> SearchConfig:
    return SearchConfig(
        entropy_tol=args.entropy_tol,
        coeff_tol=args.coeff_tol,
        max_bisection_iters=args.max_iters,
    )


def comparison_dict(result) -> dict:
    return {
        "variant": result.variant.value,
        "witness_ab": result.witness_ab,
        "witness_ba": result.witness_ba,
    }


def cmd_entropy(args, cfg, out):
    v = load_state(args.state)
    bits = entropy(v)
    if args.format == "json":
        out.write(json.dumps({"bits": bits}) + "\n")
    else:
        out.write(f"{bits:.12f}\n")
    return EXIT_OK


def cmd_classify(args, cfg, out):
    a, b = load_state(args.a), load_state(args.b)
    result = locc_order.classify(a, b, cfg.coeff_tol)
    if a.effective_rank == 3 and b.effective_rank == 3 and a.rank == b.rank:
        fast = locc_order.incomparable_rank3_fast(a, b, cfg.coeff_tol)
        if args.debug and fast != result.incomparable:
            sys.stderr.write(f"RankThreeMismatch: fast={fast} general={result.variant.value}\n")
            return EXIT_PROPERTY
    if args.format == "json":
        out.write(json.dumps(comparison_dict(result)) + "\n")
    else:
        witnesses = " ".join(
            f"{name}={k}" for name, k in (("witness_ab", result.witness_ab), ("witness_ba", result.witness_ba))
            if k is not None
        )
        out.write(f"{result.variant.value}{' ' + witnesses if witnesses else ''}\n")
    return EXIT_OK


def cmd_find_partner(args, cfg, out):
    v = load_state(args.state)
    res = equal_entropy.find_partner(v, args.beta1, cfg)
    if args.format == "json":
        out.write(json.dumps({
            "partner": list(res.partner.coeffs),
            "entropy_residual_bits": res.entropy_residual,
            "classification": comparison_dict(res.classification),
            "iterations": res.iterations,
        }) + "\n")
    else:
        out.write(f"partner: {state_json(res.partner)}\n")
        out.write(f"entropy_residual_bits: {fmt(res.entropy_residual)}\n")
        out.write(f"classification: {res.classification.variant.value}\n")
        out.write(f"iterations: {res.iterations}\n")
    return EXIT_OK


FAMILY_HEADER = ["beta1", "beta2", "beta3", "entropy_residual_bits", "differing_coeffs", "classification"]


def cmd_family(args, cfg, out):
    v = load_state(args.state)
    records = equal_entropy.family_sweep(v, args.lo, args.hi, args.steps, cfg)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FAMILY_HEADER)
    for rec in records:
        p = rec.partner
        writer.writerow([fmt(p[0]), fmt(p[1]), fmt(p[2]), fmt(rec.entropy_residual),
                         rec.differing_coeffs, rec.classification.variant.value])
    return EXIT_OK


def cmd_lift(args, cfg, out):
    a, b = equal_entropy.lift(load_state(args.a), load_state(args.b), args.kappa)
    out.write(state_json(a) + "\n" + state_json(b) + "\n")
    return EXIT_OK


def cmd_reduce(args, cfg, out):
    a, b = equal_entropy.reduce_shared(load_state(args.a), load_state(args.b), args.index, cfg)
    out.write(state_json(a) + "\n" + state_json(b) + "\n")
    return EXIT_OK


def resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SCHMIDT_LOCC_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"SCHMIDT_LOCC_SEED={env!r} is not an integer") from None


def cmd_verify(args, cfg, out):
    seed = resolve_seed(args)
    if args.trials in (None, "grid"):
        trials = None
    else:
        try:
            trials = int(args.trials)
        except ValueError:
            raise InputError(f"--trials must be an integer or 'grid', got {args.trials!r}") from None
        if trials < 1:
            raise InputError("--trials must be positive")
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        report = suites.SUITES[name](trials, seed)
        out.write(report.summary() + "\n")
        if not report.passed:
            failed = True
            out.write(json.dumps(report.counterexample, sort_keys=True) + "\n")
    return EXIT_PROPERTY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidt-locc",
        description="LOCC convertibility and equal-entropy incomparable pure states.",
    )
    parser.add_argument("--entropy-tol", type=float, default=1e-12)
    parser.add_argument("--coeff-tol", type=float, default=1e-9)
    parser.add_argument("--max-iters", type=int, default=200)
    parser.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entanglement entropy in bits")
    p.add_argument("state")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("classify", help="LOCC order between two states")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--debug", action="store_true", help="cross-check the rank-3 shortcut")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("find-partner", help="equal-entropy rank-3 partner")
    p.add_argument("state")
    p.add_argument("--beta1", type=float, required=True)
    p.set_defaults(func=cmd_find_partner)

    p = sub.add_parser("family", help="sweep partners over a beta1 grid, CSV output")
    p.add_argument("state")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("lift", help="insert a shared coefficient kappa into both states")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--kappa", type=float, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("reduce", help="remove a shared coefficient (0-based index into A)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=sorted(suites.SUITES) + ["all"], default="all")
    p.add_argument("--trials", default=None, help="trial count, or 'grid' for the exhaustive eq5 suite")
    p.add_argument("--seed", type=int, default=None, help="defaults to $SCHMIDT_LOCC_SEED, then 0")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from(args)
        return args.func(args, cfg, out)
    except (EmptyRange, Infeasible) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        bound = getattr(exc, "bound", None)
        if bound is not None:
            sys.stderr.write(f"feasibility_bound_bits: {fmt(bound)}\n")
        return EXIT_INFEASIBLE
    except (SchmidtError, InputError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
