"""Command-line interface: JSON reports over the library's check suites.

Every subcommand prints exactly one JSON document on stdout and exits with
0 when all checks pass, 1 when a check fails, and 2 when the input cannot
be parsed or validated (with a diagnostic on stderr).  Identical invocations
produce byte-identical reports; --pretty only reformats.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import algebra, effect, free
from .duality import DualityError, hs_forward, hs_inverse
from .linalg import (
    DEFAULT_TOL,
    LinalgError,
    matrix_from_json,
    matrix_to_json,
    max_norm,
)
from .operators import OperatorKind, classify, sample
from .wp import (
    Channel,
    ChannelError,
    InvalidChannel,
    apply_channel,
    mixture_channel,
    super_channel,
    unitary_channel,
    wp as weakest_precondition,
)

_KIND_FLAGS = {
    "bounded": OperatorKind.BOUNDED,
    "self-adjoint": OperatorKind.SELF_ADJOINT,
    "positive": OperatorKind.POSITIVE,
    "effect": OperatorKind.EFFECT,
    "density": OperatorKind.DENSITY,
}


class _InputError(Exception):
    """Anything wrong with user-supplied files or flags (exit code 2)."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_matrix(path: str) -> np.ndarray:
    try:
        return matrix_from_json(_load_json(path))
    except (ValueError, LinalgError) as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _parse_weight(w) -> Fraction:
    if isinstance(w, str):
        return Fraction(w)
    if isinstance(w, float):
        return Fraction(str(w))
    return Fraction(w)


def _parse_channel(obj, tol: float, seed: int) -> Channel:
    if not isinstance(obj, dict) or "type" not in obj:
        raise _InputError("channel JSON must be an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "unitary":
            return unitary_channel(matrix_from_json(obj["matrix"]), tol)
        if kind == "mixture":
            weights = [_parse_weight(w) for w in obj["weights"]]
            parts = [_parse_channel(p, tol, seed) for p in obj["parts"]]
            return mixture_channel(weights, parts, tol)
        if kind == "super":
            dim_in = int(obj["dim_in"])
            dim_out = int(obj["dim_out"])
            m = obj["matrix"]
            rows, cols = int(m["rows"]), int(m["cols"])
            data = m["data"]
            if len(data) != rows * cols:
                raise _InputError(f"super matrix data must list {rows * cols} entries")
            M = np.array(
                [complex(float(p[0]), float(p[1])) for p in data], dtype=np.complex128
            ).reshape(rows, cols)
            return super_channel(dim_in, dim_out, M, tol, seed=seed)
    except _InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise _InputError(f"malformed channel JSON: {exc}") from exc
    except InvalidChannel as exc:
        raise _InputError(f"invalid channel: {exc}") from exc
    raise _InputError(f"unknown channel type {kind!r}")


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))


def _seeds_from(seed: int, count: int) -> list[int]:
    rng = np.random.default_rng(seed)
    return [int(s) for s in rng.integers(0, 2**62, size=count)]


# --- subcommands -------------------------------------------------------------


def _cmd_classify(args) -> tuple[dict, bool]:
    A = _load_matrix(args.matrix)
    report = classify(A, args.tol)
    return {"matrix": args.matrix, "tol": args.tol, **report.to_json()}, True


def _cmd_duality_roundtrip(args) -> tuple[dict, bool]:
    kind = _KIND_FLAGS[args.kind]
    worst = 0.0
    worst_seed = None
    for s in _seeds_from(args.seed, args.seeds):
        A = sample(kind, args.dim, s)
        f = hs_forward(kind, A, args.tol)
        A2 = hs_inverse(kind, f, args.tol)
        residual = max_norm(A2 - A)
        if residual > worst:
            worst, worst_seed = residual, s
    passed = worst <= args.tol
    report = {
        "kind": args.kind,
        "dim": args.dim,
        "seeds": args.seeds,
        "tol": args.tol,
        "max_residual": worst,
        "pass": passed,
    }
    if not passed:
        report["counterexample_seed"] = worst_seed
    return report, passed


def _cmd_laws(args) -> tuple[dict, bool]:
    if args.suite == "monad":
        result = algebra.monad_law_suite()
        passed = not result["violations"]
        return {"suite": "monad", **result, "pass": passed}, passed

    if args.instance is None:
        raise _InputError("laws needs --suite monad or --instance <name>")
    if args.instance == "interval":
        inst = effect.make_unit_interval()
    elif args.instance == "powerset":
        inst = effect.make_powerset(args.dim)
    elif args.instance == "effects":
        inst = effect.make_effects(args.dim, args.tol)
    elif args.instance == "projections":
        inst = effect.make_projections(args.dim, args.tol)
    else:  # unreachable through argparse choices
        raise _InputError(f"unknown instance {args.instance!r}")
    report = effect.law_suite(inst, samples=args.samples, seed=args.seed, tol=args.tol)
    return report.to_json(), report.all_pass


def _free_iso_residual(which: str, dim: int, s: int) -> float:
    if which == "s":
        B = sample(OperatorKind.POSITIVE, dim, s)
        u = free.s_iso_pos_dm(B)
        return max_norm(free.s_iso_dm_pos(u, dim) - B)
    if which == "r":
        A = sample(OperatorKind.SELF_ADJOINT, dim, s)
        return max_norm(free.r_iso_pos_sa(free.r_iso_sa_pos(A)) - A)
    if which == "c":
        B = sample(OperatorKind.BOUNDED, dim, s)
        return max_norm(free.c_iso_sa_b(free.c_iso_b_sa(B)) - B)
    # chain: complex combination of scaled densities, rebuilt stepwise
    rng = np.random.default_rng(s)
    rhos = [sample(OperatorKind.DENSITY, dim, int(x)) for x in rng.integers(0, 2**62, size=4)]
    w = [float(x) for x in rng.uniform(0.1, 2.0, size=4)]
    target = (w[0] * rhos[0] - w[1] * rhos[1]) + 1j * (w[2] * rhos[2] - w[3] * rhos[3])
    re = free.r_iso_pos_sa(
        free.Difference(
            free.s_iso_dm_pos(free.s_point(w[0], rhos[0]), dim),
            free.s_iso_dm_pos(free.s_point(w[1], rhos[1]), dim),
        )
    )
    im = free.r_iso_pos_sa(
        free.Difference(
            free.s_iso_dm_pos(free.s_point(w[2], rhos[2]), dim),
            free.s_iso_dm_pos(free.s_point(w[3], rhos[3]), dim),
        )
    )
    return max_norm(free.c_iso_sa_b(free.ComplexPair(re, im)) - target)


def _cmd_free_iso(args) -> tuple[dict, bool]:
    worst = 0.0
    worst_seed = None
    for s in _seeds_from(args.seed, args.seeds):
        residual = _free_iso_residual(args.which, args.dim, s)
        if residual > worst:
            worst, worst_seed = residual, s
    passed = worst <= args.tol
    report = {
        "which": args.which,
        "dim": args.dim,
        "seeds": args.seeds,
        "tol": args.tol,
        "max_residual": worst,
        "pass": passed,
    }
    if not passed:
        report["counterexample_seed"] = worst_seed
    return report, passed


def _cmd_wp(args) -> tuple[dict, bool]:
    channel = _parse_channel(_load_json(args.channel), args.tol, args.seed)
    A = _load_matrix(args.effect)
    try:
        W = weakest_precondition(channel, A, args.tol)
    except (ChannelError, DualityError) as exc:
        raise _InputError(str(exc)) from exc
    report = {"wp": matrix_to_json(W), "tol": args.tol}
    passed = True
    if args.check_duality:
        worst = 0.0
        for s in _seeds_from(args.seed, args.check_duality):
            rho = sample(OperatorKind.DENSITY, channel.dim_in, s)
            lhs = np.trace(apply_channel(channel, rho, args.tol) @ A)
            rhs = np.trace(rho @ W)
            worst = max(worst, abs(complex(lhs) - complex(rhs)))
        passed = worst <= args.tol
        report["duality_residual"] = worst
        report["pass"] = passed
    return report, passed


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsdual",
        description="operator kinds, trace-pairing duality, effect algebras, "
        "free constructions, and weakest preconditions",
    )
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")

    # The same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="report the kinds of a matrix")
    p.add_argument("--matrix", required=True, help="path to a matrix JSON file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("duality-roundtrip", parents=[common], help="operator -> functional -> operator residuals")
    p.add_argument("--kind", choices=sorted(_KIND_FLAGS), required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seeds", type=int, default=50)
    p.set_defaults(func=_cmd_duality_roundtrip)

    p = sub.add_parser("laws", parents=[common], help="monad laws or effect-algebra laws")
    p.add_argument("--suite", choices=["monad"], default=None)
    p.add_argument(
        "--instance",
        choices=["interval", "powerset", "effects", "projections"],
        default=None,
    )
    p.add_argument("--dim", type=int, default=2, help="dimension / ground-set size")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=_cmd_laws)

    p = sub.add_parser("free-iso", parents=[common], help="free-construction isomorphism residuals")
    p.add_argument("--which", choices=["s", "r", "c", "chain"], required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seeds", type=int, default=50)
    p.set_defaults(func=_cmd_free_iso)

    p = sub.add_parser("wp", parents=[common], help="weakest precondition of an effect under a channel")
    p.add_argument("--channel", required=True, help="path to a channel JSON file")
    p.add_argument("--effect", required=True, help="path to an effect matrix JSON file")
    p.add_argument(
        "--check-duality",
        type=int,
        default=0,
        metavar="M",
        help="verify tr(f(rho) A) = tr(rho W) on M sampled densities",
    )
    p.set_defaults(func=_cmd_wp)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, passed = args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LinalgError, DualityError, algebra.AlgebraError, ChannelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.pretty)
    return 0 if passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
