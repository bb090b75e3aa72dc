"""``eds-lab`` command-line front end.

Exit codes: 0 success, 2 rejected input, 3 precision exhausted,
4 internal inconsistency (recursion or exactness failure).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from edslab.analytic import PrecisionContext, analyze, predict_parities
from edslab.curve import (
    associated_curve,
    denominator_sequence,
    parse_curve,
    parse_point,
    shipsey_signs,
    short_model,
    WeierstrassCurve,
    RationalPoint,
)
from edslab.eds import EDS, discriminant, from_initial, is_nonsingular, parse_sequence
from edslab.errors import (
    EDSError,
    InputRejected,
    InternalInconsistency,
    InvalidInitial,
    NoWitnessFound,
    PrecisionExhausted,
)

SCHEMA = "eds-lab/1"

EXIT_OK, EXIT_INPUT, EXIT_PRECISION, EXIT_INTERNAL = 0, 2, 3, 4


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, PrecisionExhausted):
        return EXIT_PRECISION
    if isinstance(exc, InternalInconsistency):
        return EXIT_INTERNAL
    if isinstance(exc, (InputRejected, ValueError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def _error(exc: BaseException) -> dict:
    return {"type": type(exc).__name__, "message": str(exc), "exit_code": exit_code(exc)}


@dataclass
class AnalysisBundle:
    """Everything ``analyze`` learned; a stage's entry is ``None`` when it did not run."""

    eds: dict | None = None
    curve: dict | None = None
    analytic: dict | None = None
    signs: dict | None = None
    realizability: dict | None = None
    errors: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "eds": self.eds,
            "curve": self.curve,
            "analytic": self.analytic,
            "signs": self.signs,
            "realizability": self.realizability,
            "errors": self.errors,
            "skipped": self.skipped,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisBundle":
        if data.get("schema") != SCHEMA:
            raise InvalidInitial(f"unknown schema {data.get('schema')!r}")
        return cls(
            data["eds"], data["curve"], data["analytic"], data["signs"],
            data["realizability"], dict(data["errors"]), dict(data["skipped"]),
        )

    @property
    def exit_code(self) -> int:
        return max((e["exit_code"] for e in self.errors.values()), default=EXIT_OK)


def _load_input(args) -> dict:
    if getattr(args, "input", None):
        try:
            data = json.loads(Path(args.input).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInitial(f"cannot read {args.input}: {exc}") from exc
        return data
    if getattr(args, "initial", None):
        return {"initial": parse_sequence(args.initial)}
    raise InvalidInitial("give --initial or --input")


def _eds_from(data: dict) -> EDS:
    if "initial" not in data:
        raise InvalidInitial("input has no 'initial' quadruple")
    init = [int(v) for v in data["initial"]]
    if len(init) != 4:
        raise InvalidInitial(f"need four initial terms, got {len(init)}")
    return from_initial(*init)


def _curve_from(data: dict) -> tuple[WeierstrassCurve, RationalPoint]:
    c = data["curve"]
    E = parse_curve(",".join(str(c.get(k, 0)) for k in ("a1", "a2", "a3", "a4", "a6")))
    pt = data["point"]
    P = parse_point(pt if isinstance(pt, str) else ",".join(str(v) for v in pt))
    if not E.contains(P):
        raise InvalidInitial("point is not on the curve")
    return E, P


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_generate(args, out) -> int:
    eds = _eds_from(_load_input(args))
    terms = eds.terms(args.terms)[1:]
    if args.json:
        _emit({"schema": SCHEMA, **eds.to_dict(args.terms)}, out)
    elif args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "W_n"])
        w.writerows((n, v) for n, v in enumerate(terms, 1))
    else:
        out.write(", ".join(map(str, terms)) + "\n")
    return EXIT_OK


def _sign_stats(eds: EDS, ad, N: int) -> tuple[dict, list[tuple[int, int, int, int]]]:
    W = eds.terms(N)
    parities = predict_parities(ad, N)
    rows = []
    for n in range(1, N + 1):
        pred = -1 if parities[n - 1] else 1
        actual = (W[n] > 0) - (W[n] < 0)
        rows.append((n, W[n], pred, actual))
    matches = sum(1 for r in rows if r[2] == r[3])
    stats = {
        "checked": N,
        "matches": matches,
        "match_percent": 100.0 * matches / N if N else 100.0,
        "mismatches": [r[0] for r in rows if r[2] != r[3]][:20],
    }
    return stats, rows


def build_bundle(data: dict, precision: int, terms: int, kmax: int | None = None) -> AnalysisBundle:
    bundle = AnalysisBundle()
    ctx = PrecisionContext(precision)
    if "curve" in data:
        try:
            E, P = _curve_from(data)
            C = short_model(E, P)
            bundle.curve = {"model": E.to_dict(), "point": P.to_json(), "short": C.to_dict()}
            bundle.analytic = analyze(C, ctx).to_dict()
        except EDSError as exc:
            bundle.errors["curve"] = _error(exc)
        return bundle
    eds = _eds_from(data)
    disc = discriminant(eds)
    bundle.eds = {
        "initial": [str(v) for v in eds.initial],
        "discriminant": str(disc),
        "nonsingular": is_nonsingular(eds),
        "degenerate": eds.degenerate,
    }
    if not is_nonsingular(eds):
        bundle.skipped.update(curve="singular sequence", analytic="singular sequence", signs="singular sequence")
        return bundle
    try:
        bundle.curve = associated_curve(eds).to_dict()
        ad = analyze(eds, ctx)
        bundle.analytic = ad.to_dict()
        bundle.signs, _ = _sign_stats(eds, ad, terms)
    except EDSError as exc:
        stage = "curve" if bundle.curve is None else ("analytic" if bundle.analytic is None else "signs")
        bundle.errors[stage] = _error(exc)
    if kmax:
        from edslab.realizability import nonrealizability_witness

        try:
            w = nonrealizability_witness(eds, kmax)
            bundle.realizability = {"verdict": "NotRealizable", "witnesses": [w.to_dict()], "checked_bound": 2**kmax}
        except NoWitnessFound as exc:
            bundle.realizability = {"verdict": "Inconclusive", "witnesses": [], "checked_bound": exc.bound}
    return bundle


def cmd_analyze(args, out) -> int:
    bundle = build_bundle(_load_input(args), args.precision, args.terms, args.kmax)
    _emit(bundle.to_dict(), out)
    return bundle.exit_code


def cmd_predict_signs(args, out) -> int:
    eds = _eds_from(_load_input(args))
    ad = analyze(eds, PrecisionContext(args.precision))
    stats, rows = _sign_stats(eds, ad, args.terms)
    if args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "W_n", "predicted_sign", "actual_sign"])
        w.writerows(rows)
    else:
        _emit({"schema": SCHEMA, "analytic": ad.to_dict(), "signs": stats}, out)
    return EXIT_OK


def cmd_curve(args, out) -> int:
    if args.curve:
        E = parse_curve(args.curve)
        P = parse_point(args.point or "0,0")
        if not E.contains(P):
            raise InvalidInitial("point is not on the curve")
        result = {"schema": SCHEMA, "model": E.to_dict(), "point": P.to_json()}
        if not P.is_infinity:
            result["short"] = short_model(E, P).to_dict()
        if args.denominators:
            result["denominators"] = [str(d) for d in denominator_sequence(E, P, args.denominators)]
        if args.shipsey:
            result["shipsey"] = [str(w) for w in shipsey_signs(E, P, args.shipsey)]
        _emit(result, out)
        return EXIT_OK
    eds = _eds_from(_load_input(args))
    _emit({"schema": SCHEMA, "curve": associated_curve(eds).to_dict()}, out)
    return EXIT_OK


def cmd_realizable(args, out) -> int:
    from edslab.realizability import nonrealizability_witness, pow2_mod_periodicity, realizability_check

    result: dict = {"schema": SCHEMA}
    if args.sequence_file:
        try:
            data = json.loads(Path(args.sequence_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInitial(f"cannot read {args.sequence_file}: {exc}") from exc
        if "sequence" in data:
            values = [int(v) for v in data["sequence"]]
            bound = min(args.bound or len(values), len(values))
            report = realizability_check(values, bound)
            result.update(report.to_dict())
            _emit(result, out)
            return EXIT_OK
        eds = _eds_from(data)
    else:
        eds = _eds_from(_load_input(args))
    if args.pow2_period:
        result["pow2_periodicity"] = pow2_mod_periodicity(eds, args.e, args.kmax_period).to_dict()
    try:
        w = nonrealizability_witness(eds, args.kmax)
        result.update(verdict="NotRealizable", witnesses=[w.to_dict()], checked_bound=2**args.kmax)
    except NoWitnessFound as exc:
        result.update(verdict="Inconclusive", witnesses=[], checked_bound=exc.bound)
    _emit(result, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eds-lab", description="Elliptic divisibility sequences: signs and realizability.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("--initial", help="initial quadruple, e.g. 1,1,-1,1")
        p.add_argument("--input", help="JSON file with {initial: [...]} or {curve: {...}, point: [x, y]}")

    p = sub.add_parser("generate", help="list W_1..W_N")
    source(p)
    p.add_argument("--terms", type=int, default=20)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="curve, q, u, beta, flip and sign check")
    source(p)
    p.add_argument("--precision", type=int, default=256, help="mantissa bits")
    p.add_argument("--terms", type=int, default=100)
    p.add_argument("--kmax", type=int, default=6, help="witness search bound 2^kmax (0 to skip)")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("predict-signs", help="predicted against actual signs")
    source(p)
    p.add_argument("--precision", type=int, default=256)
    p.add_argument("--terms", type=int, default=100)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_predict_signs)

    p = sub.add_parser("curve", help="associated curve, or arithmetic on a given curve")
    source(p)
    p.add_argument("--curve", help="a1,a2,a3,a4,a6")
    p.add_argument("--point", help="x,y or O")
    p.add_argument("--denominators", type=int, default=0, help="list D_nP for n <= N")
    p.add_argument("--shipsey", type=int, default=0, help="signed sequence from the sign rule, n <= N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("realizable", help="realizability of |W_n| or of a listed sequence")
    source(p)
    p.add_argument("--sequence-file", help="JSON file with {sequence: [U_1, U_2, ...]} or {initial: [...]}")
    p.add_argument("--bound", type=int, default=0, help="check n <= bound for a listed sequence")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--pow2-period", action="store_true", help="also report W(2^k) mod 2^e periodicity")
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--kmax-period", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_realizable)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except EDSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
