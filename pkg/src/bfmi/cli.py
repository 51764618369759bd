"""Command-line interface.

Subcommands: compute, verify, karamata, exhaustive, sweep, reduce-check.
Probabilities are exact slash rationals (e.g. ``--p 3/8``); grids come
from ``--p-den D`` as p = k/D for k = 0..D/2.  Exit codes: 0 = all
checks pass, 1 = some check failed, 2 = usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .boolfn import Class1, Class2, Class3, Class4, Dictator, TruthTable, make_class, parse_class_spec
from .channel import joint_yz
from .karamata import build_karamata_sequences, certify_instance
from .mi import mutual_information
from .verify import (
    DEFAULT_P_GRID,
    PASS_MARGIN_TOLERANCE,
    certificate_to_dict,
    exhaustive_check,
    class3_reduction_check,
    marginal_spot_check,
    reports_to_csv,
    reports_to_json,
    summaries_to_csv,
    summaries_to_json,
    sweep,
    verify_class,
)


def _parse_p(text: str) -> Fraction:
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if not 0 <= p <= Fraction(1, 2):
        raise argparse.ArgumentTypeError(f"p must be in [0, 1/2], got {p}")
    return p


def _grid(args) -> tuple[Fraction, ...]:
    if getattr(args, "p", None) is not None:
        return (args.p,)
    den = getattr(args, "p_den", None) or 64
    if not 1 <= den <= 4096:
        raise ValueError(f"--p-den must be in 1..4096, got {den}")
    return tuple(Fraction(k, den) for k in range(den // 2 + 1))


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _load_table(args) -> TruthTable:
    if args.table:
        with open(args.table) as fh:
            table = TruthTable.from_json(fh.read())
        if args.n is not None and args.n != table.n:
            raise ValueError(f"--n {args.n} disagrees with table file (n={table.n})")
        return table
    if args.function is None:
        raise ValueError("provide --function or --table")
    if args.n is None:
        raise ValueError("--n is required with --function")
    return make_class(args.n, parse_class_spec(args.function))


def _expand_class_specs(text: str, n_max: int):
    """Family names expand to concrete specs; full specs pass through."""
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        if name == "all":
            yield Class1()
            yield Class2()
            for r in range(1, n_max):
                yield Class3(r)
                yield Class4(r)
        elif name == "class1":
            yield Class1()
        elif name == "class2":
            yield Class2()
        elif name == "class3":
            for r in range(1, n_max):
                yield Class3(r)
        elif name == "class4":
            for r in range(1, n_max):
                yield Class4(r)
        elif name == "dictator":
            yield Dictator()
        else:
            yield parse_class_spec(name)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_parse_p, help="exact error probability, e.g. 3/8")
    common.add_argument("--p-den", type=int, help="grid denominator: p = k/D, k = 0..D/2 (default 64)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the scan tiers")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")

    parser = argparse.ArgumentParser(prog="mi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", parents=[common], help="MI, bound and margin for one function")
    p_compute.add_argument("--n", type=int)
    p_compute.add_argument("--function", help="class spec, e.g. class1:i=0 or class3:r=2:prefix=1")
    p_compute.add_argument("--table", help="truth-table JSON file")
    p_compute.add_argument("--dump-joint", help="write the exact joint table as CSV")

    p_verify = sub.add_parser("verify", parents=[common], help="bound checks over an (n, p) grid")
    p_verify.add_argument("--classes", default="class1,class2,class3,class4")
    p_verify.add_argument("--n-min", type=int, default=2)
    p_verify.add_argument("--n-max", type=int, default=6)
    p_verify.add_argument("--lemma-samples", type=int, default=0,
                          help="additionally spot-check the marginal identity this many times")

    p_karamata = sub.add_parser("karamata", parents=[common], help="exact majorization certificate")
    p_karamata.add_argument("--n", type=int, required=True)
    p_karamata.add_argument("--dump-sums", help="write per-prefix partial sums as CSV")

    p_exh = sub.add_parser("exhaustive", parents=[common], help="scan all truth tables of a small n")
    p_exh.add_argument("--n", type=int, required=True)
    p_exh.add_argument("--canonical", action="store_true", help="scan one representative per orbit")

    p_sweep = sub.add_parser("sweep", parents=[common], help="margin curve over p = k/p_den")
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--function", required=True)

    p_red = sub.add_parser("reduce-check", parents=[common],
                           help="subcube MI on n variables vs single-one MI on r")
    p_red.add_argument("--n", type=int, required=True)
    p_red.add_argument("--r", type=int, required=True)

    return parser


def _cmd_compute(args) -> int:
    if args.p is None:
        raise ValueError("compute needs --p")
    table = _load_table(args)
    joint = joint_yz(table, args.p)
    if args.dump_joint:
        joint.write_csv(args.dump_joint)
    result = mutual_information(joint)
    _emit(
        json.dumps(
            {"mi_bits": result.mi_bits, "bound_bits": result.bound_bits, "margin_bits": result.margin_bits},
            indent=2,
        ),
        args.out,
    )
    return 0


def _cmd_verify(args) -> int:
    grid = _grid(args)
    n_range = range(args.n_min, args.n_max + 1)
    reports = []
    for cls in _expand_class_specs(args.classes, args.n_max):
        reports.extend(verify_class(cls, n_range, grid))
    text = reports_to_json(reports) if args.format == "json" else reports_to_csv(reports)
    _emit(text, args.out)
    ok = all(r.status == "pass" for r in reports)
    if args.lemma_samples:
        checks = marginal_spot_check(samples=args.lemma_samples, seed=args.seed)
        ok = ok and all(c["ok"] for c in checks)
        print(f"marginal identity spot checks: {sum(c['ok'] for c in checks)}/{len(checks)} ok",
              file=sys.stderr)
    return 0 if ok else 1


def _cmd_karamata(args) -> int:
    if args.p is None:
        if args.dump_sums:
            raise ValueError("--dump-sums needs a single --p")
        # hardening mode: certify the whole grid
        entries = []
        ok = True
        for p in _grid(args):
            cert = certify_instance(build_karamata_sequences(args.n, p))
            ok = ok and cert.holds
            entries.append({"n": args.n, "p": str(p), **certificate_to_dict(cert)})
        _emit(json.dumps({"version": 1, "certificates": entries}, indent=2), args.out)
        return 0 if ok else 1
    inst = build_karamata_sequences(args.n, args.p)
    cert = certify_instance(inst)
    if args.dump_sums:
        with open(args.dump_sums, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "SL_num", "SL_den", "SR_num", "SR_den", "ok"])
            sl = Fraction(0)
            sr = Fraction(0)
            k = 0
            for (xv, xc), (yv, yc) in _zip_runs(inst.x_seq, inst.y_seq):
                for _ in range(xc):
                    k += 1
                    sl += yv
                    sr += xv
                    writer.writerow(
                        [k, sl.numerator, sl.denominator, sr.numerator, sr.denominator, sl <= sr]
                    )
    _emit(json.dumps({"n": args.n, "p": str(inst.p), **certificate_to_dict(cert)}, indent=2), args.out)
    return 0 if cert.holds else 1


def _zip_runs(x_seq, y_seq):
    """Merged run segments of two equal-length sequences: ((xv, c), (yv, c))."""
    ix = iy = 0
    rem_x = x_seq.runs[0][1]
    rem_y = y_seq.runs[0][1]
    while ix < len(x_seq.runs) and iy < len(y_seq.runs):
        step = min(rem_x, rem_y)
        yield (x_seq.runs[ix][0], step), (y_seq.runs[iy][0], step)
        rem_x -= step
        rem_y -= step
        if rem_x == 0:
            ix += 1
            if ix < len(x_seq.runs):
                rem_x = x_seq.runs[ix][1]
        if rem_y == 0:
            iy += 1
            if iy < len(y_seq.runs):
                rem_y = y_seq.runs[iy][1]


def _cmd_exhaustive(args) -> int:
    summaries = exhaustive_check(
        args.n, _grid(args), use_canonicalization=args.canonical, jobs=args.jobs
    )
    text = summaries_to_json(summaries) if args.format == "json" else summaries_to_csv(summaries)
    _emit(text, args.out)
    return 0 if all(s.max_margin >= -PASS_MARGIN_TOLERANCE for s in summaries) else 1


def _cmd_sweep(args) -> int:
    den = args.p_den or 64
    rows = list(sweep(args.function, args.n, den))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["p", "mi_bits", "bound_bits", "margin_bits"])
    for p, mi_bits, bound_bits, margin_bits in rows:
        writer.writerow([str(p), repr(mi_bits), repr(bound_bits), repr(margin_bits)])
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_reduce_check(args) -> int:
    if args.p is None:
        raise ValueError("reduce-check needs --p")
    mi_full, mi_reduced = class3_reduction_check(args.n, args.r, args.p)
    diff = abs(mi_full - mi_reduced)
    _emit(
        json.dumps({"mi_full": mi_full, "mi_reduced": mi_reduced, "abs_diff": diff}, indent=2),
        args.out,
    )
    return 0 if diff <= 1e-12 else 1


_COMMANDS = {
    "compute": _cmd_compute,
    "verify": _cmd_verify,
    "karamata": _cmd_karamata,
    "exhaustive": _cmd_exhaustive,
    "sweep": _cmd_sweep,
    "reduce-check": _cmd_reduce_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"mi: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
