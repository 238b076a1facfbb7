"""Command-line entry point: ``qloc <subcommand> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .encoding import DEFAULT_FLOOR_DBM, AmplitudeVector
from .fingerprint import MatchMode
from .harness import (
    DEFAULT_SHOT_LIST,
    TestbedConfig,
    generate_testbed,
    load_fingerprints,
    load_samples,
    localize_all,
    run_cdf,
    run_compare,
    run_shot_sweep,
    save_fingerprints,
    save_samples,
    save_table,
)
from .harness.csvio import fmt
from .statevector import RngStream
from .swaptest import estimate_similarity, exact_match_probability


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QLOC_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"QLOC_SEED must be an integer, got {env!r}") from None
    return 0


def _mode(args, seed: int) -> MatchMode:
    if args.mode == "classical":
        return MatchMode.classical()
    if args.mode == "exact":
        return MatchMode.quantum_exact()
    if args.shots is None:
        raise ValueError("--mode shots requires --shots")
    return MatchMode.quantum_shots(args.shots, seed)


def _emit(header, rows, out: str | None, name: str):
    if out is None:
        print(",".join(header))
        for row in rows:
            print(",".join(fmt(v) for v in row))
    else:
        path = Path(out) / name
        save_table(header, rows, path)
        print(f"wrote {path}")


def cmd_gen(args) -> int:
    cfg = TestbedConfig(
        ap_count=args.ap_count,
        train_count=args.train_count,
        test_count=args.test_count,
        shadowing_sigma=args.sigma,
        path_loss_exponent=args.gamma,
        rss_floor=args.floor,
        seed=_seed(args),
    )
    db, samples = generate_testbed(cfg)
    out = Path(args.out)
    save_fingerprints(db, out / "fingerprints.csv")
    save_samples(samples, out / "samples.csv")
    print(f"wrote {out / 'fingerprints.csv'} ({len(db)} locations) and {out / 'samples.csv'} ({len(samples)} samples)")
    return 0


def _load(args):
    return load_fingerprints(args.db, args.floor), load_samples(args.samples, args.floor)


def cmd_localize(args) -> int:
    db, samples = _load(args)
    results = localize_all(db, samples, _mode(args, _seed(args)))
    header = ("sample_id", "true_x_ft", "true_y_ft", "est_loc_id", "est_x_ft", "est_y_ft", "error_ft", "score")
    rows = [
        (r.truth.id, r.truth.x, r.truth.y, r.estimate.id, r.estimate.x, r.estimate.y, r.error_ft, r.best_score)
        for r in results
    ]
    _emit(header, rows, args.out, "localization.csv")
    return 0


def cmd_sweep(args) -> int:
    db, samples = _load(args)
    base = _seed(args)
    report = run_shot_sweep(db, samples, args.shot_list, [base + i for i in range(args.seeds)])
    _emit(report.header, report.rows, args.out, "sweep.csv")
    return 0


def cmd_cdf(args) -> int:
    db, samples = _load(args)
    report = run_cdf(db, samples, _mode(args, _seed(args)))
    _emit(report.header, report.rows, args.out, f"cdf_{args.mode}.csv")
    return 0


def cmd_compare(args) -> int:
    db, samples = _load(args)
    agreement, classical, quantum = run_compare(db, samples)
    if args.out is not None:
        save_table(classical.header, classical.rows, Path(args.out) / "cdf_classical.csv")
        save_table(quantum.header, quantum.rows, Path(args.out) / "cdf_exact.csv")
    same = classical.rows == quantum.rows
    print(f"agreement={agreement:.6f} identical_cdf={'yes' if same else 'no'}")
    return 0


def cmd_swap_test(args) -> int:
    psi = AmplitudeVector.from_values(args.psi)
    phi = AmplitudeVector.from_values(args.phi)
    p1 = exact_match_probability(psi, phi)
    if args.shots is None:
        print(f"p1={p1:.3f} similarity={1 - 2 * p1:.3f}")
    else:
        est = estimate_similarity(psi, phi, args.shots, RngStream(_seed(args)))
        print(f"p1={p1:.3f} shots={est.shots} ones={est.ones_count} similarity={est.value:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qloc", description="Swap-test fingerprint localization (simulated).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=True):
        p.add_argument("--seed", type=int, default=None, help="master seed (falls back to $QLOC_SEED, then 0)")
        p.add_argument("--floor", type=float, default=DEFAULT_FLOOR_DBM, help="RSS floor in dBm")
        p.add_argument("--out", default=None, help="output directory (stdout if omitted)")
        if data:
            p.add_argument("--db", required=True, help="fingerprints CSV")
            p.add_argument("--samples", required=True, help="test samples CSV")

    p = sub.add_parser("gen", help="generate a synthetic testbed")
    common(p, data=False)
    p.add_argument("--ap-count", type=int, default=4)
    p.add_argument("--train-count", type=int, default=24)
    p.add_argument("--test-count", type=int, default=24)
    p.add_argument("--sigma", type=float, default=4.0, help="shadowing std-dev in dB")
    p.add_argument("--gamma", type=float, default=3.0, help="path-loss exponent")
    p.set_defaults(func=cmd_gen)

    for name, func, modes in (
        ("localize", cmd_localize, ("classical", "exact", "shots")),
        ("cdf", cmd_cdf, ("classical", "exact", "shots")),
    ):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--mode", choices=modes, default="exact")
        p.add_argument("--shots", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", help="median error versus shot count")
    common(p)
    p.add_argument("--shot-list", type=_ints, default=list(DEFAULT_SHOT_LIST))
    p.add_argument("--seeds", type=int, default=20, help="number of shot seeds (seed, seed+1, ...)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="classical vs exact swap-test localization")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("swap-test", help="run one swap test on two vectors")
    p.add_argument("--psi", type=_floats, required=True)
    p.add_argument("--phi", type=_floats, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_swap_test)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "shot_list", None) == []:
        print("error: --shot-list is empty", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
