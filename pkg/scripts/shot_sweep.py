"""Median localization error versus shot count on synthetic testbeds.

    python scripts/shot_sweep.py --testbeds 42 --seeds 20 --out results/
"""

import argparse
from pathlib import Path

from qloc.harness import DEFAULT_SHOT_LIST, TestbedConfig, generate_testbed, run_shot_sweep, save_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--testbeds", default="42", help="comma-separated testbed seeds")
    ap.add_argument("--seeds", type=int, default=20, help="shot seeds per testbed")
    ap.add_argument("--shot-list", default=",".join(map(str, DEFAULT_SHOT_LIST)))
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    shots = [int(k) for k in args.shot_list.split(",")]
    for tb in (int(s) for s in args.testbeds.split(",")):
        db, samples = generate_testbed(TestbedConfig(seed=tb))
        rep = run_shot_sweep(db, samples, shots, list(range(args.seeds)))
        path = Path(args.out) / f"sweep_testbed{tb}.csv"
        save_table(rep.header, rep.rows, path)
        print(f"testbed {tb}: " + "  ".join(f"{k}:{m:.2f}" for k, m in rep.rows) + f"  -> {path}")


if __name__ == "__main__":
    main()
