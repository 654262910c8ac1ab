#!/usr/bin/env python3
"""Refine the built-in irrational 2x2 system and print the per-level error
table, optionally writing the trace CSV and SVG charts.

Examples:
  python scripts/run_table1.py
  python scripts/run_table1.py --sampler sa --reads 1000 --sweeps 100 --seed 7
  python scripts/run_table1.py --k 3 --step 3 --out-dir table1_k3
"""

import argparse
import os
import sys
import time

from qrefine import AnnealConfig, RefinementConfig, refine
from qrefine.cli import irrational_system
from qrefine.plots import emit_plots
from qrefine.traceio import write_trace


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sampler", choices=("exhaustive", "sa"), default="exhaustive")
    ap.add_argument("--reads", type=int, default=1000)
    ap.add_argument("--sweeps", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--k", type=int, default=1, help="bits per sign")
    ap.add_argument("--step", type=int, default=None, help="level decrement (default k)")
    ap.add_argument("--m-max", type=int, default=20)
    ap.add_argument("--l-min", type=int, default=-40)
    ap.add_argument("--out-dir", default=None, help="write trace.csv and charts here")
    args = ap.parse_args()

    anneal = None
    if args.sampler == "sa":
        anneal = AnnealConfig(reads=args.reads, sweeps=args.sweeps, seed=args.seed)
    config = RefinementConfig(
        m_max=args.m_max,
        l_min=args.l_min,
        bits_per_sign=args.k,
        level_step=args.step,
        sampler=args.sampler,
        anneal=anneal,
    )
    system, truth = irrational_system()

    t0 = time.perf_counter()
    trace = refine(system, config, truth=truth)
    elapsed = time.perf_counter() - t0

    last_by_level = {}
    order = []
    for rec in trace.records:
        if rec.level not in last_by_level:
            order.append(rec.level)
        last_by_level[rec.level] = rec

    print(f"{'level':>6}  {'solves':>6}  {'error after level':>18}")
    for level in order:
        solves = sum(1 for r in trace.records if r.level == level)
        err = last_by_level[level].error_vs_truth
        print(f"{level:>6}  {solves:>6}  {err:>18.3e}")

    print()
    for i, value in enumerate(trace.final_center.to_floats()):
        print(f"x[{i}] = {value:.18g}   (true {truth[i]:.18g})")
    print(f"final_error   = {trace.records[-1].error_vs_truth:.3e}")
    print(f"qubo_solves   = {trace.total_qubo_solves}")
    print(f"terminated_by = {trace.terminated_by}")
    print(f"wall_time     = {elapsed:.3f}s")

    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        trace_path = os.path.join(args.out_dir, "trace.csv")
        write_trace(trace, trace_path)
        written = emit_plots(trace, os.path.join(args.out_dir, "table1"), truth)
        for path in [trace_path, *written]:
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
