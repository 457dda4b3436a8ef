#!/usr/bin/env python3
"""Watch random totally nonnegative flags contract onto the fixed flag.

For each start the script prints the chart norm along the trajectory and the
final (v, w) coordinates next to the closed-form limit
1/(2+sqrt 2) = 0.29289..., sqrt2/(2+sqrt 2) = 0.41421....

Usage: python scripts/fixed_point_demo.py [--seed N] [--starts K]
"""

import argparse
import math

import numpy as np

from tnnflow.embedding import build_rep, chart_coords, chart_line, eigenchart, lambda_for, line_of
from tnnflow.flow import DiagonalFlow, converge, flow_point, line_to_sl3_coords, trajectory
from tnnflow.totpos import sample_params, standard_word_w0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--starts", type=int, default=3)
    args = ap.parse_args()

    rep = build_rep(lambda_for(3, ()))
    chart = eigenchart(rep)
    flow = DiagonalFlow.from_chart(chart)
    rng = np.random.default_rng(args.seed)
    word = standard_word_w0(3)

    s = 2.0 + math.sqrt(2.0)
    print(f"target: v = w = ({1/s:.11f}, {math.sqrt(2)/s:.11f}, {1/s:.11f})")
    print(f"contraction rate logC = {flow.log_contraction:.11f}\n")

    for k in range(args.starts):
        params = sample_params(word, rng, group=True)
        p = chart_coords(chart, line_of(rep, params, "group"))
        run = converge(flow, p, tol=1e-9)
        times = np.linspace(0.0, run.time, 6)
        norms = np.linalg.norm(trajectory(flow, p, times), axis=1)
        print(f"start {k}: ||p|| along t = {', '.join(f'{x:.3g}' for x in norms)}")
        limit = flow_point(flow, run.time, p)
        coords = line_to_sl3_coords(chart, chart_line(chart, limit))
        v = ", ".join(f"{float(x):.11f}" for x in coords.v)
        w = ", ".join(f"{float(x):.11f}" for x in coords.w)
        print(f"  T = {run.time:.4f} (bound {run.bound:.4f})")
        print(f"  v = ({v})\n  w = ({w})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
