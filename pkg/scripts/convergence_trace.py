#!/usr/bin/env python3
"""Print the per-iteration relative change of one completion run.

Generates a synthetic instance, solves it, and prints the stopping
statistic against the iteration count (a text rendering of the usual
convergence plot), plus the final RSE.
"""

import argparse
import sys

from wstnn.solvers import LrtcConfig, lrtc_solve
from wstnn.synth import CpSpec, gen_cp_tensor, rse, sample_mask
from wstnn.ntubal import weights_uniform

import numpy as np


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shape", default="30,30,30")
    parser.add_argument("--rank", type=int, default=2)
    parser.add_argument("--sr", type=float, default=0.5)
    parser.add_argument("--tau", type=float, default=10.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    shape = tuple(int(n) for n in args.shape.split(","))
    seed = np.random.SeedSequence(entropy=args.seed, spawn_key=(0, 0))
    gen_seed, mask_seed = seed.spawn(2)
    truth = gen_cp_tensor(CpSpec(shape, args.rank, gen_seed))
    mask = sample_mask(shape, args.sr, mask_seed)
    cfg = LrtcConfig(alpha=weights_uniform(len(shape)), tau=args.tau)
    xhat, report = lrtc_solve(np.where(mask, truth, 0.0), mask, cfg)

    lo = min(report.rel_change_trace)
    for i, rel in enumerate(report.rel_change_trace, start=1):
        bar = "#" * max(1, int(50 * np.log(rel / lo + 1e-300) /
                                np.log(report.rel_change_trace[0] / lo + 1e-300)))
        print(f"{i:>4} {rel:.3e} {bar}")
    print(f"\nstopped after {report.iterations} iterations "
          f"({report.wall_time:.2f} s), RSE = {rse(xhat, truth):.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
