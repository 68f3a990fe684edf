"""Singular values of B for both reference arrays with the rank-2 proof waveform.

Prints a table and, with --grid-seed, repeats on a jittered random grid.
"""
import argparse

import numpy as np

from sumcoarray import ARRAY_I, ARRAY_II, proof_waveform, random_grid, sensing_matrix, uniform_grid


def sv_table(grid):
    S = proof_waveform()
    return [np.linalg.svd(sensing_matrix(S, g, grid).B, compute_uv=False) for g in (ARRAY_I, ARRAY_II)]


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--V", type=int, default=16)
    p.add_argument("--grid-seed", type=int, default=None)
    args = p.parse_args()
    grid = uniform_grid(args.V) if args.grid_seed is None else random_grid(args.V, seed=args.grid_seed)
    s1, s2 = sv_table(grid)
    print(f"{'i':>2} {'array I':>12} {'array II':>12}")
    for i, (a, b) in enumerate(zip(s1, s2), start=1):
        print(f"{i:>2} {a:12.4e} {b:12.4e}")
