"""Achieved Kruskal rank of B against waveform rank, both reference arrays.

For each N_s, draws a few seeded generic rank-N_s waveforms and reports the
best krank(B) next to the upper bound min(N_s * N_rx, N_sigma).
"""
import argparse

from sumcoarray import (
    ARRAY_I,
    ARRAY_II,
    kruskal_rank,
    max_krank_bound,
    random_waveform,
    sensing_matrix,
    sum_coarray,
    uniform_grid,
)

if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--draws", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    grid = uniform_grid(16)
    print(f"# seed {args.seed}")
    print("array,N_s,bound,best_krank")
    for geom in (ARRAY_I, ARRAY_II):
        n_sigma = sum_coarray(geom).size
        for n_s in range(1, geom.n_tx + 1):
            best = max(
                kruskal_rank(sensing_matrix(random_waveform(n_s, geom.n_tx, seed=args.seed + k), geom, grid).B)
                for k in range(args.draws)
            )
            print(f"{geom.name},{n_s},{max_krank_bound(n_s, geom.n_rx, n_sigma)},{best}")
