"""Run every reproduction check and write results to an output directory.

Usage: python scripts/run_repro.py [--out results] [--quick]
"""
import argparse
import sys

from sumcoarray.cli import main

if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="results")
    p.add_argument("--quick", action="store_true")
    args = p.parse_args()
    argv = ["paper-repro", "--out", args.out] + (["--quick"] if args.quick else [])
    sys.exit(main(argv))
