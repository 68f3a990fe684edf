"""Command-line front end.

    sumcoarray analyze     --geometry paper:array-I --waveform proof
    sumcoarray tradeoff    --geometry geom.json
    sumcoarray recover     --geometry paper:array-II --waveform proof --scene paper:scene-K4
    sumcoarray paper-repro --out results/

Exit codes: 0 success, 2 parse error, 3 budget exceeded, 4 ambiguous or
failed recovery, 5 reproduction check failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .errors import BudgetExceeded, DimensionError, NoFeasibleSupport
from .geometry import ARRAY_I, ARRAY_II, is_contiguous, is_redundant, redundancy_pattern, sum_coarray
from .identifiability import l0_recover, simulate, uniqueness_bound
from .linalg import DEFAULT_TOL, numerical_rank, singular_values
from .manifold import manifold, uniform_grid, virtual_manifold
from .rank_analysis import DEFAULT_BUDGET, kruskal_rank, structural_certificate, tradeoff_curve
from .sensing import proof_waveform, sensing_matrix, waveform_rank

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_AMBIGUOUS = 4
EXIT_REPRO_FAILED = 5


def _out_dir(args) -> Path | None:
    if not args.out:
        return None
    p = Path(args.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _tradeoff_rows(geom):
    curve = tradeoff_curve(geom)
    return curve, [
        (n_s, k, "true" if n_s == curve.optimal_n_s else "false") for n_s, k in curve.points
    ]


TRADEOFF_HEADER = ("N_s", "max_krank", "is_optimal_point")


def build_analysis(geom, S, V: int, tol: float, budget: int = DEFAULT_BUDGET) -> tuple[dict, bool]:
    """Analysis report as a JSON-ready dict, plus a flag for budget overruns."""
    ca = sum_coarray(geom)
    ups = redundancy_pattern(geom)
    curve, _ = _tradeoff_rows(geom)
    report = {
        "geometry": geom.to_dict(),
        "N_tx": geom.n_tx,
        "N_rx": geom.n_rx,
        "N_sigma": ca.size,
        "coarray": list(ca.positions),
        "contiguous": is_contiguous(ca),
        "redundant": is_redundant(geom),
        "multiplicities": [int(m) for m in ups.multiplicities],
        "tradeoff": [{"N_s": n, "max_krank": k} for n, k in curve.points],
        "optimal_N_s": curve.optimal_n_s,
        "certificates": {},
        "grid_V": V,
        "tol": tol,
    }
    for n_s in range(1, geom.n_tx + 1):
        cert = structural_certificate(ups, n_s, geom)
        report["certificates"][str(n_s)] = None if cert is None else cert.to_dict()
    over_budget = False
    if S is not None:
        sm = sensing_matrix(S, geom, uniform_grid(V))
        wf = {
            "T": S.T,
            "waveform_rank": waveform_rank(S, tol),
            "rank_W": numerical_rank(sm.W, tol),
            "singular_values_B": [float(s) for s in singular_values(sm.B)],
        }
        try:
            kr = kruskal_rank(sm.B, tol, budget)
            wf["krank_B"] = kr
            wf["identifiable_K"] = uniqueness_bound(kr)
        except BudgetExceeded as exc:
            wf["krank_B"] = f"budget exceeded: {exc}"
            over_budget = True
        wf["max_krank_bound"] = min(wf["waveform_rank"] * geom.n_rx, ca.size)
        report["waveform"] = wf
    return report, over_budget


def _print_analysis(r: dict) -> None:
    print(f"geometry        tx={r['geometry']['tx']} rx={r['geometry']['rx']}")
    print(f"N_tx, N_rx      {r['N_tx']}, {r['N_rx']}")
    print(f"N_sigma         {r['N_sigma']}  (contiguous={r['contiguous']}, redundant={r['redundant']})")
    print(f"multiplicities  {r['multiplicities']}")
    print("trade-off       " + "  ".join(f"N_s={p['N_s']}:{p['max_krank']}" for p in r["tradeoff"]))
    print(f"optimal N_s     {r['optimal_N_s']}")
    for n_s, cert in r["certificates"].items():
        if cert is None:
            print(f"certificate     N_s={n_s}: none")
        else:
            print(
                f"certificate     N_s={n_s}: Rx positions {cert['rx_positions']} alone feed "
                f"co-array positions {cert['coarray_positions']} ({len(cert['coarray_indices'])} > "
                f"{n_s}*{len(cert['rx_indices'])})"
            )
    wf = r.get("waveform")
    if wf:
        print(f"waveform rank   {wf['waveform_rank']}  (T={wf['T']})")
        print(f"rank(W)         {wf['rank_W']}")
        print(f"krank(B)        {wf['krank_B']}  (bound {wf['max_krank_bound']})")
        if "identifiable_K" in wf:
            print(f"identifiable K  {wf['identifiable_K']}")
        print("sigma(B)        " + " ".join(f"{s:.4g}" for s in wf["singular_values_B"]))


def cmd_analyze(args) -> int:
    geom = io.load_geometry(args.geometry)
    S = io.load_waveform(args.waveform, geom.n_tx) if args.waveform else None
    report, over_budget = build_analysis(geom, S, args.grid, args.tol)
    report["seed"] = args.seed
    if args.format == "json":
        print(json.dumps(report, indent=2))
    elif args.format == "csv":
        _, rows = _tradeoff_rows(geom)
        sys.stdout.write(io.csv_text(TRADEOFF_HEADER, rows))
    else:
        _print_analysis(report)
    out = _out_dir(args)
    if out:
        io.dump_json(report, out / "report.json")
        io.write_csv(out / "tradeoff.csv", TRADEOFF_HEADER, _tradeoff_rows(geom)[1])
        if "waveform" in report:
            sv = report["waveform"]["singular_values_B"]
            io.write_csv(out / "singular_values.csv", ("i", "sigma"), [(i + 1, repr(s)) for i, s in enumerate(sv)])
        if args.emit_pattern:
            (out / "pattern.csv").write_text(redundancy_pattern(geom).to_csv())
        if args.emit_manifold:
            grid = uniform_grid(args.grid)
            (out / "manifold_tx.csv").write_text(io.complex_matrix_csv(manifold(geom.tx_positions, grid).entries))
            (out / "manifold_rx.csv").write_text(io.complex_matrix_csv(manifold(geom.rx_positions, grid).entries))
            (out / "manifold_virtual.csv").write_text(io.complex_matrix_csv(virtual_manifold(geom, grid).entries))
    elif args.emit_pattern:
        sys.stdout.write(redundancy_pattern(geom).to_csv())
    return EXIT_BUDGET if over_budget else EXIT_OK


def cmd_tradeoff(args) -> int:
    geom = io.load_geometry(args.geometry)
    _, rows = _tradeoff_rows(geom)
    sys.stdout.write(io.csv_text(TRADEOFF_HEADER, rows))
    out = _out_dir(args)
    if out:
        io.write_csv(out / "tradeoff.csv", TRADEOFF_HEADER, rows)
    return EXIT_OK


def recovery_table(geom, S, scene, V, K_max, tol):
    """Run l0 recovery; returns (result, rows, exact)."""
    if scene.V != V:
        raise DimensionError(f"scene has V={scene.V} but --grid is {V}")
    grid = uniform_grid(V)
    B = sensing_matrix(S, geom, grid).B
    res = l0_recover(simulate(B, scene), B, K_max, tol)
    truth, est = scene.dense(), res.estimate.dense()
    rows = [
        (i + 1, f"{grid.theta[i]:.6f}", f"{abs(truth[i]):.6g}", f"{abs(est[i]):.6g}")
        for i in range(V)
    ]
    exact = res.unique and res.estimate.matches(scene, atol=1e-8)
    return res, rows, exact


RECOVERY_HEADER = ("index", "theta", "ground_truth", "estimate")


def cmd_recover(args) -> int:
    geom = io.load_geometry(args.geometry)
    S = io.load_waveform(args.waveform or "proof", geom.n_tx)
    scene = io.load_scene(args.scene)
    try:
        res, rows, exact = recovery_table(geom, S, scene, args.grid, args.kmax, args.recovery_tol)
    except NoFeasibleSupport as exc:
        print(f"recovery failed: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    if args.format == "csv":
        sys.stdout.write(io.csv_text(RECOVERY_HEADER, rows))
    elif args.format == "json":
        print(json.dumps({
            "sparsity_found": res.sparsity_found,
            "unique": res.unique,
            "feasible_supports": res.n_feasible,
            "residual": res.residual,
            "exact": exact,
            "estimate": io.scene_to_dict(res.estimate),
        }, indent=2))
    else:
        print(f"{'idx':>4} {'theta':>10} {'|x|':>10} {'|z|':>10}")
        for i, th, x, z in rows:
            print(f"{i:>4} {th:>10} {x:>10} {z:>10}")
        status = "exact recovery" if exact else "AMBIGUOUS: estimate differs or support not unique"
        print(f"k={res.sparsity_found} feasible supports={res.n_feasible} unique={res.unique} -> {status}")
    out = _out_dir(args)
    if out:
        io.write_csv(out / "recovery.csv", RECOVERY_HEADER, rows)
    return EXIT_OK if exact else EXIT_AMBIGUOUS


def cmd_paper_repro(args) -> int:
    from .repro import run_all

    report = run_all(tol=args.tol, seed=args.seed, quick=args.quick)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"seed {report.seed}")
        for c in report.checks:
            print(c.line())
        print(f"overall: {'PASS' if report.passed else 'FAIL'} ({report.seconds:.1f} s)")
    out = _out_dir(args)
    if out:
        io.dump_json(report.to_dict(), out / "report.json")
        io.write_csv(out / "tradeoff.csv", TRADEOFF_HEADER, _tradeoff_rows(ARRAY_I)[1])
        grid = uniform_grid(16)
        s1 = singular_values(sensing_matrix(proof_waveform(), ARRAY_I, grid).B)
        s2 = singular_values(sensing_matrix(proof_waveform(), ARRAY_II, grid).B)
        io.write_csv(out / "singular_values.csv", ("i", "array_I", "array_II"),
                     [(i + 1, repr(float(a)), repr(float(b))) for i, (a, b) in enumerate(zip(s1, s2))])
        scene = io.fixture_scene()
        rows = []
        for geom in (ARRAY_I, ARRAY_II):
            _, r, _ = recovery_table(geom, proof_waveform(), scene, 16, 4, 1e-8)
            rows.append(r)
        io.write_csv(out / "recovery.csv", ("index", "theta", "ground_truth", "estimate_I", "estimate_II"),
                     [(a[0], a[1], a[2], a[3], b[3]) for a, b in zip(*rows)])
    return EXIT_OK if report.passed else EXIT_REPRO_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geometry", default="paper:array-II", help="file | paper:array-I | paper:array-II")
    common.add_argument("--waveform", default=None, help="file | proof | random:NS:SEED")
    common.add_argument("--grid", type=int, default=16, help="grid size V")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="directory for output files")
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")

    p = argparse.ArgumentParser(prog="sumcoarray", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="co-array, trade-off, certificates and krank report")
    a.add_argument("--emit-pattern", action="store_true", help="write the redundancy pattern as 0/1 CSV")
    a.add_argument("--emit-manifold", action="store_true", help="write manifolds as re/im CSV (needs --out)")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tradeoff", parents=[common], help="max Kruskal rank vs waveform rank as CSV")
    t.set_defaults(func=cmd_tradeoff)

    r = sub.add_parser("recover", parents=[common], help="exhaustive l0 recovery of a scene")
    r.add_argument("--scene", default=io.FIXTURE_SCENE, help=f"file | {io.FIXTURE_SCENE}")
    r.add_argument("--kmax", type=int, default=4)
    r.add_argument("--recovery-tol", type=float, default=1e-8)
    r.set_defaults(func=cmd_recover)

    q = sub.add_parser("paper-repro", parents=[common], help="run every reproduction check")
    q.add_argument("--quick", action="store_true", help="smaller randomized suites")
    q.set_defaults(func=cmd_paper_repro)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "paper-repro":
        print(f"# seed {args.seed}", file=sys.stderr)
    try:
        return args.func(args)
    except (io.ParseError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
