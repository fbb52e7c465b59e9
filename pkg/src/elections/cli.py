"""Command-line front end: model fitting, simulation, and report emission.

Outputs are a pure function of the input files and flags; there are no
environment-variable overrides and no timestamps, so repeated invocations
are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import dataset as ds
from . import montecarlo as mc
from . import pca as pc
from .scenarios import format_scenarios, run_all_scenarios

VALID_START_YEARS = tuple(range(1964, 2008, 4))
MIN_ELECTIONS = 3
WARN_ELECTIONS = 8


def _load(args, parser) -> ds.ElectionDataset:
    if args.shares or args.structure:
        if not (args.shares and args.structure):
            parser.error("--shares and --structure must be given together")
        data = ds.load_dataset(args.shares, args.structure)
    else:
        data = ds.load_bundled_dataset()
    if args.start_year != 1964:
        data = data.restrict_years(args.start_year)
        if data.n_years < MIN_ELECTIONS:
            parser.error(f"--start-year {args.start_year} leaves only "
                         f"{data.n_years} elections (need >= {MIN_ELECTIONS})")
        if data.n_years < WARN_ELECTIONS:
            print(f"warning: only {data.n_years} elections remain after "
                  f"--start-year {args.start_year}", file=sys.stderr)
    return data


def _add_data_args(sub):
    sub.add_argument("--shares", help="share history CSV (default: bundled data)")
    sub.add_argument("--structure", help="turnout/elector CSV (default: bundled data)")
    sub.add_argument("--start-year", type=int, default=1964,
                     choices=VALID_START_YEARS, metavar="YEAR",
                     help="first election year to include (default 1964)")


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_pca(args, parser) -> int:
    data = _load(args, parser)
    model = pc.fit_pca(data)
    if args.loadings is not None:
        if not 1 <= args.loadings <= model.n_components:
            parser.error(f"--loadings must be in 1..{model.n_components}")
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["state", f"eigenvec{args.loadings}"])
        for name, coeff in pc.loadings_report(model, args.loadings):
            writer.writerow([name, repr(coeff)])
        return 0
    out = {
        "n": model.n,
        "years": list(data.years),
        "mean": [float(x) for x in model.mean],
        "eigenvalues": [float(x) for x in model.eigenvalues],
        "eigenvectors": [[float(x) for x in row] for row in model.eigenvectors],
        "variance_explained": [pc.variance_explained(model, k)
                               for k in range(1, model.n_components + 1)],
    }
    json.dump(out, sys.stdout, sort_keys=True, indent=2)
    print()
    return 0


def cmd_simulate(args, parser) -> int:
    data = _load(args, parser)
    model = pc.fit_pca(data)
    summary = mc.run_batch(model, data, trials=args.trials, seed=args.seed,
                           threads=args.threads, bin_width=args.bins,
                           keep_records=True)
    sweep = mc.senate_sweep(model, data, trials=args.trials, seed=args.seed,
                            k_values=args.k_values)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "run_summary.json").write_text(summary.to_json() + "\n")
    (out_dir / "senate_sweep.json").write_text(
        json.dumps(sweep.to_dict(), sort_keys=True, indent=2) + "\n")
    for kind, fname in (("scatter_HS", "scatter_hs.csv"),
                        ("diff_histogram", "diff_histogram.csv"),
                        ("california_scatter", "california_scatter.csv")):
        header, rows = mc.emit_figure_data(summary.records, kind,
                                           bin_width=args.bins)
        _write_csv(out_dir / fname, header, rows)
    if args.emit_trials:
        rows = _trial_rows(model, data, summary)
        _write_csv(out_dir / "trials.csv",
                   ["trial", "code", "dem_pop", "rep_pop", "H", "S", "diff",
                    "california"], rows)
    print(f"trials={summary.trials} seed={summary.seed}")
    print(f"unpopular_full={summary.unpopular_full:.4f} "
          f"unpopular_house={summary.unpopular_house:.4f} "
          f"states_won={sweep.states_won_limit:.4f} "
          f"dem_win_rate={summary.dem_win_rate:.4f}")
    print(f"outputs in {out_dir}")
    return 0


def _trial_rows(model, data, summary):
    import numpy as np

    from .generator import draw_noise_batch, generate_shares_batch
    rows = []
    turnout = data.turnout.astype(float)
    for r in summary.records:
        z = draw_noise_batch(summary.seed, r.trial, 1, model.n_components)
        clamped = np.clip(generate_shares_batch(model, z), 0.0, 1.0)[0]
        dem_pop = float(clamped @ turnout)
        rows.append((r.trial, r.code, repr(dem_pop),
                     repr(float(turnout.sum()) - dem_pop),
                     r.popular_winner_H, r.popular_winner_S,
                     r.signed_electoral_diff, int(bool(r.carried_california))))
    return rows


def cmd_scenario(args, parser) -> int:
    print(format_scenarios())
    results = run_all_scenarios()
    expected = {"LW": (253, 247, 5, 6, 3, 2),
                "LL": (261, 239, 3, 8, 1, 4),
                "WL": (253, 247, 6, 5, 2, 3)}
    for code, (pa, pb, fa, fb, ha, hb) in expected.items():
        r = results[code]
        got = (round(r.tally.dem_pop), round(r.tally.rep_pop),
               r.full_a, r.full_b, r.house_a, r.house_b)
        status = "ok" if got == (pa, pb, fa, fb, ha, hb) else "MISMATCH"
        print(f"{code}: popular {got[0]}-{got[1]}, full {got[2]}-{got[3]}, "
              f"house {got[4]}-{got[5]}  [{status}]")
        if status == "MISMATCH":
            return 1
    return 0


def cmd_report(args, parser) -> int:
    with open(args.summary, encoding="utf-8") as f:
        s = json.load(f)
    print(f"Simulated elections: {s['trials']} (seed {s['seed']}, "
          f"{s['n_classified']} classified)")
    print(f"Outcome codes (popular winner with full / house-only electors):")
    for code in ("WW", "WL", "LW", "LL"):
        print(f"  {code:9s} {s['counts'][code]:7d}  ({s['freq'][code]:.4f})")
    print(f"Unpopular, full electoral college:  {s['unpopular_full']:.4f}")
    print(f"Unpopular, House electors only:     {s['unpopular_house']:.4f}")
    print(f"Unpopular, states-won limit rule:   {s['states_won_unpopular']:.4f}")
    print(f"Democratic win rate (full rule):    {s['dem_win_rate']:.4f}")
    ct = s["california_crosstab"]
    print("California effect (popular winner x carried California):")
    for party in ("D", "R"):
        print(f"  {party}: carried {ct[party]['carried']}, "
              f"missed {ct[party]['missed']}")
    bins = s["diff_histogram"]["bins"]
    if bins:
        pos = sum(c for lo, hi, c in bins if lo >= 0)
        tot = sum(c for _, _, c in bins)
        print(f"Signed electoral differences in unpopular trials: "
              f"{tot} total, {pos} in nonnegative bins")
    deg = s["degenerate"]
    if deg["tied_state"] or deg["tied_popular"]:
        print(f"Degenerate trials: {deg}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elections",
        description="Monte Carlo study of unpopular presidential elections")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pca", help="fit and print the principal-components model")
    _add_data_args(p)
    p.add_argument("--loadings", type=int, metavar="J",
                   help="emit sorted state coefficients of component J as CSV")
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("simulate", help="run a simulation batch and write outputs")
    _add_data_args(p)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bins", type=int, default=mc.DEFAULT_BIN_WIDTH,
                   help="electoral-difference histogram bin width (default 20)")
    p.add_argument("--k-values", type=int, nargs="+", default=[0, 2, 10, 100],
                   help="Senate elector counts for the sweep")
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--emit-trials", action="store_true",
                   help="also write per-trial records to trials.csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scenario", help="print the three-state teaching scenarios")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("report", help="render a human-readable summary")
    p.add_argument("summary", help="path to a run_summary.json")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ds.DatasetError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (pc.PcaError, mc.MonteCarloError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
