"""Command-line entry points.

    hpzeros run CONFIG.json [--digits N] [--degrees 25..40] [--out DIR]
                            [--workers K] [--no-plots]
    hpzeros presets [--json]
    hpzeros plot CLOUD.csv [CLOUD.csv ...] --out DIR [--viewport ...]
    hpzeros detect CLOUD.csv [CLOUD.csv ...] [--pair-factor F]
                             [--isolation-factor F]

Exit codes: 0 success, 1 invalid config or input, 2 partial (some degrees
of a run failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, pipeline, svgplot
from .pipeline import ConfigError, RunConfig
from .presets import presets
from .roots import cloud_from_csv

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpzeros",
        description="High-precision Pade / two-point Pade / Hermite-Pade experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a run described by a JSON config")
    p_run.add_argument("config", help="path to the JSON run configuration")
    p_run.add_argument("--digits", type=int, default=None, help="override working precision")
    p_run.add_argument("--degrees", default=None, help='override degrees, e.g. "25..40" or "5,10"')
    p_run.add_argument("--out", default=None, help="override output directory")
    p_run.add_argument("--workers", type=int, default=None, help="parallel degree workers")
    p_run.add_argument("--no-plots", action="store_true", help="skip SVG output")

    p_presets = sub.add_parser("presets", help="list the shipped function catalog")
    p_presets.add_argument("--json", action="store_true", help="dump the full catalog as JSON")

    p_plot = sub.add_parser("plot", help="re-plot stored root-cloud CSVs")
    p_plot.add_argument("clouds", nargs="+", help="root-cloud CSV files")
    p_plot.add_argument("--out", default=".", help="output directory")
    p_plot.add_argument("--label", default="replot")
    p_plot.add_argument("--viewport", default="-3,3,-3,3",
                        help="re_lo,re_hi,im_lo,im_hi")
    p_plot.add_argument("--marker-radius", type=float, default=2.0)

    p_detect = sub.add_parser("detect", help="re-run detectors on stored clouds")
    p_detect.add_argument("clouds", nargs="+", help="2 or 3 root-cloud CSV files")
    p_detect.add_argument("--pair-factor", type=float, default=0.5)
    p_detect.add_argument("--isolation-factor", type=float, default=3.0)
    return parser


def _cmd_run(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        config = RunConfig.from_json(
            data,
            digits=args.digits,
            degrees=args.degrees,
            out_dir=args.out,
            workers=args.workers,
            make_plots=False if args.no_plots else None,
        )
    except (OSError, json.JSONDecodeError, ConfigError, KeyError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 1
    manifest = pipeline.run(config)
    for entry in manifest["results"]:
        if entry["status"] == "ok":
            s = entry["summary"]
            froi = s.get("froissart", {})
            extra = (f"  doublets={froi.get('doublets')} singlets={froi.get('singlets')} "
                     f"triplets={froi.get('triplets')}" if froi else "")
            print(f"n={entry['n']}: ok  digits={s['digits']} defect={s['kernel_defect']} "
                  f"residual={s['residual_norm']:.3e}{extra}")
        else:
            print(f"n={entry['n']}: FAILED  {entry['error']}")
    print(f"status: {manifest['status']}  ({os.path.join(config.out_dir, 'manifest.json')})")
    if manifest["status"] == "ok":
        return 0
    return 2


def _cmd_presets(args) -> int:
    catalog = presets()
    if args.json:
        doc = [p.to_json() for p in catalog.values()]
        print(json.dumps(doc, indent=1, sort_keys=True))
        return 0
    width = max(len(name) for name in catalog)
    for name, preset in catalog.items():
        hint = f"{preset.digits_hint}d" if preset.digits_hint else "-"
        print(f"{name:<{width}}  {preset.mode:<12} {hint:>6}  {preset.note}")
    return 0


def _cmd_plot(args) -> int:
    try:
        clouds = []
        for path in args.clouds:
            with open(path, "r", encoding="utf-8") as fh:
                clouds.append(cloud_from_csv(fh.read()))
        parts = [float(v) for v in args.viewport.split(",")]
        if len(parts) != 4:
            raise ValueError("viewport needs four numbers")
        spec = svgplot.PlotSpec(
            viewport=((parts[0], parts[1]), (parts[2], parts[3])),
            families=tuple(sorted({c.family for c in clouds})),
            marker_radius=args.marker_radius,
            allow_empty=True,
            title=args.label,
        )
        svg = svgplot.scatter(clouds, spec)
    except (OSError, ValueError) as exc:
        print(f"plot failed: {exc}", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    name = svgplot.plot_filename(args.label, clouds[0].n, spec.families)
    path = os.path.join(args.out, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(path)
    return 0


def _cmd_detect(args) -> int:
    try:
        clouds = []
        for path in args.clouds:
            with open(path, "r", encoding="utf-8") as fh:
                clouds.append(cloud_from_csv(fh.read()))
        if len(clouds) not in (2, 3):
            raise ValueError("detect expects 2 or 3 cloud files")
        report = analysis.froissart_report(
            clouds,
            pair_factor=args.pair_factor,
            isolation_factor=args.isolation_factor,
        )
    except (OSError, ValueError) as exc:
        print(f"detect failed: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report.to_json(), indent=1, sort_keys=True))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "presets":
        return _cmd_presets(args)
    if args.command == "plot":
        return _cmd_plot(args)
    return _cmd_detect(args)


if __name__ == "__main__":
    sys.exit(main())
