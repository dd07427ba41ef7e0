"""Orchestration: specs -> series -> solve -> roots -> detectors -> figures.

A run is described by :class:`RunConfig` (usually loaded from one JSON
document), executes every requested degree independently -- one degree
failing is recorded and does not abort the sweep -- and ends with a
manifest listing every artifact with its content hash, the full config echo
(including every detector threshold), and per-degree summaries.  Reruns with
a warm cache are byte-identical: the series cache round-trips exactly, all
downstream stages are deterministic, and the manifest carries no timestamps.

Series are cached per (canonical spec JSON, decimal digits) keyed file,
storing the longest length computed so far; shorter requests slice it, which
is exact because prefix truncation commutes with every series operation.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from gmpy2 import mpc, mpfr

from . import analysis, svgplot
from .linsys import (
    build_hp_system,
    build_pade_system,
    build_two_point_system,
    kernel_solve,
    residual_series,
)
from .precision import Precision
from .presets import MODE_ARITY, get_preset
from .roots import RootCloud, certify, cloud_to_csv, cloud_to_json, find_roots
from .series import FunctionSpec, Series, build_function_series

__all__ = ["RunConfig", "ConfigError", "run", "cached_series", "parse_degrees"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One pipeline invocation: functions, mode, degrees, outputs, toggles."""

    mode: str
    functions: tuple[FunctionSpec, ...]
    degrees: tuple[int, ...]
    out_dir: str
    label: str = "run"
    digits: int | None = None
    workers: int = 1
    make_plots: bool = True
    run_detectors: bool = True
    pair_factor: float = 0.5
    isolation_factor: float = 3.0
    viewport: tuple = ((-3.0, 3.0), (-3.0, 3.0))
    marker_radius: float = 2.0
    potential: dict | None = None     # optional GridSpec fields

    def __post_init__(self):
        if self.mode not in MODE_ARITY:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if len(self.functions) != MODE_ARITY[self.mode]:
            raise ConfigError(
                f"mode {self.mode} needs {MODE_ARITY[self.mode]} function(s), "
                f"got {len(self.functions)}"
            )
        if not self.degrees or any((not isinstance(n, int)) or n < 0 for n in self.degrees):
            raise ConfigError("degrees must be a non-empty list of nonnegative integers")
        if self.digits is not None and self.digits < 64:
            raise ConfigError("digits override must be at least 64")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def digits_for(self, n: int) -> int:
        return Precision.for_degree(n, self.digits).decimal_digits

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "label": self.label,
            "functions": [f.to_json() for f in self.functions],
            "degrees": list(self.degrees),
            "digits": self.digits,
            "out": self.out_dir,
            "workers": self.workers,
            "plots": self.make_plots,
            "detectors": self.run_detectors,
            "thresholds": {
                "pair_factor": self.pair_factor,
                "isolation_factor": self.isolation_factor,
            },
            "viewport": [list(self.viewport[0]), list(self.viewport[1])],
            "marker_radius": self.marker_radius,
            "potential": self.potential,
        }

    @classmethod
    def from_json(cls, data: dict, **overrides) -> "RunConfig":
        try:
            if "preset" in data:
                preset = get_preset(data["preset"])
                mode = data.get("mode", preset.mode)
                functions = preset.functions
                label = data.get("label", preset.name)
            else:
                mode = data["mode"]
                functions = tuple(FunctionSpec.from_json(f) for f in data["functions"])
                label = data.get("label", "run")
            degrees = parse_degrees(data.get("degrees", []))
            thresholds = data.get("thresholds", {})
            viewport = data.get("viewport", [[-3.0, 3.0], [-3.0, 3.0]])
            cfg = cls(
                mode=mode,
                functions=functions,
                degrees=degrees,
                out_dir=str(data.get("out", "hpzeros-out")),
                label=label,
                digits=data.get("digits"),
                workers=int(data.get("workers", 1)),
                make_plots=bool(data.get("plots", True)),
                run_detectors=bool(data.get("detectors", True)),
                pair_factor=float(thresholds.get("pair_factor", 0.5)),
                isolation_factor=float(thresholds.get("isolation_factor", 3.0)),
                viewport=(tuple(viewport[0]), tuple(viewport[1])),
                marker_radius=float(data.get("marker_radius", 2.0)),
                potential=data.get("potential"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid config: {exc}") from exc
        if overrides:
            valid = {k: v for k, v in overrides.items() if v is not None}
            if "degrees" in valid:
                valid["degrees"] = parse_degrees(valid["degrees"])
            cfg = replace(cfg, **valid)
        return cfg


def parse_degrees(spec) -> tuple[int, ...]:
    """Degree lists: [5, 10], {"start": 25, "stop": 40}, or "25..40" / "5,10,20"."""
    if isinstance(spec, str):
        spec = spec.strip()
        if ".." in spec:
            lo, hi = spec.split("..", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(part) for part in spec.split(",") if part.strip())
    if isinstance(spec, dict):
        return tuple(range(int(spec["start"]), int(spec["stop"]) + 1))
    if isinstance(spec, (list, tuple)):
        return tuple(int(n) for n in spec)
    raise ConfigError(f"cannot parse degrees from {spec!r}")


# --- series cache ----------------------------------------------------------

def _cache_key(spec: FunctionSpec, digits: int) -> str:
    payload = f"{spec.canonical_json()}:{digits}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:20]


def cached_series(spec: FunctionSpec, length: int, digits: int,
                  cache_dir: str | None) -> Series:
    """Series of ``length`` coefficients, through the on-disk cache if given."""
    prec = Precision(digits)
    if cache_dir is None:
        return build_function_series(spec, length - 1, prec)
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"series_{_cache_key(spec, digits)}.json")
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if data["length"] >= length:
            with prec.context():
                coeffs = tuple(
                    mpc(mpfr(re), mpfr(im)) for re, im in data["coeffs"][:length]
                )
            return Series(prec, coeffs, spec)
    series = build_function_series(spec, length - 1, prec)
    payload = {
        "spec": spec.to_json(),
        "digits": digits,
        "length": length,
        "coeffs": [[str(c.real), str(c.imag)] for c in series.coeffs],
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)
    return series


# --- per-degree stage ------------------------------------------------------

def _series_length(mode: str, n: int) -> int:
    if mode == "hermite_pade":
        return 3 * n + 2
    if mode == "pade":
        return 2 * n + 1
    return n + 1


def _solve_degree(config: RunConfig, n: int, cache_dir: str | None):
    """Series, solve, verification, roots for one degree.  Returns
    (solution, clouds) and leaves artifact assembly to the caller."""
    digits = config.digits_for(n)
    length = max(_series_length(config.mode, n), 1)
    series = [cached_series(f, length, digits, cache_dir) for f in config.functions]
    if config.mode == "hermite_pade":
        system = build_hp_system(series[0], series[1], n)
    elif config.mode == "pade":
        system = build_pade_system(series[0], n)
    else:
        system = build_two_point_system(series[0], series[1], n)
    solution = kernel_solve(system)
    verify = [cached_series(f, length, 2 * digits, cache_dir) for f in config.functions]
    residual_series(solution, verify)
    prec = Precision(digits)
    clouds = []
    for fam, poly in enumerate(solution.polys):
        if all(c == 0 for c in poly):
            continue
        cloud = find_roots(poly, prec, family=fam, n=n)
        clouds.append(certify(poly, cloud))
    return solution, clouds


def _detect(config: RunConfig, clouds: list[RootCloud], n: int):
    if len(clouds) < 2:
        return analysis.FroissartReport(n=n)
    return analysis.froissart_report(
        clouds[:3], n,
        pair_factor=config.pair_factor,
        isolation_factor=config.isolation_factor,
    )


def _run_degree(config: RunConfig, n: int, cache_dir: str | None):
    """Full per-degree pipeline.  Returns (files, summary); files maps
    relative paths to bytes and is written by the caller."""
    solution, clouds = _solve_degree(config, n, cache_dir)
    files: dict[str, bytes] = {}
    label = config.label
    sol_doc = solution.to_json()
    files[f"{label}_{n}_solution.json"] = _json_bytes(sol_doc)
    clouds_doc = {"label": label, "n": n, "clouds": [cloud_to_json(c) for c in clouds]}
    files[f"{label}_{n}_clouds.json"] = _json_bytes(clouds_doc)
    for cloud in clouds:
        files[f"{label}_{n}_family{cloud.family}.csv"] = cloud_to_csv(cloud).encode("utf-8")
    summary = {
        "n": n,
        "digits": config.digits_for(n),
        "kernel_defect": solution.kernel_defect,
        "residual_norm": float(solution.residual_norm),
        "families": [
            {
                "family": c.family,
                "roots": len(c.points),
                "flagged": int(sum(c.flags)),
                "converged": c.converged,
            }
            for c in clouds
        ],
    }
    if config.run_detectors and clouds:
        report = _detect(config, clouds, n)
        files[f"{label}_{n}_froissart.json"] = _json_bytes(report.to_json())
        summary["froissart"] = {
            "doublets": len(report.doublets),
            "singlets": len(report.singlets),
            "triplets": len(report.triplets),
        }
    if config.make_plots and clouds:
        families = tuple(c.family for c in clouds)
        spec = svgplot.PlotSpec(
            viewport=config.viewport,
            families=families,
            marker_radius=config.marker_radius,
            allow_empty=True,
            title=f"{label}  n={n}",
        )
        svg = svgplot.scatter(clouds, spec)
        files[svgplot.plot_filename(label, n, families)] = svg.encode("utf-8")
    if config.potential and clouds:
        grid = analysis.GridSpec(**config.potential)
        rows = analysis.potential_grid([c for c in clouds if c.family in (1, 2)] or clouds, grid)
        files[f"{label}_{n}_potential.csv"] = analysis.grid_to_csv(rows).encode("utf-8")
    return files, summary


def _json_bytes(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode("utf-8")


def _worker(payload):
    config_json, n = payload
    config = RunConfig.from_json(json.loads(config_json))
    cache_dir = os.path.join(config.out_dir, "cache")
    return n, _run_degree(config, n, cache_dir)


def _warm_cache(config: RunConfig, cache_dir: str):
    """Precompute the longest series per (spec, digits) group so parallel
    degrees share one cache entry instead of racing to build their own."""
    by_digits: dict[int, int] = {}
    for n in config.degrees:
        d = config.digits_for(n)
        length = _series_length(config.mode, n)
        by_digits[d] = max(by_digits.get(d, 0), length)
    for digits, length in sorted(by_digits.items()):
        for f in config.functions:
            cached_series(f, length, digits, cache_dir)
            cached_series(f, length, 2 * digits, cache_dir)


def run(config: RunConfig) -> dict:
    """Execute a full run and write out/manifest.json.  Returns the manifest.

    Any stage error aborts only its degree; the manifest records the
    diagnosis and the overall status becomes "partial" (or "failed" when
    nothing succeeded).
    """
    out_dir = config.out_dir
    os.makedirs(out_dir, exist_ok=True)
    cache_dir = os.path.join(out_dir, "cache")
    results = {}
    degrees = sorted(set(config.degrees))
    if config.workers > 1 and len(degrees) > 1:
        _warm_cache(config, cache_dir)
        payloads = [(json.dumps(config.to_json()), n) for n in degrees]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {pool.submit(_worker, p): p[1] for p in payloads}
            for future, n in futures.items():
                try:
                    _n, (files, summary) = future.result()
                    results[n] = ("ok", files, summary)
                except Exception as exc:            # per-degree isolation
                    results[n] = ("error", {}, {"error": f"{type(exc).__name__}: {exc}"})
    else:
        for n in degrees:
            try:
                files, summary = _run_degree(config, n, cache_dir)
                results[n] = ("ok", files, summary)
            except Exception as exc:                # per-degree isolation
                results[n] = ("error", {}, {"error": f"{type(exc).__name__}: {exc}"})
    entries = []
    for n in degrees:
        status, files, summary = results[n]
        artifacts = []
        for rel in sorted(files):
            data = files[rel]
            path = os.path.join(out_dir, rel)
            with open(path, "wb") as fh:
                fh.write(data)
            artifacts.append({"path": rel, "sha256": hashlib.sha256(data).hexdigest()})
        entry = {"n": n, "status": status, "artifacts": artifacts}
        if status == "ok":
            entry["summary"] = summary
        else:
            entry["error"] = summary["error"]
        entries.append(entry)
    ok = [e for e in entries if e["status"] == "ok"]
    status = "ok" if len(ok) == len(entries) else ("failed" if not ok else "partial")
    manifest = {
        "tool": "hpzeros",
        "config": config.to_json(),
        "results": entries,
        "sweep_stats": _sweep_stats(config, results, degrees),
        "status": status,
    }
    data = _json_bytes(manifest)
    with open(os.path.join(out_dir, "manifest.json"), "wb") as fh:
        fh.write(data)
    return manifest


def _sweep_stats(config: RunConfig, results, degrees):
    """Movement of detected structures between consecutive degrees."""
    if not config.run_detectors:
        return []
    reports = {}
    for n in degrees:
        status, files, _ = results[n]
        if status != "ok":
            continue
        rel = f"{config.label}_{n}_froissart.json"
        if rel in files:
            reports[n] = json.loads(files[rel].decode("utf-8"))
    stats = []
    ns = sorted(reports)
    for a, b in zip(ns, ns[1:]):
        if b != a + 1:
            continue
        for kind, center in (("doublets", _doublet_center), ("triplets", _triplet_center)):
            for item in reports[a][kind]:
                ca = center(item)
                candidates = [center(x) for x in reports[b][kind]]
                if not candidates:
                    continue
                dist = min(
                    ((ca[0] - cb[0]) ** 2 + (ca[1] - cb[1]) ** 2) ** 0.5
                    for cb in candidates
                )
                stats.append({"from_n": a, "to_n": b, "kind": kind[:-1], "movement": dist})
    return stats


def _doublet_center(item):
    z, p = item["zero"], item["pole"]
    return ((z[0] + p[0]) / 2, (z[1] + p[1]) / 2)


def _triplet_center(item):
    pts = item["points"]
    return (sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3)
