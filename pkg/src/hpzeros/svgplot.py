"""Publication-style scatter figures of root clouds as standalone SVG.

Self-contained string assembly, no plotting backend: identical inputs give
byte-identical documents, which the test suite relies on.  Color convention
is fixed: family 0 blue, family 1 red, family 2 black (for Pade solves the
approximant's zeros are family 0, its poles family 1).  Families draw in
ascending order so black lands over red over blue, matching how overlaid
clouds are meant to read.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["PlotSpec", "PlotError", "FAMILY_COLORS", "scatter", "plot_filename"]

FAMILY_COLORS = {0: "blue", 1: "red", 2: "black"}

_SIZE = 640
_MARGIN = 48
_BOX = _SIZE - 2 * _MARGIN


class PlotError(ValueError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    """Viewport, family subset, marker size, and annotations for one figure."""

    viewport: tuple[tuple[float, float], tuple[float, float]] = ((-3.0, 3.0), (-3.0, 3.0))
    families: tuple[int, ...] = (0, 1, 2)
    marker_radius: float = 2.0
    annotations: tuple = ()      # (complex point, label) pairs, drawn as crosses
    allow_empty: bool = False
    title: str = ""

    def __post_init__(self):
        (re_lo, re_hi), (im_lo, im_hi) = self.viewport
        if not (re_hi > re_lo and im_hi > im_lo):
            raise PlotError(f"degenerate viewport {self.viewport}")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def plot_filename(label: str, n: int, families) -> str:
    fams = "".join(str(f) for f in sorted(families))
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in label)
    return f"{safe}_{n}_{fams}.svg"


def scatter(clouds, spec: PlotSpec) -> str:
    """Render clouds into one square SVG document.

    Points outside the viewport are dropped entirely (the circle count in
    the document equals the count of in-viewport points).  Raises unless
    there is at least one point or ``spec.allow_empty`` is set.
    """
    (re_lo, re_hi), (im_lo, im_hi) = spec.viewport
    sx = _BOX / (re_hi - re_lo)
    sy = _BOX / (im_hi - im_lo)

    def px(re: float) -> float:
        return _MARGIN + (re - re_lo) * sx

    def py(im: float) -> float:
        return _MARGIN + (im_hi - im) * sy

    total_points = sum(len(c.points) for c in clouds)
    if total_points == 0 and not spec.allow_empty:
        raise PlotError("no points to plot (pass allow_empty to render axes only)")

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_BOX}" height="{_BOX}" '
        'fill="none" stroke="#888888" stroke-width="1"/>',
    ]
    if re_lo < 0 < re_hi:
        x0 = _fmt(px(0.0))
        out.append(f'<line x1="{x0}" y1="{_MARGIN}" x2="{x0}" y2="{_SIZE - _MARGIN}" '
                   'stroke="#dddddd" stroke-width="1"/>')
    if im_lo < 0 < im_hi:
        y0 = _fmt(py(0.0))
        out.append(f'<line x1="{_MARGIN}" y1="{y0}" x2="{_SIZE - _MARGIN}" y2="{y0}" '
                   'stroke="#dddddd" stroke-width="1"/>')
    out.append(f'<text x="{_MARGIN}" y="{_SIZE - _MARGIN + 16}" font-size="11" '
               f'fill="#444444">{_fmt(re_lo)}</text>')
    out.append(f'<text x="{_SIZE - _MARGIN}" y="{_SIZE - _MARGIN + 16}" font-size="11" '
               f'fill="#444444" text-anchor="end">{_fmt(re_hi)}</text>')
    out.append(f'<text x="{_MARGIN - 4}" y="{_SIZE - _MARGIN}" font-size="11" '
               f'fill="#444444" text-anchor="end">{_fmt(im_lo)}i</text>')
    out.append(f'<text x="{_MARGIN - 4}" y="{_MARGIN + 10}" font-size="11" '
               f'fill="#444444" text-anchor="end">{_fmt(im_hi)}i</text>')
    if spec.title:
        out.append(f'<text x="{_MARGIN}" y="{_MARGIN - 10}" font-size="13" '
                   f'fill="#000000">{spec.title}</text>')

    r = _fmt(spec.marker_radius)
    shown = [c for c in clouds if c.family in spec.families]
    for cloud in sorted(shown, key=lambda c: c.family):
        color = FAMILY_COLORS.get(cloud.family, "black")
        for p in cloud.points:
            re, im = float(p.real), float(p.imag)
            if re_lo <= re <= re_hi and im_lo <= im <= im_hi:
                out.append(f'<circle cx="{_fmt(px(re))}" cy="{_fmt(py(im))}" r="{r}" '
                           f'fill="{color}"/>')

    cross = 5.0
    for point, label in spec.annotations:
        re, im = float(complex(point).real), float(complex(point).imag)
        if not (re_lo <= re <= re_hi and im_lo <= im <= im_hi):
            continue
        cx, cy = px(re), py(im)
        out.append(f'<line x1="{_fmt(cx - cross)}" y1="{_fmt(cy)}" x2="{_fmt(cx + cross)}" '
                   f'y2="{_fmt(cy)}" stroke="#007700" stroke-width="1.2"/>')
        out.append(f'<line x1="{_fmt(cx)}" y1="{_fmt(cy - cross)}" x2="{_fmt(cx)}" '
                   f'y2="{_fmt(cy + cross)}" stroke="#007700" stroke-width="1.2"/>')
        out.append(f'<text x="{_fmt(cx + cross + 2)}" y="{_fmt(cy - 3)}" font-size="11" '
                   f'fill="#007700">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
