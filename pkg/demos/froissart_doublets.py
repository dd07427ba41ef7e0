"""Spurious zero-pole pairs of diagonal approximants.

The cube-root reciprocal with three branch points lives on a genus-1
surface, so each degree can carry at most one spurious zero-pole pair
(a Froissart doublet): a pole far from every singularity, shadowed by a
nearby zero, both wandering as the degree changes.  The sweep below
reports the doublet count per degree and overlays all degrees in one
figure -- the bulk clouds trace the limiting compact, the doublets sit
alone in the middle of nowhere.
"""

import os

from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_pade_system,
    detect_doublets,
    find_roots,
    get_preset,
    kernel_solve,
    scatter,
)

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    preset = get_preset("pade10")
    digits = 800
    prec = Precision(digits)
    degrees = range(25, 33)
    series = build_function_series(preset.functions[0], 2 * max(degrees), prec)

    overlay = []
    print(f"cube-root preset at {digits} digits")
    print("degree  doublets  (zero ~ pole, separation)")
    for n in degrees:
        solution = kernel_solve(build_pade_system(series.truncated(2 * n + 1), n))
        zeros = find_roots(solution.polys[0], prec, family=0, n=n)
        poles = find_roots(solution.polys[1], prec, family=1, n=n)
        overlay.extend([zeros, poles])
        report = detect_doublets(zeros, poles)
        if report.doublets:
            z, p, sep = report.doublets[0]
            print(f"{n:>6}  {len(report.doublets):>8}  "
                  f"{complex(z):.4f} ~ {complex(p):.4f}, sep {float(sep):.2e}")
        else:
            print(f"{n:>6}  {len(report.doublets):>8}")

    branch_points = [(-1.2 + 0.8j, "a1"), (0.9 + 1.5j, "a2"), (0.5 - 1.2j, "a3")]
    spec = PlotSpec(viewport=((-4.0, 4.0), (-4.0, 4.0)), families=(0, 1),
                    marker_radius=1.6, annotations=tuple(branch_points),
                    title="cube-root approximants n=25..32: zeros blue, poles red")
    path = os.path.join(OUT, "froissart_overlay.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scatter(overlay, spec))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
