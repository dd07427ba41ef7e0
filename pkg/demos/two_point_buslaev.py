"""Two-point approximants: same branch vs opposite branches.

Interpolating sqrt((z-1/2)/(z-2)) at both 0 and infinity with the same
branch puts every pole on the segment [1/2, 2].  Choosing opposite
branches changes the limit set to a curve through the branch points whose
junction z = sqrt(a b) = 1 carries zero pole density: the approximant
cannot resolve that point, and the density counter shows the void.
"""

import os

from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_two_point_system,
    density_near,
    find_roots,
    get_preset,
    kernel_solve,
    scatter,
)

OUT = os.path.join(os.path.dirname(__file__), "output")


def run_variant(name, n, prec):
    preset = get_preset(name)
    s0 = build_function_series(preset.functions[0], n, prec)
    si = build_function_series(preset.functions[1], n, prec)
    solution = kernel_solve(build_two_point_system(s0, si, n))
    zeros = find_roots(solution.polys[0], prec, family=0, n=n)
    poles = find_roots(solution.polys[1], prec, family=1, n=n)
    return zeros, poles


def main():
    os.makedirs(OUT, exist_ok=True)
    n = 30
    prec = Precision(1024)

    zeros, poles = run_variant("bus210a", n, prec)
    xs = sorted(float(p.real) for p in poles.points)
    ims = max(abs(float(p.imag)) for p in poles.points)
    print(f"same branch, n={n}: poles real (max |Im| = {ims:.1e}), "
          f"range [{xs[0]:.4f}, {xs[-1]:.4f}] inside (0.5, 2)")
    spec = PlotSpec(viewport=((-0.5, 2.5), (-1.5, 1.5)), families=(0, 1),
                    marker_radius=3.0, annotations=((0.5 + 0j, "a"), (2 + 0j, "b")),
                    title=f"same branch n={n}: zeros blue, poles red")
    with open(os.path.join(OUT, "buslaev_segment.svg"), "w", encoding="utf-8") as fh:
        fh.write(scatter([zeros, poles], spec))

    zeros_b, poles_b = run_variant("bus210b", n, prec)
    dens = density_near(poles_b, 1.0, 0.1)
    print(f"opposite branches, n={n}: pole density within 0.1 of the junction "
          f"z=1: {dens:.3f} (the junction stays unresolved)")
    spec_b = PlotSpec(viewport=((-2.5, 2.5), (-2.5, 2.5)), families=(0, 1),
                      marker_radius=3.0,
                      annotations=((0.5 + 0j, "a"), (2 + 0j, "b"), (1 + 0j, "junction")),
                      title=f"opposite branches n={n}: zeros blue, poles red")
    with open(os.path.join(OUT, "buslaev_curve.svg"), "w", encoding="utf-8") as fh:
        fh.write(scatter([zeros_b, poles_b], spec_b))
    print(f"wrote {OUT}/buslaev_segment.svg and {OUT}/buslaev_curve.svg")


if __name__ == "__main__":
    main()
