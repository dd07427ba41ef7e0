"""Branch-point collision sweep for two disjoint complex arcs.

Two reciprocal square roots with branch-point pairs on parallel lines
above and below the real axis.  When the lines are far apart, each
family's zeros trace a single arc between its branch points.  Moving the
lines together bends the upper arc toward the lower one until its
support breaks into two pieces that eventually cross the lower family --
with the separating family threading between them.  Each offset is one
frame of the sweep.
"""

import os

from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_hp_system,
    find_roots,
    get_preset,
    kernel_solve,
    scatter,
)

OUT = os.path.join(os.path.dirname(__file__), "output")

SWEEP = ("ang3_1", "ang3_7", "ang3_13")   # offsets 0.7, 0.5, 0.15


def main():
    os.makedirs(OUT, exist_ok=True)
    n = 30
    prec = Precision(1024)
    for name in SWEEP:
        preset = get_preset(name)
        f1 = build_function_series(preset.functions[0], 3 * n + 1, prec)
        f2 = build_function_series(preset.functions[1], 3 * n + 1, prec)
        solution = kernel_solve(build_hp_system(f1, f2, n))
        clouds = [find_roots(solution.polys[f], prec, family=f, n=n) for f in range(3)]
        marks = tuple(
            (complex(*(float(v) for v in _branch(a))), "")
            for fn in preset.functions for a, _ in fn.factors
        )
        spec = PlotSpec(viewport=((-2.0, 2.0), (-2.0, 2.0)), families=(0, 1, 2),
                        marker_radius=2.6, annotations=marks,
                        title=f"{name} n={n}: families blue/red/black")
        path = os.path.join(OUT, f"{name}_{n}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(scatter(clouds, spec))
        counts = ", ".join(f"family {c.family}: {len(c.points)}" for c in clouds)
        print(f"{name}: {counts} -> {path}")


def _branch(a_string):
    from hpzeros import parse_exact
    v = parse_exact(a_string, Precision(64))
    return v.real, v.imag


if __name__ == "__main__":
    main()
