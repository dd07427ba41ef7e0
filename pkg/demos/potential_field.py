"""Normalized max-potential of a polynomial pair on a grid.

The field max(log|Q1(z)|, log|Q2(z)|) / n is the electrostatic fingerprint
of a solve: away from the clouds it grows like log|z|, and the valley where
the two branches of the max exchange dominance is where the first-family
zeros accumulate.  The script evaluates the field around the clouds of a
moderate solve and writes it as x,y,value CSV.
"""

import os

from hpzeros import (
    GridSpec,
    Precision,
    build_function_series,
    build_hp_system,
    find_roots,
    get_preset,
    kernel_solve,
    potential_grid,
)
from hpzeros.analysis import grid_to_csv

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    n = 24
    prec = Precision(768)
    preset = get_preset("ang1")
    f1 = build_function_series(preset.functions[0], 3 * n + 1, prec)
    f2 = build_function_series(preset.functions[1], 3 * n + 1, prec)
    solution = kernel_solve(build_hp_system(f1, f2, n))
    clouds = [find_roots(solution.polys[f], prec, family=f, n=n) for f in (1, 2)]
    grid = GridSpec(re_min=-3.0, re_max=3.0, im_min=-3.0, im_max=3.0,
                    nx=61, ny=61, clearance=1e-8)
    rows = potential_grid(clouds, grid)
    path = os.path.join(OUT, "potential_ang1_24.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(grid_to_csv(rows))
    values = [float(v) for _x, _y, v in rows]
    print(f"grid {grid.nx}x{grid.ny}, value range [{min(values):.3f}, {max(values):.3f}]")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
