"""Support pushing for a pair of touching real intervals.

For the Markov pair sqrt((z+1)/z), sqrt((z-3)/z) with supports [-1, 0]
and [0, 3], the longer interval loses the neighborhood of the shared
endpoint: zeros of the third polynomial stay away from (0, x*) where
x* = 3 (1-a)^3 / (9 (a^2-a+1)) with a = 1/3, i.e. 8/63.  The gap is
empirically visible from small degrees and the leftmost zero converges
to x* as the degree grows.
"""

import os

from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_hp_system,
    certify,
    find_roots,
    get_preset,
    kalyagin_point,
    kernel_solve,
    pushing_gap,
    scatter,
)
from gmpy2 import mpq

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    preset = get_preset("kalyagin_markov")
    target = 3 * kalyagin_point(mpq(1, 3))
    print(f"pushed endpoint x* = 8/63 = {float(target):.6f}")
    print("degree  leftmost zero of family 2   gap (0, leftmost) clean")
    clouds = []
    for n in (15, 30, 45):
        prec = Precision(max(256, 30 * n))
        f1 = build_function_series(preset.functions[0], 3 * n + 1, prec)
        f2 = build_function_series(preset.functions[1], 3 * n + 1, prec)
        solution = kernel_solve(build_hp_system(f1, f2, n))
        cloud = certify(solution.polys[2],
                        find_roots(solution.polys[2], prec, family=2, n=n))
        leftmost, clean = pushing_gap(cloud, (0.0, 3.0), 1e-5)
        print(f"{n:>6}  {float(leftmost):>26.6f}   {clean}")
        if n == 45:
            red = certify(solution.polys[1],
                          find_roots(solution.polys[1], prec, family=1, n=n))
            clouds = [red, cloud]

    spec = PlotSpec(viewport=((-1.5, 3.5), (-2.5, 2.5)), families=(1, 2),
                    marker_radius=3.0,
                    title="touching supports n=45: family 1 red, family 2 black",
                    annotations=((complex(float(target)), "x*"),))
    path = os.path.join(OUT, "pushing_45.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scatter(clouds, spec))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
