"""Poles of diagonal approximants of a Markov-type function.

sqrt((z+1)/z) is the classic benign case: all poles of the [n/n]
approximant are simple, real, and interlace inside the support (-1, 0).
The n=1 approximant can be solved by hand -- (4z+3)/(4z+1), one pole at
-1/4 -- and the solver reproduces it to working precision.
"""

import os

from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_pade_system,
    certify,
    find_roots,
    get_preset,
    kernel_solve,
    scatter,
)

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    preset = get_preset("markov_sqrt")
    prec = Precision(256)
    series = build_function_series(preset.functions[0], 2 * 10, prec)

    clouds = []
    print("degree  leftmost pole   rightmost pole")
    for n in range(1, 11):
        solution = kernel_solve(build_pade_system(series.truncated(2 * n + 1), n))
        poles = certify(solution.polys[1],
                        find_roots(solution.polys[1], prec, family=1, n=n))
        xs = sorted(float(p.real) for p in poles.points)
        print(f"{n:>6}  {xs[0]:>14.10f}  {xs[-1]:>14.10f}")
        if n == 1:
            print(f"        (hand solution: pole exactly -1/4 = {xs[0] == -0.25})")
        if n == 10:
            zeros = certify(solution.polys[0],
                            find_roots(solution.polys[0], prec, family=0, n=n))
            clouds = [zeros, poles]

    spec = PlotSpec(viewport=((-1.5, 0.5), (-1.0, 1.0)), families=(0, 1),
                    marker_radius=3.0, title="markov approximant n=10: zeros blue, poles red",
                    annotations=((-1 + 0j, "-1"), (0j, "0")))
    path = os.path.join(OUT, "markov_poles_10.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scatter(clouds, spec))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
