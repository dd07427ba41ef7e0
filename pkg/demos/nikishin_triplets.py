"""Spurious structures of the [1, f, f^2] family.

With f = (quartic root) / (square root) the pair f, f^2 shares all its
branch points.  The polynomial tuple shows richer spurious behavior than
the two-function case: isolated single zeros (singlets), near-coincident
triples with one member per family (triplets), and a persistent
non-spurious zero of the third polynomial sitting on the simple pole of
f^2 -- the pole shadow.
"""

import os


from hpzeros import (
    PlotSpec,
    Precision,
    build_function_series,
    build_hp_system,
    find_roots,
    froissart_report,
    get_preset,
    kernel_solve,
    nearest_to,
    parse_exact,
    scatter,
)

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    preset = get_preset("nik_sqrt3_16")
    print("[1, f, f^2] with branch points 1, -1, i sqrt(3) 1.6")
    print("degree  doublets singlets triplets   zero nearest to the f^2 pole")
    overlay = []
    for n in (30, 34, 38):
        prec = Precision(max(256, 30 * n))
        pole = parse_exact("i*sqrt(3)*1.6", prec)
        f1 = build_function_series(preset.functions[0], 3 * n + 1, prec)
        f2 = build_function_series(preset.functions[1], 3 * n + 1, prec)
        solution = kernel_solve(build_hp_system(f1, f2, n))
        clouds = [find_roots(solution.polys[f], prec, family=f, n=n) for f in range(3)]
        report = froissart_report(clouds, n)
        shadow, dist = nearest_to(clouds[2], pole)
        print(f"{n:>6}  {len(report.doublets):>8} {len(report.singlets):>8} "
              f"{len(report.triplets):>8}   {complex(shadow):.4f} (dist {float(dist):.1e})")
        if n == 38:
            overlay = clouds

    spec = PlotSpec(viewport=((-3.5, 3.5), (-3.5, 3.5)), families=(0, 1, 2),
                    marker_radius=2.2,
                    annotations=((complex(0, 1.6 * 3 ** 0.5), "pole of f^2"),
                                 (1 + 0j, "1"), (-1 + 0j, "-1")),
                    title="[1, f, f^2] n=38: families blue/red/black")
    path = os.path.join(OUT, "nikishin_38.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scatter(overlay, spec))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
