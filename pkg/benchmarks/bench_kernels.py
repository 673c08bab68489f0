"""Timing comparison of the pure-numpy and compiled sweep kernels.

Builds realistic inputs from a generated pattern (alpha = 0.4), checks that
both backends agree on them, then reports best-of-five timings for the
multi-ratio sweep, the circularity sweep, and the triangle-overlap scan.
Run as: python3 benchmarks/bench_kernels.py
"""
import timeit

import numpy as np

from hexpatterns.kernels import pure
from hexpatterns.lattice import hex_star, sector_points, sublattice_index
from hexpatterns.patterns import _finite_image_triangles, generate_zalpha

try:
    from hexpatterns.kernels import _native as native
except ImportError:
    native = None

N = 12
ALPHA = 0.4
MR_TILE = 2000      # tile hexagon rows so the sweeps take measurable time
REPEAT = 5


def gather_inputs():
    bundle = generate_zalpha(ALPHA, N)
    fld = bundle.fields["u"]
    rows, centers = [], []
    for p in sector_points(N):
        star = hex_star(p)
        try:
            vals = [fld[q] for q in star.vertices]
        except KeyError:
            continue
        rows.append(vals)
        centers.append(fld[p])
    values = np.tile(np.array(rows, dtype=complex), (MR_TILE, 1))
    centers = np.tile(np.array(centers, dtype=complex), MR_TILE)
    points, tris, _ = _finite_image_triangles(fld, N)
    return values, centers, points, tris


def best_of(fn, repeat=REPEAT):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    values, centers, points, tris = gather_inputs()
    print(f"inputs: {values.shape[0]} hexagon rows, "
          f"{tris.shape[0]} triangles (alpha={ALPHA}, n={N})")
    if native is None:
        print("compiled kernels not built; timing the pure backend only")
    else:
        mr_ok = np.allclose(pure.hexagon_mr_deviations(values),
                            native.hexagon_mr_deviations(values),
                            rtol=1e-12, atol=1e-15)
        circ_ok = np.allclose(pure.circularity_deviations(values, centers),
                              native.circularity_deviations(values, centers),
                              rtol=1e-12, atol=1e-15)
        tri_ok = (pure.triangle_overlap_count(points, tris)
                  == native.triangle_overlap_count(points, tris))
        print(f"backend agreement: mr={mr_ok} circularity={circ_ok} "
              f"overlap={tri_ok}")

    cases = [
        ("hexagon_mr_deviations",
         lambda impl: impl.hexagon_mr_deviations(values)),
        ("circularity_deviations",
         lambda impl: impl.circularity_deviations(values, centers)),
        ("triangle_overlap_count",
         lambda impl: impl.triangle_overlap_count(points, tris)),
    ]
    header = f"{'kernel':<26} {'pure':>12} {'native':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_pure = best_of(lambda: call(pure))
        if native is None:
            print(f"{name:<26} {t_pure * 1e3:>10.3f}ms {'-':>12} {'-':>9}")
            continue
        t_native = best_of(lambda: call(native))
        print(f"{name:<26} {t_pure * 1e3:>10.3f}ms "
              f"{t_native * 1e3:>10.3f}ms {t_pure / t_native:>8.2f}x")


if __name__ == "__main__":
    main()
