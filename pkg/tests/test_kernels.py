"""Sweep kernels: reference semantics, hand-built cases, backend parity."""
import os
import subprocess
import sys

import numpy as np
import pytest

from hexpatterns import kernels
from hexpatterns.geometry import multi_ratio
from hexpatterns.kernels import pure
from hexpatterns.patterns import _finite_image_triangles


def _random_rows(seed, count):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(count, 6)) + 1j * rng.normal(size=(count, 6))


# -- multi-ratio rows ------------------------------------------------------------


def test_mr_deviations_match_scalar_multi_ratio():
    rows = _random_rows(5, 64)
    devs = kernels.hexagon_mr_deviations(rows)
    for row, dev in zip(rows, devs):
        expect = abs(multi_ratio(list(row)) + 1.0)
        assert abs(dev - expect) < 1e-12 * max(1.0, expect)


def test_mr_deviation_zero_denominator_is_nan():
    rows = np.array([[0, 1, 1, 2, 3, 4], [0, 1, 2, 3, 4, 5]], dtype=complex)
    devs = kernels.hexagon_mr_deviations(rows)
    assert np.isnan(devs[0])
    assert not np.isnan(devs[1])


# -- circularity rows ------------------------------------------------------------


def test_circularity_zero_on_concyclic_rows():
    angles = np.exp(1j * np.linspace(0.3, 5.9, 6))
    centers = np.array([1 + 2j, -0.5j])
    rows = np.stack([c + 1.7 * angles for c in centers])
    devs = kernels.circularity_deviations(rows, centers)
    assert np.abs(devs).max() < 1e-14


def test_circularity_measures_radius_spread():
    center = np.array([0j])
    row = np.exp(1j * np.linspace(0, 5, 6))[None, :]
    row[0, 2] *= 1.25
    radii = np.abs(row[0] - center[0])
    expect = np.abs(radii - radii.mean()).max()
    dev = kernels.circularity_deviations(row, center)[0]
    assert abs(dev - expect) < 1e-14


# -- triangle overlap ------------------------------------------------------------


def _counts(points, tris):
    return kernels.triangle_overlap_count(np.array(points, dtype=float),
                                          np.array(tris, dtype=np.int64))


def test_overlap_disjoint_pair():
    points = [(0, 0), (1, 0), (0, 1), (5, 5), (6, 5), (5, 6)]
    assert _counts(points, [(0, 1, 2), (3, 4, 5)]) == (0, 0)


def test_overlap_interpenetrating_pair():
    points = [(0, 0), (2, 0), (0, 2), (0.5, 0.5), (2.5, 0.5), (0.5, 2.5)]
    assert _counts(points, [(0, 1, 2), (3, 4, 5)]) == (1, 0)


def test_overlap_skips_index_sharing_pairs():
    # same contact as below, but recognized through the shared index
    points = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert _counts(points, [(0, 1, 2), (1, 3, 2)]) == (0, 0)


def test_overlap_edge_contact_is_inconclusive():
    # duplicated coordinates, distinct indices: separation exactly zero
    points = [(0, 0), (1, 0), (0, 1), (1, 0), (1, 1), (0, 1)]
    assert _counts(points, [(0, 1, 2), (3, 4, 5)]) == (0, 1)


def test_overlap_degenerate_triangle_is_inconclusive():
    points = [(0, 0), (0, 0), (0, 0), (5, 5), (6, 5), (5, 6)]
    assert _counts(points, [(0, 1, 2), (3, 4, 5)]) == (0, 1)


def test_overlap_single_triangle():
    points = [(0, 0), (1, 0), (0, 1)]
    assert _counts(points, [(0, 1, 2)]) == (0, 0)


# -- backend parity ----------------------------------------------------------------


def test_backend_constant_is_valid():
    assert kernels.BACKEND in ("native", "pure")
    assert kernels.ETA == 1e-12


def test_backends_agree(bundle_03):
    if kernels.BACKEND != "native":
        pytest.skip("compiled kernels not built")
    from hexpatterns.kernels import _native
    rows = _random_rows(7, 512)
    assert np.allclose(_native.hexagon_mr_deviations(rows),
                       pure.hexagon_mr_deviations(rows),
                       rtol=1e-12, atol=1e-14, equal_nan=True)
    centers = rows[:, 0] + 0.3
    assert np.allclose(_native.circularity_deviations(rows, centers),
                       pure.circularity_deviations(rows, centers),
                       rtol=1e-12, atol=1e-14)
    points, tris, _ = _finite_image_triangles(bundle_03.fields["u"], 10)
    assert (_native.triangle_overlap_count(points, tris)
            == pure.triangle_overlap_count(points, tris))


# -- backend selection via environment ---------------------------------------------


def _backend_subprocess(value):
    env = dict(os.environ, HEXPATTERNS_KERNEL=value)
    return subprocess.run(
        [sys.executable, "-c", "import hexpatterns.kernels as k; print(k.BACKEND)"],
        capture_output=True, text=True, env=env)


def test_env_selects_pure_backend():
    proc = _backend_subprocess("pure")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "pure"


def test_env_requires_native_backend():
    proc = _backend_subprocess("native")
    try:
        import hexpatterns.kernels._native  # noqa: F401
        have_native = True
    except ImportError:
        have_native = False
    if have_native:
        assert proc.returncode == 0
        assert proc.stdout.strip() == "native"
    else:
        assert proc.returncode != 0
        assert "ImportError" in proc.stderr


def test_env_rejects_unknown_backend():
    proc = _backend_subprocess("bogus")
    assert proc.returncode != 0
    assert "ValueError" in proc.stderr
