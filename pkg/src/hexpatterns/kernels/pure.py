"""Reference numpy implementations of the sweep kernels.

These are the backend-independent semantics; the compiled module mirrors
them operation for operation so both backends give identical results.
All inputs are finite; callers filter infinities before batching.
"""
import numpy as np

ETA = 1e-12


def hexagon_mr_deviations(values: np.ndarray) -> np.ndarray:
    """|M + 1| for each row of six cyclically ordered hexagon vertex values.

    values: complex array (H, 6).  Returns float array (H,).  Rows with a
    vanishing denominator produce nan (caller decides how to report them).
    """
    w = np.asarray(values, dtype=complex)
    num = (w[:, 0] - w[:, 1]) * (w[:, 2] - w[:, 3]) * (w[:, 4] - w[:, 5])
    den = (w[:, 1] - w[:, 2]) * (w[:, 3] - w[:, 4]) * (w[:, 5] - w[:, 0])
    out = np.full(w.shape[0], np.nan)
    ok = den != 0
    out[ok] = np.abs(num[ok] / den[ok] + 1.0)
    return out


def circularity_deviations(values: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Max deviation of the six vertex distances from their mean radius.

    values: complex (H, 6); centers: complex (H,).  Returns float (H,).
    """
    w = np.asarray(values, dtype=complex)
    c = np.asarray(centers, dtype=complex)
    radii = np.abs(w - c[:, None])
    mean = radii.mean(axis=1)
    return np.abs(radii - mean[:, None]).max(axis=1)


def triangle_overlap_count(points: np.ndarray, triangles: np.ndarray,
                           eta: float = ETA):
    """Count interior-overlapping and inconclusive triangle pairs.

    points: float (N, 2); triangles: integer (T, 3) vertex indices.  Pairs
    sharing a vertex index are skipped (edge-adjacent contact is judged by
    the orientation test, not here).  Remaining pairs get a separating-axis
    test over the six edge normals with a dead zone of width eta * scale:
    best separation below -tol counts as overlap, within [-tol, tol] as
    inconclusive, above as disjoint.  Returns (overlap, inconclusive).
    """
    pts = np.asarray(points, dtype=float)
    tris = np.asarray(triangles, dtype=np.int64)
    t = tris.shape[0]
    if t < 2:
        return 0, 0
    scale = max(1.0, float(np.abs(pts).max()))
    tol = eta * scale
    corners = pts[tris]                                   # (T, 3, 2)
    edges = np.roll(corners, -1, axis=1) - corners        # (T, 3, 2)
    axes = np.stack([-edges[..., 1], edges[..., 0]], axis=-1)
    norms = np.sqrt((axes ** 2).sum(axis=-1))             # (T, 3)
    overlap = 0
    inconclusive = 0
    for i in range(t - 1):
        rest = slice(i + 1, t)
        shares = (tris[rest, :, None] == tris[i][None, None, :]).any(axis=(1, 2))
        # separations on the three axes of triangle i
        pi = corners[i] @ axes[i].T                       # (3 verts, 3 axes)
        po = corners[rest] @ axes[i].T                    # (M, 3 verts, 3 axes)
        sep_i = np.maximum(po.min(axis=1) - pi.max(axis=0),
                           pi.min(axis=0) - po.max(axis=1))
        with np.errstate(divide="ignore", invalid="ignore"):
            sep_i = np.where(norms[i] > tol, sep_i / norms[i], -np.inf)
        # separations on the three axes of each other triangle
        po2 = np.einsum("mvk,mak->mav", corners[rest], axes[rest])
        pi2 = np.einsum("vk,mak->mav", corners[i], axes[rest])
        sep_o = np.maximum(pi2.min(axis=2) - po2.max(axis=2),
                           po2.min(axis=2) - pi2.max(axis=2))
        with np.errstate(divide="ignore", invalid="ignore"):
            sep_o = np.where(norms[rest] > tol, sep_o / norms[rest], -np.inf)
        best = np.maximum(sep_i.max(axis=1), sep_o.max(axis=1))
        usable = (norms[i] > tol).any() & (norms[rest] > tol).any(axis=1)
        active = ~shares
        overlap += int((active & usable & (best < -tol)).sum())
        inconclusive += int((active & (~usable | (np.abs(best) <= tol))).sum())
    return overlap, inconclusive
