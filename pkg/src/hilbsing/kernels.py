"""Hot loops: per-shift component counting in 2D and 3D.

Each kernel has a numba implementation and a vectorized numpy one with
identical outputs.  The numba path is used when numba imports and the
environment variable ``HILBSING_BACKEND`` is not ``numpy``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_BACKEND_ENV = "HILBSING_BACKEND"


def backend() -> str:
    want = os.environ.get(_BACKEND_ENV, "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"{_BACKEND_ENV} must be 'numba' or 'numpy', got {want!r}")
    if want == "numba" and not HAVE_NUMBA:
        return "numpy"
    return want


def as_rows(rows) -> np.ndarray:
    return np.asarray(tuple(rows), dtype=np.int64).reshape(-1)


def hom2d_box(rows_j: np.ndarray, rows_jp: np.ndarray) -> tuple[int, int, int, int]:
    """Shift box (ay0, az0, nay, naz) outside of which no component counts.

    Every component of (J~+a) minus J'~ contains g+a for a minimal
    generator g; bounded and upper-half-plane components need such a
    point with z >= 0 and y < width(J'), which forces
    -width(J) <= a_y < width(J') and -height(J) <= a_z < height(J').
    """
    w, h = (int(rows_j[0]) if len(rows_j) else 0), len(rows_j)
    wp, hp = (int(rows_jp[0]) if len(rows_jp) else 0), len(rows_jp)
    return -w, -h, w + wp, h + hp


# ---------------------------------------------------------------------------
# 2D: components of (J~ + a) \ J'~ on a finite window
#
# The window is y in [-1, w'+w), z in [-1, h'+h).  Cells with y < 0 or z < 0
# belong to unbounded components, D cut with {y<0} and with {z<0} are each
# connected, and both meet the window in a single contiguous run, so window
# connectivity equals connectivity in Z^2.


def _hom2d_grid_py(rows_j, rows_jp, bounded, confined, ay0, az0):
    # body shared by the numba kernel; plain Python fallback for debugging
    h = rows_j.shape[0]
    hp = rows_jp.shape[0]
    nay, naz = bounded.shape
    W = (rows_jp[0] if hp else 0) + (rows_j[0] if h else 0) + 1
    H = hp + h + 1
    mask = np.zeros((W, H), dtype=np.bool_)
    seen = np.zeros((W, H), dtype=np.bool_)
    stack = np.empty((W * H, 2), dtype=np.int64)
    for iy in range(nay):
        ay = ay0 + iy
        for iz in range(naz):
            az = az0 + iz
            for wy in range(W):
                y = wy - 1
                a = y - ay
                for wz in range(H):
                    z = wz - 1
                    b = z - az
                    inside = False
                    if a >= 0 and b >= 0:
                        if b >= h or a >= rows_j[b]:
                            inside = True
                    if inside and y >= 0 and z >= 0:
                        if not (z < hp and y < rows_jp[z]):
                            inside = False
                    mask[wy, wz] = inside
                    seen[wy, wz] = False
            nb = 0
            conf = False
            for sy in range(W):
                for sz in range(H):
                    if not mask[sy, sz] or seen[sy, sz]:
                        continue
                    top = 0
                    stack[0, 0] = sy
                    stack[0, 1] = sz
                    seen[sy, sz] = True
                    touch_y = False
                    touch_z = False
                    while top >= 0:
                        cy = stack[top, 0]
                        cz = stack[top, 1]
                        top -= 1
                        if cy == 0:
                            touch_y = True
                        if cz == 0:
                            touch_z = True
                        for d in range(4):
                            ny = cy
                            nz = cz
                            if d == 0:
                                ny = cy + 1
                            elif d == 1:
                                ny = cy - 1
                            elif d == 2:
                                nz = cz + 1
                            else:
                                nz = cz - 1
                            if ny < 0 or nz < 0 or ny >= W or nz >= H:
                                continue
                            if mask[ny, nz] and not seen[ny, nz]:
                                seen[ny, nz] = True
                                top += 1
                                stack[top, 0] = ny
                                stack[top, 1] = nz
                    if not touch_y and not touch_z:
                        nb += 1
                    elif touch_y and not touch_z:
                        conf = True
            bounded[iy, iz] = nb
            confined[iy, iz] = conf


if HAVE_NUMBA:
    _hom2d_grid_jit = njit(cache=True)(_hom2d_grid_py)
else:  # pragma: no cover
    _hom2d_grid_jit = _hom2d_grid_py


def hom2d_grid_numba(rows_j, rows_jp):
    rows_j, rows_jp = as_rows(rows_j), as_rows(rows_jp)
    ay0, az0, nay, naz = hom2d_box(rows_j, rows_jp)
    bounded = np.zeros((nay, naz), dtype=np.int64)
    confined = np.zeros((nay, naz), dtype=np.bool_)
    if nay and naz:
        _hom2d_grid_jit(rows_j, rows_jp, bounded, confined, ay0, az0)
    return bounded, confined, ay0, az0


def _propagate_min(labels: np.ndarray, mask: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Minimum-label propagation over grid neighbours until stable."""
    big = labels.max() + 1 if labels.size else 0
    while True:
        cur = labels.copy()
        for ax in axes:
            n = labels.shape[ax]
            if n < 2:
                continue
            lo = [slice(None)] * labels.ndim
            hi = [slice(None)] * labels.ndim
            lo[ax] = slice(0, n - 1)
            hi[ax] = slice(1, n)
            lo, hi = tuple(lo), tuple(hi)
            both = mask[lo] & mask[hi]
            m = np.minimum(cur[lo], cur[hi])
            cur[lo] = np.where(both, m, cur[lo])
            cur[hi] = np.where(both, np.minimum(cur[hi], m), cur[hi])
        cur = np.where(mask, cur, big)
        if np.array_equal(cur, labels):
            return cur
        labels = cur


def hom2d_grid_numpy(rows_j, rows_jp):
    rows_j, rows_jp = as_rows(rows_j), as_rows(rows_jp)
    ay0, az0, nay, naz = hom2d_box(rows_j, rows_jp)
    bounded = np.zeros((nay, naz), dtype=np.int64)
    confined = np.zeros((nay, naz), dtype=np.bool_)
    if not (nay and naz):
        return bounded, confined, ay0, az0
    h, hp = len(rows_j), len(rows_jp)
    W = (rows_jp[0] if hp else 0) + (rows_j[0] if h else 0) + 1
    H = hp + h + 1
    ay = (ay0 + np.arange(nay))[:, None, None, None]
    az = (az0 + np.arange(naz))[None, :, None, None]
    y = (np.arange(W) - 1)[None, None, :, None]
    z = (np.arange(H) - 1)[None, None, None, :]
    a, b = y - ay, z - az

    def in_ideal(rows, a, b):
        n = len(rows)
        if n == 0:
            return (a >= 0) & (b >= 0)
        r = rows[np.clip(b, 0, n - 1)]
        return (a >= 0) & (b >= 0) & ((b >= n) | (a >= r))

    mask = in_ideal(rows_j, a, b) & ~((y >= 0) & (z >= 0) & in_ideal(rows_jp, y, z))
    mask = np.broadcast_to(mask, (nay, naz, W, H))
    cell = np.arange(W * H).reshape(W, H)
    big = W * H
    labels = np.where(mask, cell, big)
    labels = _propagate_min(labels, mask, (2, 3))

    is_root = mask & (labels == cell)
    touch_y = np.zeros((nay, naz, big + 1), dtype=bool)
    touch_z = np.zeros((nay, naz, big + 1), dtype=bool)
    ii, jj = np.meshgrid(np.arange(nay), np.arange(naz), indexing="ij")
    ii = np.broadcast_to(ii[:, :, None, None], mask.shape)
    jj = np.broadcast_to(jj[:, :, None, None], mask.shape)
    edge_y = mask & np.broadcast_to(y == -1, mask.shape)
    edge_z = mask & np.broadcast_to(z == -1, mask.shape)
    touch_y[ii[edge_y], jj[edge_y], labels[edge_y]] = True
    touch_z[ii[edge_z], jj[edge_z], labels[edge_z]] = True
    root_ty = np.take_along_axis(touch_y, np.where(is_root, cell, big).reshape(nay, naz, -1), axis=2)
    root_tz = np.take_along_axis(touch_z, np.where(is_root, cell, big).reshape(nay, naz, -1), axis=2)
    roots = is_root.reshape(nay, naz, -1)
    bounded[:] = (roots & ~root_ty & ~root_tz).sum(axis=2)
    confined[:] = (roots & root_ty & ~root_tz).any(axis=2)
    return bounded, confined, ay0, az0


def hom2d_grid(rows_j, rows_jp):
    """Per-shift (bounded count, has-upper-half-plane-unbounded) grids."""
    if backend() == "numba":
        return hom2d_grid_numba(rows_j, rows_jp)
    return hom2d_grid_numpy(rows_j, rows_jp)


# ---------------------------------------------------------------------------
# 3D: syzygy graph per shift


def _tangent_pieces_py(gens, comp, alphas, out):
    n = gens.shape[0]
    m1, m2, m3 = comp.shape
    parent = np.empty(n, dtype=np.int64)
    free = np.empty(n, dtype=np.bool_)
    ok = np.empty(n, dtype=np.bool_)
    for k in range(alphas.shape[0]):
        ax = alphas[k, 0]
        ay = alphas[k, 1]
        az = alphas[k, 2]
        for u in range(n):
            parent[u] = u
            px = gens[u, 0] + ax
            py = gens[u, 1] + ay
            pz = gens[u, 2] + az
            f = False
            if 0 <= px < m1 and 0 <= py < m2 and 0 <= pz < m3:
                f = comp[px, py, pz]
            free[u] = f
        for u in range(n):
            for v in range(u + 1, n):
                px = max(gens[u, 0], gens[v, 0]) + ax
                py = max(gens[u, 1], gens[v, 1]) + ay
                pz = max(gens[u, 2], gens[v, 2]) + az
                if 0 <= px < m1 and 0 <= py < m2 and 0 <= pz < m3 and comp[px, py, pz]:
                    ru = u
                    while parent[ru] != ru:
                        ru = parent[ru]
                    rv = v
                    while parent[rv] != rv:
                        rv = parent[rv]
                    if ru != rv:
                        if ru < rv:
                            parent[rv] = ru
                        else:
                            parent[ru] = rv
        for u in range(n):
            ok[u] = True
        for u in range(n):
            r = u
            while parent[r] != r:
                r = parent[r]
            if not free[u]:
                ok[r] = False
        c = 0
        for u in range(n):
            if parent[u] == u and ok[u]:
                c += 1
        out[k] = c


if HAVE_NUMBA:
    _tangent_pieces_jit = njit(cache=True)(_tangent_pieces_py)
else:  # pragma: no cover
    _tangent_pieces_jit = _tangent_pieces_py


def _prep3(gens, comp, alphas):
    gens = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 3)
    comp = np.ascontiguousarray(comp, dtype=np.bool_)
    alphas = np.ascontiguousarray(alphas, dtype=np.int64).reshape(-1, 3)
    return gens, comp, alphas


def tangent_pieces_numba(gens, comp, alphas) -> np.ndarray:
    gens, comp, alphas = _prep3(gens, comp, alphas)
    out = np.zeros(alphas.shape[0], dtype=np.int64)
    if alphas.shape[0]:
        _tangent_pieces_jit(gens, comp, alphas, out)
    return out


def in_complement(comp: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Vectorized membership of points p[..., 3] in the complement box."""
    shape = np.asarray(comp.shape)
    valid = np.all((p >= 0) & (p < shape), axis=-1)
    q = np.clip(p, 0, shape - 1)
    return valid & comp[q[..., 0], q[..., 1], q[..., 2]]


def tangent_pieces_numpy(gens, comp, alphas) -> np.ndarray:
    gens, comp, alphas = _prep3(gens, comp, alphas)
    A, n = alphas.shape[0], gens.shape[0]
    if A == 0:
        return np.zeros(0, dtype=np.int64)
    free = in_complement(comp, gens[None, :, :] + alphas[:, None, :])
    lcm = np.maximum(gens[:, None, :], gens[None, :, :])
    edge = in_complement(comp, lcm[None, :, :, :] + alphas[:, None, None, :])
    idx = np.arange(n)
    labels = np.broadcast_to(idx, (A, n)).copy()
    while True:
        nbr = np.where(edge, labels[:, None, :], n).min(axis=2)
        new = np.minimum(labels, nbr)
        new = new[np.arange(A)[:, None], new]
        if np.array_equal(new, labels):
            break
        labels = new
    bad = np.zeros((A, n), dtype=bool)
    rows = np.broadcast_to(np.arange(A)[:, None], (A, n))
    bad[rows[~free], labels[~free]] = True
    return ((labels == idx) & ~bad).sum(axis=1).astype(np.int64)


def tangent_pieces(gens, comp, alphas) -> np.ndarray:
    """Dimension of each graded piece Hom(I, R/I)_alpha."""
    if backend() == "numba":
        return tangent_pieces_numba(gens, comp, alphas)
    return tangent_pieces_numpy(gens, comp, alphas)
