"""Pure-Python/numpy implementations of the hot kernels.

Mirrors the Cython module `_core` function for function; selected at import
time when the compiled extension is unavailable (or ERGODESK_NO_EXT=1).
"""

from __future__ import annotations

import numpy as np

IMPL = "python"


def _heis_pack(a, b, c, n):
    # dense index for |a|,|b| <= n+1, |c| <= n^2//4 + 1
    A = n + 2
    C = n * n // 4 + 2
    MB = 2 * A + 1
    MC = 2 * C + 1
    return ((a + A) * MB + (b + A)) * MC + (c + C)


def heis_ball_table(n: int):
    """BFS table for H3 with generators x, y and inverses.

    Returns (coords, layer_sizes): coords is an int64 array of shape (N, 3)
    listing ball elements radius by radius (each layer sorted by (a, b, c)),
    layer_sizes[r] = number of elements at word distance exactly r.
    """
    if n < 0:
        raise ValueError("radius must be >= 0")
    A = n + 2
    C = n * n // 4 + 2
    MB = 2 * A + 1
    MC = 2 * C + 1
    visited = np.zeros(MB * MB * MC, dtype=np.uint8)
    start = np.array([[0, 0, 0]], dtype=np.int64)
    visited[_heis_pack(0, 0, 0, n)] = 1
    layers = [start]
    sizes = [1]
    frontier = start
    for _ in range(n):
        a = frontier[:, 0:1]
        b = frontier[:, 1:2]
        c = frontier[:, 2:3]
        # right multiplication by (da, db, 0): (a+da, b+db, c + a*db)
        da = np.array([1, -1, 0, 0], dtype=np.int64)
        db = np.array([0, 0, 1, -1], dtype=np.int64)
        na = (a + da[None, :]).ravel()
        nb = (b + db[None, :]).ravel()
        nc = (c + a * db[None, :]).ravel()
        keys = ((na + A) * MB + (nb + A)) * MC + (nc + C)
        order = np.lexsort((nc, nb, na))
        keys = keys[order]
        uniq = np.ones(len(keys), dtype=bool)
        uniq[1:] = keys[1:] != keys[:-1]
        keys = keys[uniq]
        cand = np.stack([na[order][uniq], nb[order][uniq], nc[order][uniq]], axis=1)
        fresh = visited[keys] == 0
        visited[keys[fresh]] = 1
        frontier = cand[fresh]
        layers.append(frontier)
        sizes.append(len(frontier))
    coords = np.concatenate(layers, axis=0)
    return coords, np.array(sizes, dtype=np.int64)


def heis_product_coords(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product set A * B for arrays of H3 coordinate triples, deduplicated."""
    chunk = max(1, 8_000_000 // max(1, len(B)))
    pieces = []
    for lo in range(0, len(A), chunk):
        part = A[lo : lo + chunk]
        a1 = part[:, 0:1]
        b1 = part[:, 1:2]
        c1 = part[:, 2:3]
        a2 = B[None, :, 0]
        b2 = B[None, :, 1]
        c2 = B[None, :, 2]
        pa = (a1 + a2).ravel()
        pb = (b1 + b2).ravel()
        pc = (c1 + c2 + a1 * b2).ravel()
        pieces.append(np.unique(np.stack([pa, pb, pc], axis=1), axis=0))
    return np.unique(np.concatenate(pieces, axis=0), axis=0)


def heis_product_count(A: np.ndarray, B: np.ndarray) -> int:
    """|A * B| for arrays of H3 coordinate triples (brute-force product set)."""
    return len(heis_product_coords(A, B))


def _unpair(m: np.ndarray):
    w = ((np.sqrt(8.0 * m.astype(np.float64) + 1.0) - 1.0) / 2.0).astype(np.int64)
    # correct float rounding on the triangular-root boundary
    tri = w * (w + 1) // 2
    w = np.where(tri > m, w - 1, w)
    w = np.where((w + 1) * (w + 2) // 2 <= m, w + 1, w)
    j = m - w * (w + 1) // 2
    return w - j, j


def _pair(i: np.ndarray, j: np.ndarray):
    return (i + j) * (i + j + 1) // 2 + j


def _unzig(m: np.ndarray):
    return np.where(m % 2 == 0, m // 2, -(m + 1) // 2)


def _zig(z: np.ndarray):
    return np.where(z >= 0, 2 * z, -2 * z - 1)


def zd_decode(codes: np.ndarray, d: int) -> np.ndarray:
    """Vectorized decode of Z^d codes to coordinate columns."""
    cols = []
    m = codes.astype(np.int64)
    for _ in range(d - 1):
        m, right = _unpair(m)
        cols.append(_unzig(right))
    cols.append(_unzig(m))
    return np.stack(list(reversed(cols)), axis=1)


def zd_encode(vecs: np.ndarray) -> np.ndarray:
    code = _zig(vecs[:, 0].astype(np.int64))
    for k in range(1, vecs.shape[1]):
        code = _pair(code, _zig(vecs[:, k].astype(np.int64)))
    return code


def zd_shift_coords(codes: np.ndarray, gamma_code: int, d: int) -> np.ndarray:
    """Codes of g^{-1} * gamma for each g in codes (Z^d)."""
    g = zd_decode(np.asarray(codes, dtype=np.int64), d)
    gam = zd_decode(np.array([gamma_code], dtype=np.int64), d)[0]
    return zd_encode(gam[None, :] - g)


def heis_shift_coords(codes: np.ndarray, gamma_code: int) -> np.ndarray:
    """Codes of g^{-1} * gamma for each g in codes (H3)."""
    g = zd_decode(np.asarray(codes, dtype=np.int64), 3)
    ga, gb, gc = (
        g[:, 0].astype(np.int64),
        g[:, 1].astype(np.int64),
        g[:, 2].astype(np.int64),
    )
    ta, tb, tc = [int(x) for x in zd_decode(np.array([gamma_code], dtype=np.int64), 3)[0]]
    # g^{-1} = (-a, -b, ab - c); g^{-1} * t = (ta - a, tb - b, tc + ab - c - a*tb)
    ra = ta - ga
    rb = tb - gb
    rc = tc + ga * gb - gc - ga * tb
    return zd_encode(np.stack([ra, rb, rc], axis=1))


def ow_scan_z(n: int, r: int, cap: int, start: int = 1):
    """Scan canonical indices for the two-sided Foelner condition on Z.

    K is the interval [-r, r]; accepts the first index m in [start, cap]
    whose decoded set F (bit positions zigzag-decoded to integers) satisfies
    n * (|KFK| - |F|) <= |F|.  Returns 0 when no index qualifies.
    """
    for m in range(start, cap + 1):
        vals = []
        mm = m
        pos = 0
        while mm:
            if mm & 1:
                vals.append(pos // 2 if pos % 2 == 0 else -(pos + 1) // 2)
            mm >>= 1
            pos += 1
        vals.sort()
        size = len(vals)
        # |KFK| = total length of the union of intervals [v-2r, v+2r]
        total = 0
        lo = hi = None
        for v in vals:
            if hi is None:
                lo, hi = v - 2 * r, v + 2 * r
            elif v - 2 * r <= hi + 1:
                hi = v + 2 * r
            else:
                total += hi - lo + 1
                lo, hi = v - 2 * r, v + 2 * r
        if hi is not None:
            total += hi - lo + 1
        if n * (total - size) <= size:
            return m
    return 0
