# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _fallback for the spec)."""

import numpy as np

IMPL = "cython"


cdef long long _isqrt(long long x):
    cdef long long r
    if x < 2:
        return x
    r = <long long> (x ** 0.5)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


def heis_ball_table(int n):
    if n < 0:
        raise ValueError("radius must be >= 0")
    cdef long long A = n + 2
    cdef long long C = (<long long> n) * n // 4 + 2
    cdef long long MB = 2 * A + 1
    cdef long long MC = 2 * C + 1
    visited_arr = np.zeros(MB * MB * MC, dtype=np.uint8)
    cdef unsigned char[::1] visited = visited_arr

    frontier_arr = np.zeros((1, 3), dtype=np.int64)
    cdef long long[:, ::1] frontier = frontier_arr
    visited[((0 + A) * MB + (0 + A)) * MC + (0 + C)] = 1

    layers = [frontier_arr.copy()]
    sizes = [1]
    cdef long long i, idx, m, key, a, b, c, na, nb, nc
    cdef int k, r
    cdef long long[4] da
    cdef long long[4] db
    da[0] = 1; da[1] = -1; da[2] = 0; da[3] = 0
    db[0] = 0; db[1] = 0; db[2] = 1; db[3] = -1
    cdef long long[:, ::1] new_view
    for r in range(1, n + 1):
        m = frontier.shape[0]
        new_arr = np.empty((4 * m, 3), dtype=np.int64)
        new_view = new_arr
        i = 0
        for idx in range(m):
            a = frontier[idx, 0]
            b = frontier[idx, 1]
            c = frontier[idx, 2]
            for k in range(4):
                na = a + da[k]
                nb = b + db[k]
                nc = c + a * db[k]
                key = ((na + A) * MB + (nb + A)) * MC + (nc + C)
                if visited[key] == 0:
                    visited[key] = 1
                    new_view[i, 0] = na
                    new_view[i, 1] = nb
                    new_view[i, 2] = nc
                    i += 1
        layer = new_arr[:i]
        order = np.lexsort((layer[:, 2], layer[:, 1], layer[:, 0]))
        layer = np.ascontiguousarray(layer[order])
        layers.append(layer)
        sizes.append(i)
        frontier_arr = layer
        frontier = frontier_arr
    coords = np.concatenate(layers, axis=0)
    return coords, np.array(sizes, dtype=np.int64)


def heis_product_coords(A_in, B_in):
    A_arr = np.ascontiguousarray(A_in, dtype=np.int64)
    B_arr = np.ascontiguousarray(B_in, dtype=np.int64)
    cdef long long[:, ::1] A = A_arr
    cdef long long[:, ::1] B = B_arr
    cdef long long n = A.shape[0], m = B.shape[0]
    out_arr = np.empty((n * m, 3), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long i, j, t = 0
    for i in range(n):
        for j in range(m):
            out[t, 0] = A[i, 0] + B[j, 0]
            out[t, 1] = A[i, 1] + B[j, 1]
            out[t, 2] = A[i, 2] + B[j, 2] + A[i, 0] * B[j, 1]
            t += 1
    return np.unique(out_arr, axis=0)


def heis_product_count(A_in, B_in):
    return len(heis_product_coords(A_in, B_in))


cdef void _unpair_ll(long long m, long long* out_i, long long* out_j):
    cdef long long w = (_isqrt(8 * m + 1) - 1) // 2
    cdef long long j = m - w * (w + 1) // 2
    out_i[0] = w - j
    out_j[0] = j


cdef long long _pair_ll(long long i, long long j):
    return (i + j) * (i + j + 1) // 2 + j


cdef long long _zig_ll(long long z):
    return 2 * z if z >= 0 else -2 * z - 1


cdef long long _unzig_ll(long long m):
    return m // 2 if m % 2 == 0 else -(m + 1) // 2


cdef void _decode_vec(long long code, int d, long long* out):
    cdef int k
    cdef long long right
    for k in range(d - 1, 0, -1):
        _unpair_ll(code, &code, &right)
        out[k] = _unzig_ll(right)
    out[0] = _unzig_ll(code)


cdef long long _encode_vec(long long* v, int d):
    cdef long long code = _zig_ll(v[0])
    cdef int k
    for k in range(1, d):
        code = _pair_ll(code, _zig_ll(v[k]))
    return code


def zd_decode(codes, int d):
    codes_arr = np.ascontiguousarray(codes, dtype=np.int64)
    cdef long long[::1] cv = codes_arr
    out_arr = np.empty((cv.shape[0], d), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long i
    cdef int k
    cdef long long buf[16]
    for i in range(cv.shape[0]):
        _decode_vec(cv[i], d, buf)
        for k in range(d):
            out[i, k] = buf[k]
    return out_arr


def zd_encode(vecs):
    vecs_arr = np.ascontiguousarray(vecs, dtype=np.int64)
    cdef long long[:, ::1] vv = vecs_arr
    cdef int d = vv.shape[1]
    out_arr = np.empty(vv.shape[0], dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long i
    cdef int k
    cdef long long buf[16]
    for i in range(vv.shape[0]):
        for k in range(d):
            buf[k] = vv[i, k]
        out[i] = _encode_vec(buf, d)
    return out_arr


def zd_shift_coords(codes, long long gamma_code, int d):
    codes_arr = np.ascontiguousarray(codes, dtype=np.int64)
    cdef long long[::1] cv = codes_arr
    out_arr = np.empty(cv.shape[0], dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long gbuf[16]
    cdef long long buf[16]
    cdef long long i
    cdef int k
    _decode_vec(gamma_code, d, gbuf)
    for i in range(cv.shape[0]):
        _decode_vec(cv[i], d, buf)
        for k in range(d):
            buf[k] = gbuf[k] - buf[k]
        out[i] = _encode_vec(buf, d)
    return out_arr


def heis_shift_coords(codes, long long gamma_code):
    codes_arr = np.ascontiguousarray(codes, dtype=np.int64)
    cdef long long[::1] cv = codes_arr
    out_arr = np.empty(cv.shape[0], dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long tbuf[3]
    cdef long long buf[3]
    cdef long long a, b, c, i
    _decode_vec(gamma_code, 3, tbuf)
    for i in range(cv.shape[0]):
        _decode_vec(cv[i], 3, buf)
        a = buf[0]; b = buf[1]; c = buf[2]
        buf[0] = tbuf[0] - a
        buf[1] = tbuf[1] - b
        buf[2] = tbuf[2] + a * b - c - a * tbuf[1]
        out[i] = _encode_vec(buf, 3)
    return out_arr


def ow_scan_z(long long n, long long r, long long cap, long long start=1):
    cdef long long m, mm, pos, v, size, total, lo, hi, i, j
    cdef long long vals[64]
    for m in range(start, cap + 1):
        mm = m
        pos = 0
        size = 0
        while mm:
            if mm & 1:
                v = pos // 2 if pos % 2 == 0 else -(pos + 1) // 2
                i = size
                while i > 0 and vals[i - 1] > v:
                    vals[i] = vals[i - 1]
                    i -= 1
                vals[i] = v
                size += 1
            mm >>= 1
            pos += 1
        total = 0
        lo = 0
        hi = 0
        for j in range(size):
            v = vals[j]
            if j == 0:
                lo = v - 2 * r
                hi = v + 2 * r
            elif v - 2 * r <= hi + 1:
                hi = v + 2 * r
            else:
                total += hi - lo + 1
                lo = v - 2 * r
                hi = v + 2 * r
        if size > 0:
            total += hi - lo + 1
        if n * (total - size) <= size:
            return m
    return 0
