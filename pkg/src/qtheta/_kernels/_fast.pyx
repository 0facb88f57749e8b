# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for the hot loops.

Same contracts as qtheta._kernels.pure; the coefficients stay generic
Python objects (bigints, Fractions), so the win comes from removing
interpreter dispatch around the O(L^2) loops, not from native arithmetic.
"""


def convolve(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j, k
    if la == 0 or lb == 0:
        return []
    cdef list out = [None] * (la + lb - 1)
    cdef object ai, bj, cur
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            bj = b[j]
            if not bj:
                continue
            k = i + j
            cur = out[k]
            if cur is None:
                out[k] = ai * bj
            else:
                out[k] = cur + ai * bj
    zero = a[0] - a[0]
    for k in range(la + lb - 1):
        if out[k] is None:
            out[k] = zero
    return out


def convolve_trunc(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j, k, jmax
    cdef list out = [None] * n
    cdef object ai, bj, cur
    for i in range(la):
        if i >= n:
            break
        ai = a[i]
        if not ai:
            continue
        jmax = lb if lb < n - i else n - i
        for j in range(jmax):
            bj = b[j]
            if not bj:
                continue
            k = i + j
            cur = out[k]
            if cur is None:
                out[k] = ai * bj
            else:
                out[k] = cur + ai * bj
    zero = (a[0] - a[0]) if la else 0
    for k in range(n):
        if out[k] is None:
            out[k] = zero
    return out


def convolve_square(list a):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t i, j, k
    if la == 0:
        return []
    cdef list out = [None] * (2 * la - 1)
    cdef object ai, aj, t, cur
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        t = ai * ai
        k = 2 * i
        cur = out[k]
        out[k] = t if cur is None else cur + t
        for j in range(i + 1, la):
            aj = a[j]
            if not aj:
                continue
            t = ai * aj
            t = t + t
            k = i + j
            cur = out[k]
            out[k] = t if cur is None else cur + t
    zero = a[0] - a[0]
    for k in range(2 * la - 1):
        if out[k] is None:
            out[k] = zero
    return out


def cyclo_rem(vec, phi_low):
    cdef Py_ssize_t d = len(phi_low)
    cdef list v = list(vec)
    cdef list phi = list(phi_low)
    cdef Py_ssize_t e, i, base
    cdef object c, p
    if len(v) < d:
        return v + [0] * (d - len(v))
    for e in range(len(v) - 1, d - 1, -1):
        c = v[e]
        if c:
            base = e - d
            for i in range(d):
                p = phi[i]
                if p:
                    v[base + i] = v[base + i] - c * p
    return v[:d]


def dot(list a, list b):
    cdef Py_ssize_t n = min(len(a), len(b))
    cdef Py_ssize_t i
    cdef object acc = None, x, y
    for i in range(n):
        x = a[i]
        if not x:
            continue
        y = b[i]
        if not y:
            continue
        acc = x * y if acc is None else acc + x * y
    return 0 if acc is None else acc


def scaled_add(list dst, list src, c):
    cdef Py_ssize_t i, n = len(src)
    cdef object s
    if not c:
        return
    for i in range(n):
        s = src[i]
        if s:
            dst[i] = dst[i] + c * s
