"""Pure-Python fallback for the hot loops.

Semantics must match qtheta._kernels._fast exactly: these functions are
interchangeable and the benchmark suite compares them.  All of them work
on plain Python lists of ring elements (ints, Fractions, packed bigints,
CyclotomicNumbers): the only operations used are +, * and bool().
"""


def convolve(a, b):
    """Full Cauchy product of two coefficient lists (len = la+lb-1)."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    out = [None] * (la + lb - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            k = i + j
            cur = out[k]
            if cur is None:
                out[k] = ai * bj
            else:
                out[k] = cur + ai * bj
    zero = (a[0] - a[0]) if la else 0
    return [zero if c is None else c for c in out]


def convolve_trunc(a, b, n):
    """First n coefficients of the Cauchy product."""
    la, lb = len(a), len(b)
    out = [None] * n
    for i, ai in enumerate(a):
        if i >= n:
            break
        if not ai:
            continue
        jmax = min(lb, n - i)
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
    return [zero if c is None else c for c in out]


def convolve_square(a):
    """Cauchy square, using the symmetry a_i*a_j + a_j*a_i = 2*a_i*a_j."""
    la = len(a)
    if la == 0:
        return []
    out = [None] * (2 * la - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        sq = ai * ai
        k = 2 * i
        out[k] = sq if out[k] is None else out[k] + sq
        for j in range(i + 1, la):
            aj = a[j]
            if not aj:
                continue
            t = ai * aj
            t = t + t
            k = i + j
            out[k] = t if out[k] is None else out[k] + t
    zero = a[0] - a[0]
    return [zero if c is None else c for c in out]


def cyclo_rem(vec, phi_low):
    """Remainder of vec (coeff list, degree order) modulo a monic poly.

    phi_low holds the low coefficients of the monic divisor (degree d =
    len(phi_low)); vec may have any length.  Returns a list of length d.
    """
    d = len(phi_low)
    v = list(vec)
    if len(v) < d:
        return v + [0] * (d - len(v))
    for e in range(len(v) - 1, d - 1, -1):
        c = v[e]
        if c:
            base = e - d
            for i in range(d):
                if phi_low[i]:
                    v[base + i] -= c * phi_low[i]
        # slot e is now dead; no need to zero it
    return v[:d]


def dot(a, b):
    """Dot product of two equal-length lists."""
    acc = None
    for x, y in zip(a, b):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return 0 if acc is None else acc


def scaled_add(dst, src, c):
    """dst[i] += c * src[i] in place."""
    if not c:
        return
    for i, s in enumerate(src):
        if s:
            dst[i] += c * s
