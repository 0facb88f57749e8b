"""The packed bigint fast paths must agree bit-for-bit with the generic
object arithmetic they replace."""

import random
import subprocess
import sys
from fractions import Fraction

from qtheta import CyclotomicNumber, QExpansion, compare, root_of_unity
from qtheta._kernels import pure
from qtheta.cyclotomic import _ctx


def _rand_cyclo(rng, m):
    D = _ctx(m).D
    coords = [Fraction(rng.randint(-20, 20), rng.choice([1, 1, 2, 3]))
              for _ in range(D)]
    return CyclotomicNumber(m, coords)


def test_packed_series_product_matches_elementwise():
    rng = random.Random(31)
    for m in (16, 36, 56, 120):
        L = 14
        a = QExpansion(0, [_rand_cyclo(rng, m) for _ in range(L)], L)
        b = QExpansion(0, [_rand_cyclo(rng, m) for _ in range(L)], L)
        prod = a * b  # len(a)*len(b) > 64 and D > 4: packed route
        ref = pure.convolve_trunc(list(a.coeffs), list(b.coeffs), L)
        for t in range(L):
            assert prod.coefficient(t) == ref[t], (m, t)


def test_packed_single_products_match_schoolbook():
    rng = random.Random(32)
    for m in (40, 84, 116):
        ctx = _ctx(m)
        for _ in range(10):
            x = _rand_cyclo(rng, m)
            y = _rand_cyclo(rng, m)
            fast = x * y  # D > 8: packed single multiply
            # schoolbook convolution + synthetic division over Fractions
            D = ctx.D
            conv = [Fraction(0)] * (2 * D - 1)
            xc, yc = x.coords, y.coords
            for i in range(D):
                if not xc[i]:
                    continue
                for j in range(D):
                    conv[i + j] += xc[i] * yc[j]
            phi = ctx.phi_low
            for e in range(2 * D - 2, D - 1, -1):
                c = conv[e]
                if c:
                    for i in range(D):
                        conv[e - D + i] -= c * phi[i]
            ref = CyclotomicNumber(m, conv[:D])
            assert fast == ref


def test_big_conductor_product_roots():
    # zeta^a * zeta^b = zeta^{a+b} survives the packed route at phi(m) = 56
    m = 116
    z = root_of_unity(m, 1)
    series = QExpansion(0, [z**(3 * t) for t in range(20)], 20)
    sq = series * series
    for t in range(20):
        acc = None
        for i in range(t + 1):
            term = root_of_unity(m, 3 * i) * root_of_unity(m, 3 * (t - i))
            acc = term if acc is None else acc + term
        assert sq.coefficient(t) == acc


def test_kernel_env_selection():
    code = "import qtheta; print(qtheta.kernel_backend)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"QTHETA_KERNEL": "pure", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True, timeout=60, cwd="/",
    )
    assert out.stdout.strip() == "pure"


def test_mixed_rational_and_cyclotomic_coefficients():
    rng = random.Random(33)
    m = 24
    coeffs = []
    for _ in range(12):
        if rng.random() < 0.5:
            coeffs.append(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        else:
            coeffs.append(_rand_cyclo(rng, m))
    a = QExpansion(0, coeffs, 12)
    b = QExpansion(0, coeffs[::-1], 12)
    prod = a * b
    ref = pure.convolve_trunc(
        [CyclotomicNumber.rational(m, c) if isinstance(c, Fraction) else c
         for c in a.coeffs],
        [CyclotomicNumber.rational(m, c) if isinstance(c, Fraction) else c
         for c in b.coeffs],
        12,
    )
    for t in range(12):
        assert prod.coefficient(t) == ref[t]
