"""Truncated Taylor expansions in z with q-series coefficients.

A ZJet holds f(z0 + z) = sum_{j<=J} a_j z^j + O(z^{J+1}) at a fixed base
point, with each a_j a QExpansion.  Logarithms are never materialized:
everything stated through log f is computed from f'/f and (q d/dq f)/f,
and analytic limits z -> 0 become shift_zero plus slot extraction.
"""

from __future__ import annotations

from fractions import Fraction

from .series import QExpansion


class ZJet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(coeffs)
        if not cs:
            raise ValueError("a jet needs at least the constant slot")
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def slot(self, j: int) -> QExpansion:
        return self.coeffs[j]

    @property
    def precision(self) -> Fraction:
        return min(c.precision for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __repr__(self):
        inner = ", ".join(repr(c) for c in self.coeffs)
        return f"ZJet[{inner}]"

    # -- arithmetic ----------------------------------------------------

    def _zero_like(self) -> QExpansion:
        return QExpansion.zero(self.precision)

    def __add__(self, other):
        if not isinstance(other, ZJet):
            return NotImplemented
        j = min(self.degree, other.degree)
        return ZJet([self.coeffs[t] + other.coeffs[t] for t in range(j + 1)])

    def __neg__(self):
        return ZJet([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, ZJet):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ZJet):
            j = min(self.degree, other.degree)
            out = []
            for t in range(j + 1):
                acc = None
                for i in range(t + 1):
                    term = self.coeffs[i] * other.coeffs[t - i]
                    acc = term if acc is None else acc + term
                out.append(acc)
            return ZJet(out)
        # scalar (exact constant in z and q)
        return ZJet([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def div(self, other: "ZJet") -> "ZJet":
        """Quotient by a unit jet (invertible constant slot)."""
        if not isinstance(other, ZJet):
            raise TypeError("jet division needs a jet divisor")
        if other.coeffs[0].is_zero:
            raise ZeroDivisionError(
                "jet division by a non-unit (zero constant slot)"
            )
        j = min(self.degree, other.degree)
        out = []
        for t in range(j + 1):
            acc = self.coeffs[t]
            for i in range(t):
                acc = acc - out[i] * other.coeffs[t - i]
            out.append(acc / other.coeffs[0])
        return ZJet(out)

    def __truediv__(self, other):
        if isinstance(other, ZJet):
            return self.div(other)
        return ZJet([c / other for c in self.coeffs])

    # -- calculus --------------------------------------------------------

    def d_dz(self) -> "ZJet":
        """Formal z-derivative: (a_0, ..., a_J) -> (a_1, 2 a_2, ..., J a_J)."""
        if self.degree == 0:
            return ZJet([self._zero_like()])
        return ZJet([self.coeffs[j] * j for j in range(1, self.degree + 1)])

    def q_ddq(self) -> "ZJet":
        """Apply q d/dq to every slot (fractional exponents included)."""
        return ZJet([c.q_ddq() for c in self.coeffs])

    def shift_zero(self, r: int) -> "ZJet":
        """Divide out an exact zero of order r at the base point.

        The first r slots must vanish identically (to stated precision);
        otherwise the claimed zero order is wrong and this raises.
        """
        if r < 0 or r > self.degree:
            raise ValueError(f"cannot shift {r} slots of a degree-{self.degree} jet")
        for j in range(r):
            if not self.coeffs[j].is_zero:
                raise ValueError(
                    f"slot {j} is nonzero: the jet does not vanish to order {r}"
                )
        return ZJet(self.coeffs[r:])

    def scale_z(self, c) -> "ZJet":
        """Substitute z -> c*z (jet of f(c z))."""
        out, fac = [], Fraction(1)
        for j, a in enumerate(self.coeffs):
            if j:
                fac *= c
            out.append(a * fac)
        return ZJet(out)


def T_of_log(f: ZJet) -> ZJet:
    """Heat-type operator -8 q d/dq - d^2/dz^2 applied to log f.

    Computed without any logarithm as -8 (q d/dq f)/f - d/dz(f'/f);
    f must be a unit jet of degree >= 2, and the result has degree J-2.
    """
    if f.degree < 2:
        raise ValueError("T_of_log needs jet degree >= 2")
    qpart = f.q_ddq().div(f) * (-8)
    zpart = f.d_dz().div(f).d_dz()
    return qpart - zpart


def compare_jets(f: ZJet, g: ZJet, order):
    """First mismatch between two jets, slot by slot, below q-order."""
    from .series import compare

    j = min(f.degree, g.degree)
    for t in range(j + 1):
        mm = compare(f.coeffs[t], g.coeffs[t], order)
        if mm is not None:
            return t, mm
    return None
