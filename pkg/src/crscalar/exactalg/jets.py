"""Truncated power series in a real deformation parameter t.

A :class:`TJet` of order ``k`` stores the coefficients of ``1, t, ..., t^k``;
coefficients are :class:`~crscalar.exactalg.poly.Poly` values of one ring.
Jets support the same small protocol as polynomials (``+ - *``, ``conjugate``,
``diff``), so geometric code written for polynomial coefficients also runs
along a path of structures.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .numbers import GaussianRational
from .poly import Poly, PolyRing

__all__ = ["TJet", "jet_exp", "jet_invert", "jet_series", "DEFAULT_ORDER"]

DEFAULT_ORDER = 2


class TJet:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs):
        self.ring = ring
        cs = []
        for c in coeffs:
            if not isinstance(c, Poly):
                c = Poly.const(ring, c)
            elif c.ring != ring:
                raise ValueError("jet coefficient from a different ring")
            cs.append(c)
        if not cs:
            raise ValueError("a jet needs at least the constant coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value: Poly, order: int) -> "TJet":
        ring = value.ring
        return cls(ring, [value] + [Poly(ring)] * order)

    @classmethod
    def param(cls, ring: PolyRing, order: int) -> "TJet":
        """The jet of t itself."""
        cs = [Poly(ring)] * (order + 1)
        if order >= 1:
            cs[1] = Poly.const(ring, 1)
        return cls(ring, cs)

    def __getitem__(self, k: int) -> Poly:
        return self.coeffs[k] if k <= self.order else Poly(self.ring)

    def _wrap(self, other):
        if isinstance(other, TJet):
            if other.ring != self.ring:
                raise ValueError("ring mismatch between jets")
            return other
        if isinstance(other, Poly):
            return TJet.constant(other, self.order)
        try:
            return TJet.constant(Poly.const(self.ring, other), self.order)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        k = min(self.order, o.order)
        return TJet(self.ring, [self.coeffs[j] + o.coeffs[j] for j in range(k + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TJet(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (TJet, Poly)):
            o = self._wrap(other)
            k = min(self.order, o.order)
            out = []
            for j in range(k + 1):
                acc = Poly(self.ring)
                for a in range(j + 1):
                    x, y = self.coeffs[a], o.coeffs[j - a]
                    if x and y:
                        acc = acc + x * y
                out.append(acc)
            return TJet(self.ring, out)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return TJet(self.ring, [x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (TJet, Poly)):
            return self * jet_invert(self._wrap(other))
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o * jet_invert(self)

    def __pow__(self, k: int):
        if k < 0:
            return jet_invert(self) ** (-k)
        out = TJet.constant(Poly.const(self.ring, 1), self.order)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, var) -> "TJet":
        return TJet(self.ring, [c.diff(var) for c in self.coeffs])

    def conjugate(self) -> "TJet":
        return TJet(self.ring, [c.conjugate() for c in self.coeffs])

    def truncate(self, order: int) -> "TJet":
        return TJet(self.ring, [self[j] for j in range(order + 1)])

    def shift(self) -> "TJet":
        """Multiply by t (dropping the top coefficient)."""
        return TJet(self.ring, [Poly(self.ring)] + list(self.coeffs[:-1]))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def uses(self, name: str) -> bool:
        return any(c.uses(name) for c in self.coeffs)

    def change_ring(self, ring: PolyRing) -> "TJet":
        return TJet(ring, [c.change_ring(ring) for c in self.coeffs])

    def __eq__(self, other):
        o = self._wrap(other) if not isinstance(other, TJet) else other
        if o is None:
            return NotImplemented
        k = max(self.order, o.order)
        return all(self[j] == o[j] for j in range(k + 1))

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            if j == 0:
                parts.append(s)
            else:
                parts.append(f"({s})*t" + (f"^{j}" if j > 1 else ""))
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"

    __repr__ = __str__


def jet_series(x: "TJet", coeffs) -> TJet:
    """sum_k coeffs[k] * x^k for a jet x with zero constant term."""
    if x.coeffs[0]:
        raise ValueError("series composition needs a jet with zero constant term")
    out = TJet.constant(Poly.const(x.ring, coeffs[0]), x.order)
    power = TJet.constant(Poly.const(x.ring, 1), x.order)
    for k in range(1, x.order + 1):
        power = power * x
        if k < len(coeffs) and coeffs[k]:
            out = out + power * GaussianRational.coerce(coeffs[k])
    return out


def jet_exp(u: Poly, order: int = DEFAULT_ORDER) -> TJet:
    """Taylor jet of t -> exp(t*u): coefficient k is u^k / k!."""
    if order < 0:
        raise ValueError("order must be >= 0")
    cs = []
    power = Poly.const(u.ring, 1)
    for k in range(order + 1):
        cs.append(power * GaussianRational(Fraction(1, factorial(k))))
        power = power * u
    return TJet(u.ring, cs)


def jet_invert(j: TJet) -> TJet:
    """Two-sided inverse to the jet order.  The constant term must be a nonzero constant."""
    c0 = j.coeffs[0]
    if not c0.is_constant() or not c0:
        raise ZeroDivisionError(
            "jet inverse needs a nonzero constant leading coefficient, got " + str(c0)
        )
    inv0 = c0.constant_value().inverse()
    # b_0 = 1/a_0, b_k = -(1/a_0) sum_{m>=1} a_m b_{k-m}
    b = [Poly.const(j.ring, inv0)]
    for k in range(1, j.order + 1):
        acc = Poly(j.ring)
        for m in range(1, k + 1):
            if j.coeffs[m] and b[k - m]:
                acc = acc + j.coeffs[m] * b[k - m]
        b.append(acc * (-inv0))
    return TJet(j.ring, b)
