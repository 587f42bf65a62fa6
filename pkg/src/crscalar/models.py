"""Model CR geometries as frames of polynomial vector fields.

Shipped models:

* ``Sphere3()``: the standard pseudohermitian S^3 in C^2,
* ``Rossi3(t)``: the Rossi spheres, Z = (1-t^2)^(-1/2) (Z1 + t Z1bar), for
  rational 0 < |t| < 1 or as a formal jet in t about 0,
* ``Heisenberg(n)``: the flat left-invariant structure on H^n with
  theta = ds + (i/2) sum(z dzb - zb dz), Z_a = d/dz_a + (i/2) zb_a d/ds.

Vector fields and one-forms are stored ambiently, by components on the
coordinate basis. The only pairing exposed is form(field), so the choice of
representative of a form modulo the sphere equation never matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial

from .exactalg.jets import DEFAULT_ORDER, TJet, jet_exp, jet_series
from .exactalg.numbers import GaussianRational
from .exactalg.poly import Poly, PolyRing, heisenberg_ring, sphere_ring
from .operators import LeftInvariantOperator, LieFrame

__all__ = [
    "VectorField", "Form", "FrameData", "ModelId", "Sphere3", "Rossi3", "Heisenberg",
    "parse_model", "model_frame", "bracket", "reeb_field", "deform_frame",
    "solve_linear", "invert_matrix", "standard_sphere_fields",
]

_HALF_I = GaussianRational(0, Fraction(1, 2))


def _is_zero(x) -> bool:
    return not x


def _add(a, b):
    if a is None:
        return b
    return a + b


class VectorField:
    """sum_i coeffs[i] * d/dx_i over the variables of ``ring``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs=None):
        self.ring = ring
        self.coeffs = {i: c for i, c in (coeffs or {}).items() if not _is_zero(c)}

    @classmethod
    def from_names(cls, ring, **named):
        return cls(ring, {ring.index(k): v for k, v in named.items()})

    def __getitem__(self, i):
        return self.coeffs.get(i, Poly(self.ring))

    def _check(self, other):
        if not isinstance(other, VectorField):
            raise TypeError("expected a VectorField")
        if other.ring != self.ring:
            raise ValueError("vector fields live on different models")

    def __call__(self, f):
        """Derivative of a scalar (Poly or jet) along the field."""
        out = None
        for i, c in self.coeffs.items():
            d = f.diff(i)
            if d:
                out = _add(out, c * d)
        return out if out is not None else f * 0

    def __add__(self, other):
        self._check(other)
        d = dict(self.coeffs)
        for i, c in other.coeffs.items():
            d[i] = d[i] + c if i in d else c
        return VectorField(self.ring, d)

    def __neg__(self):
        return VectorField(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        """Multiply by a scalar function (Poly, jet or number)."""
        return VectorField(self.ring, {i: c * s for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def bracket(self, other: "VectorField") -> "VectorField":
        self._check(other)
        idx = set(self.coeffs) | set(other.coeffs)
        out = {}
        for i in idx:
            v = None
            if i in other.coeffs:
                a = self(other.coeffs[i])
                v = a if a else None
            if i in self.coeffs:
                b = other(self.coeffs[i])
                if b:
                    v = -b if v is None else v - b
            if v is not None:
                out[i] = v
        return VectorField(self.ring, out)

    def conjugate(self) -> "VectorField":
        perm = self.ring.conj_perm
        return VectorField(self.ring, {perm[i]: c.conjugate() for i, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.ring.names
        return " + ".join(f"({self.coeffs[i]})*d/d{names[i]}" for i in sorted(self.coeffs))

    __repr__ = __str__


def bracket(X: VectorField, Y: VectorField) -> VectorField:
    return X.bracket(Y)


class Form:
    """sum_i coeffs[i] * dx_i; evaluated only against vector fields."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs=None):
        self.ring = ring
        self.coeffs = {i: c for i, c in (coeffs or {}).items() if not _is_zero(c)}

    @classmethod
    def from_names(cls, ring, **named):
        return cls(ring, {ring.index(k): v for k, v in named.items()})

    def __call__(self, X: VectorField):
        if X.ring != self.ring:
            raise ValueError("form and field live on different models")
        out = None
        for i, c in self.coeffs.items():
            if i in X.coeffs:
                out = _add(out, c * X.coeffs[i])
        return out if out is not None else Poly(self.ring)

    def __add__(self, other):
        d = dict(self.coeffs)
        for i, c in other.coeffs.items():
            d[i] = d[i] + c if i in d else c
        return Form(self.ring, d)

    def __neg__(self):
        return Form(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return Form(self.ring, {i: c * s for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def conjugate(self) -> "Form":
        perm = self.ring.conj_perm
        return Form(self.ring, {perm[i]: c.conjugate() for i, c in self.coeffs.items()})

    def d(self, X: VectorField, Y: VectorField):
        """Exterior derivative by the bracket formula."""
        return X(self(Y)) - Y(self(X)) - self(X.bracket(Y))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.ring.names
        return " + ".join(f"({self.coeffs[i]})*d{names[i]}" for i in sorted(self.coeffs))

    __repr__ = __str__


# ---------------------------------------------------------------------------
# model identifiers

@dataclass(frozen=True)
class Sphere3:
    def __str__(self):
        return "sphere3"


@dataclass(frozen=True)
class Rossi3:
    """Rossi sphere; ``t`` is a rational in (-1, 1) minus 0, or ``"jet"`` for a formal t."""

    t: Fraction | str
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.t == "jet":
            if self.order < 0:
                raise ValueError("jet order must be >= 0")
            return
        t = Fraction(self.t)
        if not (0 < abs(t) < 1):
            raise ValueError(f"Rossi parameter must satisfy 0 < |t| < 1, got {t}")
        object.__setattr__(self, "t", t)

    @property
    def is_jet(self) -> bool:
        return self.t == "jet"

    def __str__(self):
        return "rossi:jet" if self.is_jet else f"rossi:{self.t}"


@dataclass(frozen=True)
class Heisenberg:
    n: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"Heisenberg dimension must be a positive integer, got {self.n!r}")

    def __str__(self):
        return f"heisenberg:{self.n}"


ModelId = Sphere3 | Rossi3 | Heisenberg


def parse_model(text: str) -> ModelId:
    """"sphere3", "rossi:<p>/<q>", "rossi:jet" or "heisenberg:<n>"."""
    s = text.strip().lower()
    if s == "sphere3":
        return Sphere3()
    if s == "rossi:jet":
        return Rossi3("jet")
    m = re.fullmatch(r"rossi:(-?\d+(?:/\d+)?)", s)
    if m:
        return Rossi3(Fraction(m.group(1)))
    m = re.fullmatch(r"heisenberg:(\d+)", s)
    if m:
        return Heisenberg(int(m.group(1)))
    raise ValueError(f"unknown model {text!r}; expected sphere3, rossi:p/q, rossi:jet or heisenberg:n")


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True, eq=False)
class FrameData:
    """A CR frame {T, Z_a, Zb_a} with its dual coframe {theta, theta^a, theta^abar}.

    Frame index convention used throughout: 0 is T, 1..n are Z_a, n+1..2n are Zb_a.
    ``lie`` (optional) is a frame with constant structure constants in which
    the vectors can be expanded; it lets operators flow through the same code
    as functions.
    """

    model: object
    ring: PolyRing
    n: int
    T: VectorField
    Z: tuple
    Zbar: tuple
    theta: Form
    theta_a: tuple
    theta_abar: tuple
    lie: LieFrame | None = None
    jet_order: int | None = None

    @property
    def Z1(self):
        return self.Z[0]

    @property
    def Z1bar(self):
        return self.Zbar[0]

    @property
    def theta1(self):
        return self.theta_a[0]

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @cached_property
    def vectors(self) -> tuple:
        return (self.T,) + tuple(self.Z) + tuple(self.Zbar)

    @cached_property
    def coforms(self) -> tuple:
        return (self.theta,) + tuple(self.theta_a) + tuple(self.theta_abar)

    def conj_index(self, k: int) -> int:
        n = self.n
        if k == 0:
            return 0
        return k + n if k <= n else k - n

    def zero(self):
        if self.jet_order is not None:
            return TJet.constant(Poly(self.ring), self.jet_order)
        return Poly(self.ring)

    def one(self):
        return self.zero() + 1

    @cached_property
    def structure(self):
        """c[i][j][k] = coform_k([e_i, e_j])."""
        d = self.dim
        c = [[[self.zero()] * d for _ in range(d)] for _ in range(d)]
        vec = self.vectors
        for i in range(d):
            for j in range(i + 1, d):
                br = vec[i].bracket(vec[j])
                for k in range(d):
                    v = self.coforms[k](br)
                    c[i][j][k] = v
                    c[j][i][k] = -v
        return c

    @cached_property
    def h(self):
        """Levi matrix h[a][b] = i theta([Z_a, Zb_b]) (0-based a, b)."""
        n = self.n
        c = self.structure
        return [[c[1 + a][1 + n + b][0] * GaussianRational(0, 1) for b in range(n)] for a in range(n)]

    @cached_property
    def _lie_coeffs(self):
        lie = self.lie
        return [[lie.coforms[m](v) for m in range(lie.n * 2 + 1)] for v in self.vectors]

    def derive(self, k: int, f):
        """Frame vector e_k applied to a scalar, a jet, or (with ``lie``) an operator."""
        if isinstance(f, LeftInvariantOperator):
            if self.lie is None:
                raise TypeError("frame has no generator expansion; cannot act on operators")
            return f.apply_field(self._lie_coeffs[k])
        return self.vectors[k](f)

    def duality_defects(self) -> list:
        """Pairs (form, vector) where coform_k(e_j) differs from delta_kj."""
        bad = []
        for k, w in enumerate(self.coforms):
            for j, v in enumerate(self.vectors):
                val = w(v)
                if val != (1 if j == k else 0):
                    bad.append((k, j))
        return bad


def standard_sphere_fields(ring: PolyRing):
    """(T, Z1, Z1bar, theta, theta1, theta1bar) of the standard S^3 in ``ring``."""
    z1, z2, zb1, zb2 = (Poly.var(ring, v) for v in ("z1", "z2", "zb1", "zb2"))
    i = GaussianRational(0, 1)
    T = VectorField.from_names(ring, z1=z1 * i, z2=z2 * i, zb1=-zb1 * i, zb2=-zb2 * i)
    Z = VectorField.from_names(ring, z1=zb2, z2=-zb1)
    Zb = Z.conjugate()
    theta = Form.from_names(
        ring, z1=-zb1 * _HALF_I, z2=-zb2 * _HALF_I, zb1=z1 * _HALF_I, zb2=z2 * _HALF_I
    )
    th1 = Form.from_names(ring, z1=z2, z2=-z1)
    return T, Z, Zb, theta, th1, th1.conjugate()


def _heisenberg_fields(n: int):
    ring = heisenberg_ring(n)
    s = ring.index("s")
    T = VectorField(ring, {s: Poly.const(ring, 1)})
    Z, Zb, th_a, th_ab = [], [], [], []
    theta_c = {s: Poly.const(ring, 1)}
    for a in range(n):
        z = Poly.var(ring, f"z{a + 1}")
        zb = Poly.var(ring, f"zb{a + 1}")
        Z.append(VectorField(ring, {a: Poly.const(ring, 1), s: zb * _HALF_I}))
        Zb.append(VectorField(ring, {n + a: Poly.const(ring, 1), s: -z * _HALF_I}))
        th_a.append(Form(ring, {a: Poly.const(ring, 1)}))
        th_ab.append(Form(ring, {n + a: Poly.const(ring, 1)}))
        theta_c[a] = -zb * _HALF_I
        theta_c[n + a] = z * _HALF_I
    return ring, T, Z, Zb, Form(ring, theta_c), th_a, th_ab


def _sphere_lie(ring) -> LieFrame:
    T, Z, Zb, th, th1, th1b = standard_sphere_fields(ring)
    return LieFrame(ring, 1, (T, Z, Zb), (th, th1, th1b))


def _rossi_scale_jet(ring, order):
    """Jets of t and (1 - t^2)^(-1/2)."""
    t = TJet.param(ring, order)
    # (1 - x)^(-1/2) = sum C(2k, k)/4^k x^k
    coeffs = [Fraction(comb(2 * k, k), 4**k) for k in range(order + 1)]
    return t, jet_series(t * t, coeffs)


def model_frame(m: ModelId) -> FrameData:
    if isinstance(m, Sphere3):
        ring = sphere_ring()
        T, Z, Zb, th, th1, th1b = standard_sphere_fields(ring)
        return FrameData(m, ring, 1, T, (Z,), (Zb,), th, (th1,), (th1b,), lie=_sphere_lie(ring))
    if isinstance(m, Rossi3):
        if m.is_jet:
            ring = sphere_ring()
            t, c = _rossi_scale_jet(ring, m.order)
            lie, order = None, m.order
        else:
            t = m.t
            ring = sphere_ring(1 - t * t)
            # lam = sqrt(1 - t^2); 1/sqrt(1 - t^2) = lam / (1 - t^2)
            c = Poly.var(ring, "lam") * GaussianRational(1 / (1 - t * t))
            lie, order = _sphere_lie(ring), None
        T, Z0, Zb0, th, th1, th1b = standard_sphere_fields(ring)
        Z = (Z0 + Zb0 * t) * c
        Zb = (Zb0 + Z0 * t) * c
        ta = (th1 - th1b * t) * c
        tab = (th1b - th1 * t) * c
        if order is not None:
            T, th = T * TJet.constant(Poly.const(ring, 1), order), th * TJet.constant(Poly.const(ring, 1), order)
        return FrameData(m, ring, 1, T, (Z,), (Zb,), th, (ta,), (tab,), lie=lie, jet_order=order)
    if isinstance(m, Heisenberg):
        ring, T, Z, Zb, th, th_a, th_ab = _heisenberg_fields(m.n)
        lie = LieFrame(ring, m.n, (T, *Z, *Zb), (th, *th_a, *th_ab))
        return FrameData(m, ring, m.n, T, tuple(Z), tuple(Zb), th, tuple(th_a), tuple(th_ab), lie=lie)
    raise TypeError(f"not a model: {m!r}")


# ---------------------------------------------------------------------------
# exact linear algebra over scalars (Poly constants or jets)

def _invertible(x) -> bool:
    if isinstance(x, TJet):
        c0 = x.coeffs[0]
        return bool(c0) and c0.is_constant()
    return bool(x) and x.is_constant()


def _inverse(x):
    if isinstance(x, TJet):
        return 1 / x
    return Poly.const(x.ring, x.constant_value().inverse())


def solve_linear(A, b):
    """Solve A x = b by elimination with invertible (constant-leading) pivots."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if _invertible(M[r][col])), None)
        if piv is None:
            raise ValueError("degenerate linear system: no invertible pivot")
        M[col], M[piv] = M[piv], M[col]
        inv = _inverse(M[col][col])
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def invert_matrix(A):
    n = len(A)
    cols = []
    one, zero = A[0][0] * 0 + 1, A[0][0] * 0
    for j in range(n):
        cols.append(solve_linear(A, [one if i == j else zero for i in range(n)]))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Reeb fields and deformed frames

def reeb_field(theta: Form, base: FrameData) -> VectorField:
    """The field T with theta(T) = 1 and dtheta(T, .) = 0, expanded in ``base``'s frame.

    ``theta`` must annihilate the base contact distribution (e.g. e^{tu} theta_0).
    """
    vec = base.vectors
    d = base.dim
    vals = [theta(v) for v in vec]
    dth = [[None] * d for _ in range(d)]
    for k in range(d):
        for j in range(d):
            dth[k][j] = vec[k](vals[j]) - vec[j](vals[k]) - theta(vec[k].bracket(vec[j]))
    zero = vals[0] * 0
    rows = [vals] + [[dth[k][j] for k in range(d)] for j in range(1, d)]
    rhs = [zero + 1] + [zero] * (d - 1)
    a = solve_linear(rows, rhs)
    out = VectorField(base.ring)
    for k in range(d):
        if a[k]:
            out = out + vec[k] * a[k]
    return out


def _as_jet(x, ring, order):
    if isinstance(x, TJet):
        return x
    return TJet.constant(x.change_ring(ring) if x.ring != ring else x, order)


def deform_frame(m: ModelId, E, order: int = DEFAULT_ORDER) -> FrameData:
    """Frame jet of the path (J0 exp(-2t J0 E), e^{tu} theta) through model ``m``.

    ``E`` carries ``E11`` (the component E_{11} at n = 1) and ``u``.
    The deformed Z is cosh(t|e|) Z - i e sinh(t|e|)/|e| Zbar with e = E_1^{1bar}.
    """
    base = model_frame(m)
    if base.jet_order is not None:
        raise ValueError("deform_frame needs a base model with exact coefficients")
    if base.n != 1:
        raise ValueError("deformations are implemented for n = 1 models")
    if order < 0 or order > DEFAULT_ORDER:
        raise ValueError(f"jet order must be between 0 and {DEFAULT_ORDER}")
    ring = base.ring
    h = base.h[0][0]
    if not h.is_constant():
        raise ValueError("base Levi form must be constant")
    e11 = E.E11.change_ring(ring) if E.E11.ring != ring else E.E11
    u = E.u.change_ring(ring) if E.u.ring != ring else E.u
    e = e11 * h.constant_value().inverse()
    t = TJet.param(ring, order)
    x = t * t * (e * e.conjugate())
    kmax = order + 1
    C = jet_series(x, [Fraction(1, factorial(2 * k)) for k in range(kmax)])
    S = t * jet_series(x, [Fraction(1, factorial(2 * k + 1)) for k in range(kmax)])
    i = GaussianRational(0, 1)
    Z = base.Z1 * C + base.Z1bar * (S * (e * (-i)))
    Zb = Z.conjugate()
    theta = base.theta * jet_exp(u, order)
    T = reeb_field(theta, base)
    new = (T, Z, Zb)
    P = [[_as_jet(w(v), ring, order) for v in new] for w in base.coforms]
    Q = invert_matrix(P)
    cof = []
    for j in range(3):
        w = Form(ring)
        for k in range(3):
            if Q[j][k]:
                w = w + base.coforms[k] * Q[j][k]
        cof.append(w)
    return FrameData(m, ring, 1, T, (Z,), (Zb,), theta, (cof[1],), (cof[2],), jet_order=order)
