"""Sparse multivariate polynomials with Gaussian-rational coefficients.

A :class:`Poly` lives in a :class:`PolyRing`, which fixes the variable list,
the conjugation (which variable is the complex conjugate of which), and an
optional set of rewrite rules that put every element into a canonical form.

Two kinds of rewrite are supported:

* the unit-sphere relation ``z1*zb1 -> 1 - z2*zb2`` (functions on S^3), and
* a real quadratic unit ``lam`` with ``lam^2 -> d`` for a rational ``d``.

Both rules are confluent, so canonical forms are unique and equality of
polynomials is equality of term dictionaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from gmpy2 import mpq

from .numbers import ONE, ZERO, GaussianRational

__all__ = [
    "PolyRing",
    "Poly",
    "sphere_ring",
    "heisenberg_ring",
    "free_ring",
    "sphere_reduce",
    "conjugate",
    "random_poly",
    "random_real_poly",
]


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    conj_perm: tuple[int, ...]
    sphere: bool = False
    lam_sq: Fraction | None = None
    # Heisenberg-homogeneity weights (deg z = deg zb = 1, deg s = 2)
    weights: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"variable {name!r} not in ring {self.names}") from None

    @property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def has_rules(self) -> bool:
        return self.sphere or self.lam_sq is not None

    def rewrite(self, exp: tuple[int, ...]):
        """Canonical expansion of a monomial: tuple of (exp, rational) or None if canonical."""
        cache = self._cache
        if exp in cache:
            return cache[exp]
        out = self._rewrite(exp)
        cache[exp] = out
        return out

    def _rewrite(self, exp):
        terms = {exp: mpq(1)}
        changed = False
        if self.lam_sq is not None:
            li = self.names.index("lam")
            e = exp[li]
            if e >= 2:
                changed = True
                new = list(exp)
                new[li] = e % 2
                terms = {tuple(new): mpq(self.lam_sq) ** (e // 2)}
        if self.sphere:
            i1, ib1, i2, ib2 = 0, 2, 1, 3
            out: dict = {}
            for ex, c in terms.items():
                k = min(ex[i1], ex[ib1])
                if k == 0:
                    out[ex] = out.get(ex, 0) + c
                    continue
                changed = True
                # (z1 zb1)^k = (1 - z2 zb2)^k
                for j in range(k + 1):
                    new = list(ex)
                    new[i1] -= k
                    new[ib1] -= k
                    new[i2] += j
                    new[ib2] += j
                    key = tuple(new)
                    out[key] = out.get(key, 0) + c * comb(k, j) * (-1) ** j
            terms = {e: c for e, c in out.items() if c != 0}
        if not changed:
            return None
        return tuple(terms.items())


@lru_cache(maxsize=None)
def sphere_ring(lam_sq: Fraction | None = None) -> PolyRing:
    """Functions on S^3 in z1, z2, zb1, zb2 (and optionally the unit ``lam``)."""
    names = ("z1", "z2", "zb1", "zb2")
    perm = (2, 3, 0, 1)
    if lam_sq is not None:
        lam_sq = Fraction(lam_sq)
        if lam_sq <= 0:
            raise ValueError("lam^2 must be positive")
        names += ("lam",)
        perm += (4,)
    return PolyRing(names, perm, sphere=True, lam_sq=lam_sq, weights=(1,) * len(names))


@lru_cache(maxsize=None)
def heisenberg_ring(n: int) -> PolyRing:
    """Polynomials in z1..zn, zb1..zbn, s on the Heisenberg group H^n."""
    if n < 1:
        raise ValueError("n must be positive")
    names = tuple(f"z{a + 1}" for a in range(n)) + tuple(f"zb{a + 1}" for a in range(n)) + ("s",)
    perm = tuple(range(n, 2 * n)) + tuple(range(n)) + (2 * n,)
    weights = (1,) * (2 * n) + (2,)
    return PolyRing(names, perm, weights=weights)


@lru_cache(maxsize=None)
def free_ring(names: tuple[str, ...] = ("z1", "z2", "zb1", "zb2")) -> PolyRing:
    """Ambient polynomial ring (no relations); conjugation pairs zK <-> zbK."""
    perm = []
    for nm in names:
        if nm.startswith("zb"):
            perm.append(names.index("z" + nm[2:]))
        elif nm.startswith("z"):
            perm.append(names.index("zb" + nm[1:]))
        else:
            perm.append(names.index(nm))
    return PolyRing(tuple(names), tuple(perm), weights=(1,) * len(names))


def _coef(x) -> GaussianRational:
    return GaussianRational.coerce(x)


class Poly:
    """Polynomial in canonical form over a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None, *, canonical: bool = False):
        self.ring = ring
        if not terms:
            self.terms = {}
            return
        if canonical:
            self.terms = dict(terms)
            return
        acc: dict = {}
        rules = ring.has_rules()
        for e, c in terms.items():
            c = _coef(c)
            if not c:
                continue
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError(f"exponent {e} does not match ring {ring.names}")
            rw = ring.rewrite(e) if rules else None
            if rw is None:
                acc[e] = acc.get(e, ZERO) + c
            else:
                for e2, r in rw:
                    acc[e2] = acc.get(e2, ZERO) + c * r
        self.terms = {e: c for e, c in acc.items() if c}

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, ring: PolyRing, c) -> "Poly":
        c = _coef(c)
        return cls(ring, {ring.zero_exp: c} if c else {}, canonical=True)

    @classmethod
    def var(cls, ring: PolyRing, name: str, power: int = 1) -> "Poly":
        e = [0] * ring.nvars
        e[ring.index(name)] = power
        return cls(ring, {tuple(e): ONE})

    @classmethod
    def monomial(cls, ring: PolyRing, exp: Iterable[int], c=1) -> "Poly":
        return cls(ring, {tuple(exp): c})

    def _wrap(self, x) -> "Poly | None":
        if isinstance(x, Poly):
            if x.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring.names} vs {x.ring.names}")
            return x
        try:
            return Poly.const(self.ring, x)
        except TypeError:
            return None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.ring, t, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, canonical=True)

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

    def scale(self, c) -> "Poly":
        c = _coef(c)
        if not c:
            return Poly(self.ring)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()}, canonical=True)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            return self._mul_poly(other)
        try:
            c = _coef(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        try:
            c = _coef(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    def _mul_poly(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly(self.ring)
        if len(a) < len(b):
            a, b = b, a
        ring = self.ring
        rules = ring.has_rules()
        acc: dict = {}
        get = acc.get
        for e1, c1 in b.items():
            for e2, c2 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                rw = ring.rewrite(e) if rules else None
                if rw is None:
                    v = get(e)
                    acc[e] = c if v is None else v + c
                else:
                    for e3, r in rw:
                        v = get(e3)
                        cr = c * r
                        acc[e3] = cr if v is None else v + cr
        return Poly(ring, {e: c for e, c in acc.items() if c}, canonical=True)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        c = _coef(other)
        return self.scale(c.inverse())

    # calculus -------------------------------------------------------------
    def diff(self, var) -> "Poly":
        """Partial derivative of this representative (taken before any reduction)."""
        i = var if isinstance(var, int) else self.ring.index(var)
        acc = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                acc[e2] = c * k
        # differentiation can leave a non-canonical monomial (e.g. d/dz2 of z1*zb1*z2 is not
        # reachable from canonical input, but d/dlam of lam*... is); re-canonicalize
        return Poly(self.ring, acc)

    def conjugate(self) -> "Poly":
        perm = self.ring.conj_perm
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(e)
            for i, k in enumerate(e):
                e2[perm[i]] = k
            out[tuple(e2)] = c.conjugate()
        return Poly(self.ring, out)

    def real_part(self) -> "Poly":
        return (self + self.conjugate()) * GaussianRational(Fraction(1, 2))

    def imag_part(self) -> "Poly":
        return (self - self.conjugate()) * GaussianRational(0, Fraction(-1, 2))

    # inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        z = self.ring.zero_exp
        return all(e == z for e in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(self.ring.zero_exp, ZERO)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.constant_term()

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self) -> set[int]:
        w = self.ring.weights
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def homogeneous_part(self, d: int) -> "Poly":
        w = self.ring.weights
        return Poly(
            self.ring,
            {e: c for e, c in self.terms.items() if sum(a * b for a, b in zip(e, w)) == d},
            canonical=True,
        )

    def uses(self, name: str) -> bool:
        if name not in self.ring.names:
            return False
        i = self.ring.index(name)
        return any(e[i] for e in self.terms)

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Re-express in another ring sharing a prefix of variable names."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for nm, k in zip(self.ring.names, e):
                if k:
                    e2[ring.index(nm)] = k
            out[tuple(e2)] = c
        return Poly(ring, out)

    def evaluate(self, point: Mapping[str, complex]) -> complex:
        vals = [complex(point[nm]) for nm in self.ring.names]
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            o = Poly.const(self.ring, other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from .grammar import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def sphere_reduce(p: Poly) -> Poly:
    """Canonical form on S^3 of a polynomial in z1, z2, zb1, zb2."""
    ring = sphere_ring(p.ring.lam_sq) if "lam" in p.ring.names else sphere_ring()
    for nm in p.ring.names:
        if nm not in ring.names:
            raise KeyError(f"variable {nm!r} is not a sphere variable")
    if p.ring == ring:
        return p
    return p.change_ring(ring)


def conjugate(p):
    return p.conjugate()


def random_poly(ring: PolyRing, degree: int, rng: random.Random, *, density: float = 0.5,
                coeff_range: int = 3, names: tuple[str, ...] | None = None) -> Poly:
    """Random polynomial of total degree <= degree with small Gaussian-integer coefficients."""
    names = names or tuple(nm for nm in ring.names if nm != "lam")
    idx = [ring.index(nm) for nm in names]
    exps = []

    def rec(pos, left, cur):
        if pos == len(idx):
            exps.append(tuple(cur))
            return
        for k in range(left + 1):
            cur.append(k)
            rec(pos + 1, left - k, cur)
            cur.pop()

    rec(0, degree, [])
    terms = {}
    for sub in exps:
        if rng.random() > density:
            continue
        e = [0] * ring.nvars
        for i, k in zip(idx, sub):
            e[i] = k
        c = GaussianRational(rng.randint(-coeff_range, coeff_range), rng.randint(-coeff_range, coeff_range))
        terms[tuple(e)] = c
    return Poly(ring, terms)


def random_real_poly(ring: PolyRing, degree: int, rng: random.Random, **kw) -> Poly:
    p = random_poly(ring, degree, rng, **kw)
    return p + p.conjugate()
