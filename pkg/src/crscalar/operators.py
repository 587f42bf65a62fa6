"""Differential operators as normal-ordered words in an invariant frame.

The model frames shipped here ({T, Z_a, Zb_a} on H^n and on S^3 = SU(2)) have
constant structure constants, so every differential operator with polynomial
coefficients can be written uniquely as

    sum_w  c_w(z) * g_{w1} g_{w2} ... g_{wk}

with each word ``w`` normal ordered (all Z's, then all Zb's, then T's).
Letters are frame indices: 0 is T, 1..n are Z_1..Z_n, n+1..2n are Zb_1..Zb_n.
"""

from __future__ import annotations

from functools import lru_cache

from .exactalg.numbers import GaussianRational
from .exactalg.poly import Poly

__all__ = ["LieFrame", "LeftInvariantOperator"]


class LieFrame:
    """A global frame with constant structure constants, used as operator generators."""

    def __init__(self, ring, n, vectors, coforms):
        self.ring = ring
        self.n = n
        self.vectors = tuple(vectors)
        self.coforms = tuple(coforms)
        dim = 2 * n + 1
        consts = {}
        for i in range(dim):
            for j in range(dim):
                if i == j:
                    continue
                br = self.vectors[i].bracket(self.vectors[j])
                row = {}
                for k in range(dim):
                    c = self.coforms[k](br)
                    if not c.is_constant():
                        raise ValueError("frame does not have constant structure constants")
                    v = c.constant_value()
                    if v:
                        row[k] = v
                consts[(i, j)] = row
        self.consts = consts
        self._mul = lru_cache(maxsize=None)(self._mul_gen)

    def rank(self, k: int) -> int:
        # Z's (1..n) < Zb's (n+1..2n) < T (0)
        return 2 * self.n if k == 0 else k - 1

    def conj_index(self, k: int) -> int:
        if k == 0:
            return 0
        n = self.n
        return k + n if k <= n else k - n

    def letter_order(self, k: int) -> int:
        return 2 if k == 0 else 1

    def mul_gen(self, k: int, word: tuple) -> dict:
        """Normal-ordered expansion of g_k * word (word already normal ordered)."""
        return self._mul(k, word)

    def _mul_gen(self, k, word):
        if not word or self.rank(k) <= self.rank(word[0]):
            return {(k,) + word: GaussianRational(1)}
        first, rest = word[0], word[1:]
        out: dict = {}
        # g_k g_f rest = g_f (g_k rest) + [g_k, g_f] rest
        for w, c in self._mul(k, rest).items():
            for w2, c2 in self._mul(first, w).items():
                _acc(out, w2, c * c2)
        for m, cm in self.consts[(k, first)].items():
            for w, c in self._mul(m, rest).items():
                _acc(out, w, cm * c)
        return {w: c for w, c in out.items() if c}


def _acc(d, key, val):
    v = d.get(key)
    d[key] = val if v is None else v + val


class LeftInvariantOperator:
    """sum_w c_w * word_w over a :class:`LieFrame`; coefficients are polynomials."""

    __slots__ = ("frame", "terms")

    def __init__(self, frame: LieFrame, terms=None):
        self.frame = frame
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def identity(cls, frame: LieFrame) -> "LeftInvariantOperator":
        return cls(frame, {(): Poly.const(frame.ring, 1)})

    @classmethod
    def word(cls, frame: LieFrame, letters, coef=1) -> "LeftInvariantOperator":
        op = cls(frame, {(): Poly.const(frame.ring, coef)})
        for k in reversed(tuple(letters)):
            op = op.apply_generator(k)
        return op

    # linear structure ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LeftInvariantOperator):
            return other
        if isinstance(other, Poly):
            return LeftInvariantOperator(self.frame, {(): other})
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return None
        return LeftInvariantOperator(self.frame, {(): Poly.const(self.frame.ring, c)})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for w, c in o.terms.items():
            t[w] = t[w] + c if w in t else c
        return LeftInvariantOperator(self.frame, t)

    __radd__ = __add__

    def __neg__(self):
        return LeftInvariantOperator(self.frame, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        """Pointwise product of the output with a function or constant (not composition)."""
        if isinstance(other, LeftInvariantOperator):
            raise TypeError("use compose() for operator products")
        if isinstance(other, Poly):
            return LeftInvariantOperator(self.frame, {w: other * c for w, c in self.terms.items()})
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return LeftInvariantOperator(self.frame, {w: v * c for w, v in self.terms.items()})

    __rmul__ = __mul__

    # composition -------------------------------------------------------------
    def apply_generator(self, k: int) -> "LeftInvariantOperator":
        """g_k composed on the left: g_k(c_w * w) = g_k(c_w) * w + c_w * (g_k w)."""
        g = self.frame.vectors[k]
        out: dict = {}
        for w, c in self.terms.items():
            dc = g(c)
            if dc:
                _acc(out, w, dc)
            for w2, c2 in self.frame.mul_gen(k, w).items():
                _acc(out, w2, c * c2)
        return LeftInvariantOperator(self.frame, out)

    def apply_field(self, coeffs) -> "LeftInvariantOperator":
        """X composed on the left, where X = sum_k coeffs[k] * g_k."""
        out = LeftInvariantOperator(self.frame)
        for k, a in enumerate(coeffs):
            if a:
                out = out + self.apply_generator(k) * a
        return out

    def compose(self, other: "LeftInvariantOperator") -> "LeftInvariantOperator":
        """self o other."""
        out = LeftInvariantOperator(self.frame)
        for w, c in self.terms.items():
            op = other
            for k in reversed(w):
                op = op.apply_generator(k)
            out = out + op * c
        return out

    def conjugate(self) -> "LeftInvariantOperator":
        """The operator f -> conj(self(conj f))."""
        fr = self.frame
        out = LeftInvariantOperator(fr)
        for w, c in self.terms.items():
            out = out + LeftInvariantOperator.word(fr, [fr.conj_index(k) for k in w], 1) * c.conjugate()
        return out

    def __call__(self, f):
        """Apply to a function (Poly or jet)."""
        vecs = self.frame.vectors
        total = None
        cache = {(): f}
        for w, c in self.terms.items():
            val = _apply_word(vecs, w, cache)
            term = c * val
            total = term if total is None else total + term
        return total if total is not None else f * 0

    # inspection ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def uses(self, name: str) -> bool:
        return any(c.uses(name) for c in self.terms.values())

    def map_coefficients(self, fn, frame=None) -> "LeftInvariantOperator":
        return LeftInvariantOperator(frame or self.frame, {w: fn(c) for w, c in self.terms.items()})

    def heisenberg_order(self) -> int | None:
        """max over terms of word order minus coefficient degree; None for the zero operator."""
        fr = self.frame
        best = None
        for w, c in self.terms.items():
            wo = sum(fr.letter_order(k) for k in w)
            for d in c.weighted_degrees():
                o = wo - d
                best = o if best is None else max(best, o)
        return best

    def part_of_order(self, order: int) -> "LeftInvariantOperator":
        fr = self.frame
        out = {}
        for w, c in self.terms.items():
            wo = sum(fr.letter_order(k) for k in w)
            for d in c.weighted_degrees():
                if wo - d == order:
                    out[w] = out.get(w, Poly(c.ring)) + c.homogeneous_part(d)
        return LeftInvariantOperator(fr, out)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        names = _letter_names(self.frame.n)
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            word = "".join(names[k] for k in w) or "1"
            parts.append(f"({self.terms[w]})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


def _letter_names(n):
    return ["T"] + [f"Z{a + 1}" for a in range(n)] + [f"Zb{a + 1}" for a in range(n)]


def _apply_word(vecs, w, cache):
    if w in cache:
        return cache[w]
    inner = _apply_word(vecs, w[1:], cache)
    val = vecs[w[0]](inner)
    cache[w] = val
    return val
