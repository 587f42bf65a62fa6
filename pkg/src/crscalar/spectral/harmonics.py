"""Bigraded spherical harmonics H^{p,q} on S^3 and the L^2 pairing.

H^{p,q} is computed as the kernel of the ambient Laplacian
sum_j d/dz_j d/dzb_j on bidegree-(p, q) polynomials, then restricted to the
sphere (canonical form in :func:`~crscalar.exactalg.poly.sphere_ring`).
Inner products use the normalized measure on S^3:

    int z^a zb^b dsigma = delta_{ab} a1! a2! / (|a| + 1)!
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from ..exactalg.numbers import GaussianRational
from ..exactalg.poly import Poly, free_ring, sphere_ring
from . import linalg

__all__ = [
    "HarmonicBasis", "harmonic_basis", "inner_product", "integrate", "gram_matrix",
    "coordinates", "operator_block", "OperatorMatrix", "real_basis",
]

ZERO = GaussianRational(0)


@dataclass(frozen=True)
class HarmonicBasis:
    p: int
    q: int
    elements: tuple          # Poly in sphere_ring(), canonical
    ambient: tuple           # the same harmonics as homogeneous ambient polynomials

    @property
    def dim(self) -> int:
        return len(self.elements)

    def label(self) -> str:
        return f"H^{{{self.p},{self.q}}}"


def _bidegree_monomials(p, q):
    out = []
    for a in range(p + 1):
        for c in range(q + 1):
            out.append((a, p - a, c, q - c))
    return out


@lru_cache(maxsize=None)
def harmonic_basis(p: int, q: int) -> HarmonicBasis:
    if p < 0 or q < 0:
        raise ValueError("p, q must be nonnegative")
    amb = free_ring()
    src = _bidegree_monomials(p, q)
    dst = _bidegree_monomials(p - 1, q - 1) if p and q else []
    dst_index = {e: i for i, e in enumerate(dst)}
    # Laplacian matrix: rows = target monomials, cols = source monomials
    L = [[ZERO] * len(src) for _ in range(len(dst))]
    for j, (a, b, c, d) in enumerate(src):
        if a and c:
            L[dst_index[(a - 1, b, c - 1, d)]][j] += GaussianRational(a * c)
        if b and d:
            L[dst_index[(a, b - 1, c, d - 1)]][j] += GaussianRational(b * d)
    null = linalg.nullspace(L, ncols=len(src)) if dst else linalg.identity(len(src))
    ring = sphere_ring()
    ambient, elems = [], []
    for v in null:
        f = Poly(amb, {e: c for e, c in zip(src, v) if c})
        ambient.append(f)
        elems.append(f.change_ring(ring))
    return HarmonicBasis(p, q, tuple(elems), tuple(ambient))


def integrate(f: Poly) -> GaussianRational:
    """Mean value of f over S^3 (normalized measure)."""
    total = ZERO
    for (a1, a2, b1, b2, *rest), c in f.terms.items():
        if any(rest):
            raise ValueError("cannot integrate a polynomial with extra variables")
        if a1 == b1 and a2 == b2:
            w = Fraction(factorial(a1) * factorial(a2), factorial(a1 + a2 + 1))
            total = total + c * GaussianRational(w)
    return total


def inner_product(f: Poly, g: Poly) -> GaussianRational:
    """<f, g> = int f conj(g) dsigma."""
    return integrate(f * g.conjugate())


def gram_matrix(basis):
    """G[i][j] = <b_j, b_i>, so G @ M is the matrix of (i, j) -> <D b_j, b_i>."""
    n = len(basis)
    return [[inner_product(basis[j], basis[i]) for j in range(n)] for i in range(n)]


def coordinates(f: Poly, basis, gram=None, gram_inv=None):
    """Coefficients x with f = sum x_j b_j, or None when f is outside the span."""
    if gram_inv is None:
        gram_inv = linalg.inverse(gram or gram_matrix(basis))
    rhs = [inner_product(f, b) for b in basis]
    x = linalg.matvec(gram_inv, rhs)
    rest = f
    for c, b in zip(x, basis):
        if c:
            rest = rest - b * c
    return x if not rest else None


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of an operator on span(basis) (columns are images), with the Gram matrix."""

    labels: tuple
    entries: list
    gram: list

    def is_gram_hermitian(self) -> bool:
        return linalg.is_hermitian(linalg.matmul(self.gram, self.entries))


def operator_block(op, basis, labels=()):
    """Matrix of ``op`` on span(basis); raises if the span is not invariant."""
    G = gram_matrix(basis)
    Ginv = linalg.inverse(G)
    cols = []
    for b in basis:
        x = coordinates(op(b), basis, gram_inv=Ginv)
        if x is None:
            raise ValueError("operator does not preserve the span")
        cols.append(x)
    return OperatorMatrix(tuple(labels), linalg.transpose(cols), G)


def real_basis(elements):
    """Real and imaginary parts of a complex spanning set, reduced to a basis over Q."""
    cands = []
    for f in elements:
        cands.append(f.real_part())
        cands.append(f.imag_part())
    return independent_subset(cands)


def independent_subset(polys):
    keys = sorted({e for f in polys for e in f.terms})
    out, rows = [], []
    for f in polys:
        trial = rows + [[f.terms.get(k, ZERO) for k in keys]]
        if linalg.rank(trial) > len(rows):
            rows = trial
            out.append(f)
    return out
