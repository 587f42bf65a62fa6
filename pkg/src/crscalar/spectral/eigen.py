"""Exact eigenvalue computations on blocks of spherical harmonics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..connection import sublaplacian
from ..exactalg.numbers import GaussianRational
from ..models import Sphere3
from ..variation import connection_for
from . import linalg, univariate
from .harmonics import coordinates, harmonic_basis, operator_block, real_basis

__all__ = [
    "ZZSpectrum", "zz_operator", "zz_eigenvalues", "zz_maps_into", "stanton_block",
    "reeb_block", "charpoly_over_q", "factor_multiplicities",
]


def zz_operator():
    """f -> (Z1 Z1 + Z1bar Z1bar) f with the standard sphere frame."""
    fr = connection_for(Sphere3()).frame
    Z, Zb = fr.Z1, fr.Z1bar
    return lambda f: Z(Z(f)) + Zb(Zb(f))


def charpoly_over_q(M):
    cp = linalg.charpoly(M)
    if any(c.im != 0 for c in cp):
        raise ValueError("characteristic polynomial is not real")
    return univariate.upoly(Fraction(int(c.re.numerator), int(c.re.denominator)) for c in cp)


def factor_multiplicities(cp):
    """{root: multiplicity} over the rational roots, plus the unfactored remainder."""
    mult = {}
    rest = cp
    for r in univariate.rational_roots(cp):
        lin = univariate.upoly([-r, 1])
        k = 0
        while True:
            q, rem = univariate.divmod_(rest, lin)
            if rem:
                break
            rest, k = q, k + 1
        mult[r] = k
    return mult, rest


@dataclass(frozen=True)
class ZZSpectrum:
    p: int
    q: int
    real_dim: int
    charpoly: tuple
    eigenvalues: dict        # exact rational eigenvalue -> algebraic multiplicity
    remainder: tuple         # factor with no rational roots (empty tuple () means 1)

    @property
    def eigenvalue_set(self):
        return set(self.eigenvalues)


def zz_eigenvalues(p: int, q: int) -> ZZSpectrum:
    """Spectrum of Z1Z1 + Z1bar Z1bar on Re(H^{p,q} + H^{q,p})."""
    elems = list(harmonic_basis(p, q).elements)
    if p != q:
        elems += list(harmonic_basis(q, p).elements)
    basis = real_basis(elems)
    block = operator_block(zz_operator(), basis)
    cp = charpoly_over_q(block.entries)
    mult, rest = factor_multiplicities(cp)
    return ZZSpectrum(p, q, len(basis), cp, mult, rest if univariate.deg(rest) > 0 else ())


def zz_maps_into(p: int, q: int) -> bool:
    """Z1 Z1 (H^{p,q}) lies in H^{p-2,q+2} (zero when p < 2)."""
    fr = connection_for(Sphere3()).frame
    Z = fr.Z1
    images = [Z(Z(b)) for b in harmonic_basis(p, q).elements]
    if p < 2:
        return all(not x for x in images)
    target = list(harmonic_basis(p - 2, q + 2).elements)
    return all(coordinates(x, target) is not None for x in images)


def stanton_block(p: int, q: int):
    """(matrix of Delta_b on H^{p,q}, expected scalar -(2pq + p + q))."""
    conn = connection_for(Sphere3())
    blk = operator_block(lambda f: sublaplacian(f, conn), list(harmonic_basis(p, q).elements))
    return blk.entries, GaussianRational(-(2 * p * q + p + q))


def reeb_block(p: int, q: int):
    """(matrix of T on H^{p,q}, expected scalar i(p - q))."""
    fr = connection_for(Sphere3()).frame
    blk = operator_block(fr.T, list(harmonic_basis(p, q).elements))
    return blk.entries, GaussianRational(0, p - q)
