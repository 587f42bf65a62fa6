"""Exact determination of ker Gamma on the standard and Rossi spheres.

The kernel equations are (G f, conj G conj f, S f) = 0. On these models
G and S are left-invariant in the SU(2) frame, so a constant combination

    x S + y G + w Gbar = Delta_std + c0

exists and is found by linear algebra on the normal-ordered operators. Any
kernel element is then an eigenfunction of the standard sublaplacian with
eigenvalue -c0, which confines it to the finitely many H^{p,q} with
2pq + p + q = c0. The kernel is computed exactly on that span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactalg.numbers import GaussianRational
from ..exactalg.poly import Poly, sphere_ring
from ..models import Rossi3, Sphere3
from ..operators import LeftInvariantOperator
from ..variation import connection_for, gamma_operator
from . import linalg
from .harmonics import harmonic_basis, independent_subset, real_basis

__all__ = ["KernelResult", "exact_kernel", "admissible_pairs", "laplacian_relation", "block_kernel_dim"]

ZERO = GaussianRational(0)


@dataclass(frozen=True)
class KernelResult:
    dimension: int
    basis: tuple            # real polynomials on S^3 spanning ker Gamma
    eigenvalue: Fraction     # c0, so that -Delta_std f = c0 f on the kernel
    pairs: tuple            # admissible (p, q)
    relation: tuple          # (x, y, w, c0)


def _std_laplacian(lie):
    return LeftInvariantOperator.word(lie, [1, 2]) + LeftInvariantOperator.word(lie, [2, 1])


def laplacian_relation(m):
    """(x, y, w, c0) with x S + y G + w Gbar - c0 = Delta_std, or None."""
    G, S = gamma_operator(m)
    G = G[0][0]
    Gb = G.conjugate()
    lie = connection_for(m).frame.lie
    ops = [S, G, Gb, -LeftInvariantOperator.identity(lie)]
    target = _std_laplacian(lie)
    keys = set(target.terms)
    for op in ops:
        keys |= set(op.terms)
    rows, rhs = [], []
    for w in sorted(keys):
        exps = set(target.terms.get(w, Poly(lie.ring)).terms)
        for op in ops:
            exps |= set(op.terms.get(w, Poly(lie.ring)).terms)
        for e in sorted(exps):
            rows.append([op.terms.get(w, Poly(lie.ring)).terms.get(e, ZERO) for op in ops])
            rhs.append(target.terms.get(w, Poly(lie.ring)).terms.get(e, ZERO))
    return linalg.solve(rows, rhs)


def admissible_pairs(c0) -> list:
    """All (p, q) with p, q >= 0 and 2pq + p + q = c0."""
    c0 = Fraction(c0)
    if c0.denominator != 1 or c0 < 0:
        return []
    c = int(c0)
    out = []
    for p in range(c + 1):
        num = c - p
        if num % (2 * p + 1) == 0:
            out.append((p, num // (2 * p + 1)))
    return out


def _gamma_matrix(m, basis):
    """Columns: canonical coordinates of (G b, Gbar b, S b) for b in basis."""
    G, S = gamma_operator(m)
    G = G[0][0]
    Gb = G.conjugate()
    ring = connection_for(m).frame.ring
    base = sphere_ring()
    images = []
    for b in basis:
        bb = b.change_ring(ring)
        outs = []
        for op in (G, Gb, S):
            v = op(bb)
            if v.uses("lam"):
                raise AssertionError("the unit lam failed to cancel in Gamma")
            outs.append(v.change_ring(base))
        images.append(outs)
    keys = [sorted({e for img in images for e in img[k].terms}) for k in range(3)]
    rows = []
    for k in range(3):
        for e in keys[k]:
            rows.append([img[k].terms.get(e, ZERO) for img in images])
    return rows


def _kernel_on(m, basis):
    if not basis:
        return []
    rows = _gamma_matrix(m, basis)
    null = linalg.nullspace(rows, ncols=len(basis)) if rows else linalg.identity(len(basis))
    out = []
    for v in null:
        f = Poly(sphere_ring())
        for c, b in zip(v, basis):
            if c:
                f = f + b * c
        out.append(f)
    return out


def block_kernel_dim(m, p, q) -> int:
    """dim_C (ker Gamma restricted to H^{p,q})."""
    return len(_kernel_on(m, list(harmonic_basis(p, q).elements)))


def exact_kernel(m) -> KernelResult:
    if not isinstance(m, (Sphere3, Rossi3)) or (isinstance(m, Rossi3) and m.is_jet):
        raise ValueError("exact_kernel supports sphere3 and rossi:p/q")
    sol = laplacian_relation(m)
    if sol is None:
        raise ValueError("no constant relation between Gamma and the standard sublaplacian")
    x, y, w, c0 = sol
    if c0.im != 0:
        raise AssertionError("sublaplacian eigenvalue must be real")
    c0 = Fraction(int(c0.re.numerator), int(c0.re.denominator))
    pairs = admissible_pairs(c0)
    basis = [b for p, q in pairs for b in harmonic_basis(p, q).elements]
    kern = _kernel_on(m, basis)
    real = independent_subset(real_basis(kern)) if kern else []
    if len(real) != len(kern):
        raise AssertionError("kernel is not the complexification of a real space")
    return KernelResult(len(real), tuple(real), c0, tuple(pairs), (x, y, w, c0))
