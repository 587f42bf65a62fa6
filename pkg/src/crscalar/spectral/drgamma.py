"""DR o Gamma on spherical harmonics of S^3 up to a total degree.

On each H^{p,q} the leading part of DR o Gamma is (9/2) Delta_b^2 - (3/2) T^2,
which takes the value (9/2) lam^2 + (3/2)(p - q)^2 with lam = 2pq + p + q. The
analysis assembles the exact block matrices and compares.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactalg.numbers import GaussianRational
from ..models import Sphere3
from ..variation import drgamma_operator
from . import linalg
from .eigen import charpoly_over_q, factor_multiplicities
from .harmonics import harmonic_basis, operator_block
from .kernel import block_kernel_dim

__all__ = ["BlockResult", "DRGammaReport", "drgamma_analysis", "predicted_principal_value"]


def predicted_principal_value(p: int, q: int) -> Fraction:
    lam = 2 * p * q + p + q
    return Fraction(9, 2) * lam * lam + Fraction(3, 2) * (p - q) ** 2


@dataclass(frozen=True)
class BlockResult:
    p: int
    q: int
    dim: int
    invariant: bool                 # DR o Gamma maps H^{p,q} into itself
    gram_hermitian: bool
    psd: bool
    eigenvalues: dict               # rational eigenvalue -> multiplicity
    kernel_dim: int                 # of DR o Gamma on the block
    gamma_kernel_dim: int           # of Gamma on the block
    predicted: Fraction
    ratio: Fraction | None          # eigenvalue / predicted, when the block is scalar


@dataclass
class DRGammaReport:
    max_degree: int
    blocks: list = field(default_factory=list)

    @property
    def total_dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def block_diagonal(self) -> bool:
        return all(b.invariant for b in self.blocks)

    @property
    def hermitian(self) -> bool:
        return all(b.gram_hermitian for b in self.blocks)

    @property
    def psd(self) -> bool:
        return all(b.psd for b in self.blocks)

    @property
    def kernel_matches_gamma(self) -> bool:
        return all(b.kernel_dim == b.gamma_kernel_dim for b in self.blocks)

    def deviation(self, k: int) -> Fraction | None:
        """max |ratio - 1| over the blocks with p + q = k."""
        vals = [abs(b.ratio - 1) for b in self.blocks if b.p + b.q == k and b.ratio is not None]
        return max(vals) if vals else None


def _to_fraction(c: GaussianRational) -> Fraction:
    return Fraction(int(c.re.numerator), int(c.re.denominator))


def analyze_block(op, p: int, q: int) -> BlockResult:
    basis = list(harmonic_basis(p, q).elements)
    pred = predicted_principal_value(p, q)
    gk = block_kernel_dim(Sphere3(), p, q)
    try:
        blk = operator_block(op, basis)
    except ValueError:
        return BlockResult(p, q, len(basis), False, False, False, {}, -1, gk, pred, None)
    GM = linalg.matmul(blk.gram, blk.entries)
    herm = linalg.is_hermitian(GM)
    psd = herm and linalg.ldl_psd(GM)[0]
    kdim = len(linalg.nullspace(blk.entries))
    scalar = linalg.is_scalar_multiple_of_identity(blk.entries)
    if scalar is not None and scalar.im == 0:
        eig = {_to_fraction(scalar): len(basis)}
    else:
        eig, _ = factor_multiplicities(charpoly_over_q(blk.entries))
    ratio = None
    if scalar is not None and pred:
        ratio = _to_fraction(scalar) / pred
    return BlockResult(p, q, len(basis), True, herm, psd, eig, kdim, gk, pred, ratio)


def drgamma_analysis(max_degree: int = 10) -> DRGammaReport:
    if max_degree < 4:
        raise ValueError("max_degree must be at least 4")
    op = drgamma_operator(Sphere3())
    rep = DRGammaReport(max_degree)
    for k in range(max_degree + 1):
        for p in range(k + 1):
            rep.blocks.append(analyze_block(op, p, k - p))
    return rep
