"""Leading-order structure of DR o Gamma on the flat Heisenberg model.

On Heisenberg(n) torsion, curvature and Nijenhuis terms all vanish and the
Heisenberg filtration is exact, so the principal part of DR o Gamma can be
compared with

    ((2n^2 + 4n + 3)/2) Delta_b^2 - (n(n+2)/2) T^2

as normal-ordered left-invariant operators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .connection import Tensor, sublaplacian
from .exactalg.numbers import GaussianRational
from .exactalg.poly import Poly, random_poly
from .models import Heisenberg
from .operators import LeftInvariantOperator
from .variation import DeformationTangent, connection_for, drgamma_operator, gamma, linearize_R

__all__ = [
    "ResidualResult", "compose_drgamma_flat", "residual", "principal_coefficients",
    "sublaplacian_operator", "half_laplacian_identity", "two_pass_drgamma",
]


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def compose_drgamma_flat(n: int) -> LeftInvariantOperator:
    """DR o Gamma on Heisenberg(n), normal ordered."""
    _check_n(n)
    return drgamma_operator(Heisenberg(n))


def sublaplacian_operator(n: int) -> LeftInvariantOperator:
    _check_n(n)
    conn = connection_for(Heisenberg(n))
    return sublaplacian(LeftInvariantOperator.identity(conn.frame.lie), conn)


def principal_coefficients(n: int):
    """(b, c, a^2) with the model operator b Delta_b^2 - c T^2 = b (Delta_b^2 - a^2 T^2)."""
    b = Fraction(2 * n * n + 4 * n + 3, 2)
    c = Fraction(n * (n + 2), 2)
    return b, c, c / b


@dataclass(frozen=True, eq=False)
class ResidualResult:
    n: int
    operator: LeftInvariantOperator
    order: int | None        # None when the residual is exactly zero

    @property
    def is_zero(self) -> bool:
        return self.operator.is_zero()

    @property
    def order_at_most_3(self) -> bool:
        return self.order is None or self.order <= 3


def residual(n: int) -> ResidualResult:
    """DR o Gamma - b Delta_b^2 + c T^2 with its Heisenberg order."""
    b, c, _ = principal_coefficients(n)
    op = compose_drgamma_flat(n)
    lap = sublaplacian_operator(n)
    lie = lap.frame
    T2 = LeftInvariantOperator.word(lie, [0, 0])
    res = op - lap.compose(lap) * GaussianRational(b) + T2 * GaussianRational(c)
    return ResidualResult(n, res, res.heisenberg_order())


def _half_identity(u, conn, n):
    """sum_a u_{a}{}^{a} - Delta_b u / 2 - (n i / 2) T u."""
    K = conn.hinv
    d2 = Tensor.scalar(conn, u).nabla().nabla()
    acc = u * 0
    for a in range(n):
        for b in range(n):
            v = d2[(1 + a, 1 + n + b)]
            if v is not None and K[a][b]:
                acc = acc + v * K[a][b]
    half = GaussianRational(Fraction(1, 2))
    return acc - sublaplacian(u, conn) * half - conn.frame.T(u) * GaussianRational(0, Fraction(n, 2))


def half_laplacian_identity(n: int, *, samples: int = 30, seed: int = 0, degree: int = 4,
                            extra=()) -> list:
    """Residuals of the half-sublaplacian identity on seeded random polynomials."""
    _check_n(n)
    conn = connection_for(Heisenberg(n))
    ring = conn.frame.ring
    rng = random.Random(seed)
    polys = list(extra) + [random_poly(ring, degree, rng) for _ in range(samples)]
    return [_half_identity(u, conn, n) for u in polys]


def two_pass_drgamma(n: int, f: Poly) -> Poly:
    """DR(-Gamma f) computed by applying gamma and linearize_R separately.

    The tangent direction must be real, so f is split into real and imaginary parts.
    """
    _check_n(n)
    m = Heisenberg(n)
    out = Poly(f.ring)
    for part, unit in ((f.real_part(), GaussianRational(1)), (f.imag_part(), GaussianRational(0, 1))):
        if not part:
            continue
        g = gamma(m, part)
        E = tuple(tuple(-x for x in row) for row in g.torsion_part)
        d = DeformationTangent(E[0][0], -g.scalar_part, E)
        out = out + linearize_R(m, d) * unit
    return out
