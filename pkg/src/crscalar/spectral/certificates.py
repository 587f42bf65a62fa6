"""No-solution certificates for the two Rossi eigenvalue systems.

On Re(H^{2,0} + H^{0,2}) (Z1Z1 + Z1barZ1bar eigenvalue mu = +-2, 2pq+p+q = 2) and on
Re(H^{3,1} + H^{1,3}) (mu = +-6, 2pq+p+q = 10) a kernel element would need

    lam (1 - t^2)^2 = 1 + 18 t^2 + t^4        and        mu (1 - t^2)^2 = 10 t (1 + t^2).

p1 is the first equation; p2 is the second squared, which removes the sign of mu.
gcd(p1, p2) = 1 over Q means no common complex root, so no real t solves either sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import univariate as U

__all__ = ["Certificate", "rossi_system_certificate", "SYSTEMS"]

# system -> (sublaplacian eigenvalue 2pq+p+q, |mu|)
SYSTEMS = {1: (2, 2), 2: (10, 6)}


@dataclass(frozen=True)
class Certificate:
    system: int
    p1: tuple
    p2: tuple
    gcd: tuple
    p1_root_intervals: tuple

    @property
    def no_solution(self) -> bool:
        return self.gcd == (Fraction(1),)

    def as_dict(self):
        return {
            "system": self.system,
            "p1": U.to_string(self.p1),
            "p2": U.to_string(self.p2),
            "gcd": U.to_string(self.gcd),
            "no_solution": self.no_solution,
            "p1_real_roots": [[str(a), str(b)] for a, b in self.p1_root_intervals],
        }


def _systems_polys(lam: int, mu: int):
    one_minus = U.upoly([1, 0, -1])               # 1 - t^2
    sq = U.mul(one_minus, one_minus)
    rhs1 = U.upoly([1, 0, 18, 0, 1])
    p1 = U.sub(U.scale(sq, lam), rhs1)
    lhs2 = U.scale(U.mul(sq, sq), mu * mu)        # mu^2 (1 - t^2)^4
    t_one_plus = U.upoly([0, 1, 0, 1])            # t (1 + t^2)
    rhs2 = U.scale(U.mul(t_one_plus, t_one_plus), 100)
    p2 = U.sub(lhs2, rhs2)
    return p1, p2


def rossi_system_certificate(system: int) -> Certificate:
    if system not in SYSTEMS:
        raise ValueError(f"system must be one of {sorted(SYSTEMS)}")
    lam, mu = SYSTEMS[system]
    p1, p2 = _systems_polys(lam, mu)
    g = U.gcd(p1, p2)
    roots = U.isolate_real_roots(p1, width=Fraction(1, 10**9))
    return Certificate(system, p1, p2, g, tuple(roots))
