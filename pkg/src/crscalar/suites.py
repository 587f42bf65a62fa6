"""Verification batteries behind ``crscalar verify``.

Each suite returns a :class:`Report`. Expected values carry a provenance tag:
``paper`` for values stated in the source text, ``trivial`` for values that
follow at once, ``derived`` for values checked against an independent route.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .connection import commutator_residuals, COMMUTATOR_FAMILIES
from .exactalg.numbers import GaussianRational
from .exactalg.poly import Poly, random_poly, random_real_poly, sphere_ring
from .models import Heisenberg, Rossi3, Sphere3, model_frame
from .report import Report
from .spectral import linalg
from .spectral.certificates import rossi_system_certificate
from .spectral.drgamma import drgamma_analysis
from .spectral.eigen import reeb_block, stanton_block, zz_eigenvalues, zz_maps_into
from .spectral.harmonics import integrate
from .spectral.kernel import exact_kernel
from .spectral import univariate as U
from .splitting import (
    compose_drgamma_flat, half_laplacian_identity, principal_coefficients, residual, two_pass_drgamma,
)
from .variation import (
    DeformationTangent, connection_for, gamma, gamma_pairing, linearize_A, linearize_R,
    rossi_tangent, variation_jet,
)

__all__ = ["SUITES", "DEFAULT_SEED", "ROSSI_SAMPLES", "run_suite", "rossi_expected", "span_equal"]

DEFAULT_SEED = 20240601
ROSSI_SAMPLES = (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))

def rossi_expected(t: Fraction):
    """(omega_1^1(T), A11, R) from the closed formulas in t."""
    t = Fraction(t)
    r = (1 + t * t) / (1 - t * t)
    return GaussianRational(0, -2 * r), GaussianRational(0, -4 * t / (1 - t * t)), GaussianRational(2 * r)


def _coeff_rows(polys):
    keys = sorted({e for p in polys for e in p.terms})
    return [[p.terms.get(e, GaussianRational(0)) for e in keys] for p in polys]


def span_equal(a, b) -> bool:
    ra, rb = linalg.rank(_coeff_rows(a)), linalg.rank(_coeff_rows(b))
    return ra == rb == linalg.rank(_coeff_rows(list(a) + list(b)))


def _const(p):
    return p.constant_value() if p.is_constant() else p


# ---------------------------------------------------------------------------

def suite_commutators(seed: int, samples: int = 20) -> Report:
    rep = Report("commutators")
    for m in (Sphere3(), Heisenberg(1), Heisenberg(2)):
        res = commutator_residuals(model_frame(m), seed=seed, samples=samples)
        for fam in COMMUTATOR_FAMILIES:
            bad = [r for r in res[fam] if r]
            rep.add(f"{m}/{fam}", 0, len(bad), "derived")
    return rep


def suite_linearizations(seed: int, samples: int = 20) -> Report:
    rep = Report("linearizations")
    m = Sphere3()
    ring = connection_for(m).frame.ring
    rng = random.Random(seed)
    bad_R = bad_A = 0
    for _ in range(samples):
        d = DeformationTangent(random_poly(ring, 3, rng), random_real_poly(ring, 3, rng))
        jet = variation_jet(m, d, 1)
        bad_R += jet.R[1] != linearize_R(m, d)
        bad_A += jet.A11[1] != linearize_A(m, d)[0][0]
    rep.add("sphere3/jet-vs-DR mismatches", 0, bad_R, "derived")
    rep.add("sphere3/jet-vs-DA mismatches", 0, bad_A, "derived")
    d = rossi_tangent(ring)
    rep.add("rossi-tangent/DR", GaussianRational(0), _const(linearize_R(m, d)), "paper")
    rep.add("rossi-tangent/DA11", GaussianRational(0, -4), _const(linearize_A(m, d)[0][0]), "paper")
    jet = variation_jet(m, d, 1)
    rep.add("rossi-tangent/jet R'", GaussianRational(0), _const(jet.R[1]), "derived")
    rep.add("rossi-tangent/jet A11'", GaussianRational(0, -4), _const(jet.A11[1]), "derived")
    rep.add("sphere3/DR(0,1)", GaussianRational(-2),
            _const(linearize_R(m, DeformationTangent(Poly(ring), Poly.const(ring, 1)))), "trivial")
    return rep


def suite_adjointness(seed: int, samples: int = 30) -> Report:
    rep = Report("adjointness")
    m = Sphere3()
    ring = connection_for(m).frame.ring
    rng = random.Random(seed)
    bad = []
    for k in range(samples):
        f = random_real_poly(ring, 3, rng)
        d = DeformationTangent(random_poly(ring, 3, rng), random_real_poly(ring, 3, rng))
        lhs = integrate(f * linearize_R(m, d))
        rhs = integrate(gamma_pairing(m, gamma(m, f), d))
        if lhs != rhs:
            bad.append(k)
    rep.add(f"sphere3/<f,DR d> = <Gamma f,d> over {samples} pairs", [], bad, "derived")
    return rep


def suite_rossi(seed: int) -> Report:
    rep = Report("rossi")
    for t in ROSSI_SAMPLES:
        conn = connection_for(Rossi3(t))
        om, a11, r = rossi_expected(t)
        rep.add(f"rossi:{t}/omega_1^1(T)", om, _const(conn.omega_theta()[0]), "paper")
        rep.add(f"rossi:{t}/A11", a11, _const(conn.A11), "paper")
        rep.add(f"rossi:{t}/R", r, _const(conn.R), "paper")
    expected_p1 = {1: U.upoly([1, 0, -22, 0, 1]), 2: U.upoly([9, 0, -38, 0, 9])}
    for s in (1, 2):
        cert = rossi_system_certificate(s)
        rep.add(f"system {s}/p1", U.to_string(expected_p1[s]), U.to_string(cert.p1), "derived")
        rep.add(f"system {s}/gcd(p1, p2)", "1", U.to_string(cert.gcd), "paper")
    for (p, q), want, prov in (((2, 0), {-2, 2}, "paper"), ((3, 1), {-6, 6}, "paper"), ((1, 0), {0}, "derived")):
        sp = zz_eigenvalues(p, q)
        rep.add(f"ZZ+ZbZb on Re(H^{p},{q}+H^{q},{p}) eigenvalues",
                {Fraction(x) for x in want}, sp.eigenvalue_set, prov)
        rep.add(f"ZZ+ZbZb on Re(H^{p},{q}+H^{q},{p}) fully rational", (), sp.remainder, "derived")
    for p, q in ((2, 0), (3, 1), (4, 1)):
        rep.add(f"Z1Z1 H^{p},{q} in H^{p - 2},{q + 2}", True, zz_maps_into(p, q), "paper")
    return rep


def suite_kernel(seed: int) -> Report:
    rep = Report("kernel")
    kr = exact_kernel(Sphere3())
    rep.add("sphere3/dim ker Gamma", 4, kr.dimension, "paper")
    ring = sphere_ring()
    z1, z2 = Poly.var(ring, "z1"), Poly.var(ring, "z2")
    coords = [z1.real_part(), z1.imag_part(), z2.real_part(), z2.imag_part()]
    rep.add("sphere3/ker Gamma = span(Re z, Im z)", True, span_equal(kr.basis, coords), "paper")
    for t in ROSSI_SAMPLES:
        rep.add(f"rossi:{t}/dim ker Gamma", 0, exact_kernel(Rossi3(t)).dimension, "paper")
    g = gamma(Sphere3(), Poly.const(ring, 1))
    rep.add("sphere3/Gamma(1)", [GaussianRational(0), GaussianRational(2)],
            [_const(g.torsion11), _const(g.scalar_part)], "paper")
    h1 = Heisenberg(1)
    g = gamma(h1, Poly.const(connection_for(h1).frame.ring, 1))
    rep.add("heisenberg:1/Gamma(1)", [GaussianRational(0), GaussianRational(0)],
            [_const(g.torsion11), _const(g.scalar_part)], "paper")
    bad_stanton, bad_reeb, bad_dim = [], [], []
    for k in range(9):
        for p in range(k + 1):
            q = k - p
            M, lam = stanton_block(p, q)
            if M != [[lam if i == j else GaussianRational(0) for j in range(len(M))] for i in range(len(M))]:
                bad_stanton.append((p, q))
            if len(M) != p + q + 1:
                bad_dim.append((p, q))
            M, mu = reeb_block(p, q)
            if linalg.is_scalar_multiple_of_identity(M) != mu:
                bad_reeb.append((p, q))
    rep.add("Delta_b = -(2pq+p+q) on H^{p,q}, p+q <= 8 (failing blocks)", [], bad_stanton, "paper")
    rep.add("T = i(p-q) on H^{p,q}, p+q <= 8 (failing blocks)", [], bad_reeb, "derived")
    rep.add("dim H^{p,q} = p+q+1, p+q <= 8 (failing blocks)", [], bad_dim, "derived")
    return rep


def suite_splitting(seed: int, max_degree: int = 10) -> Report:
    rep = Report("splitting")
    for n in (1, 2, 3):
        res = residual(n)
        actual = "zero operator" if res.is_zero else f"order {res.order}: {res.operator}"
        rep.add(f"heisenberg:{n}/Heisenberg order of residual", "order <= 3", actual, "paper",
                passed=res.order_at_most_3)
        b, c, a2 = principal_coefficients(n)
        rep.add(f"heisenberg:{n}/a^2", Fraction(n * (n + 2), 2 * n * n + 4 * n + 3), a2, "paper")
        bad = [k for k, r in enumerate(half_laplacian_identity(n, seed=seed)) if r]
        rep.add(f"heisenberg:{n}/u_a^a - Delta_b u/2 - (ni/2) u_0 (failing samples)", [], bad, "paper")
    rng = random.Random(seed)
    for n in (1, 2):
        op = compose_drgamma_flat(n)
        ring = op.frame.ring
        bad = 0
        for _ in range(5):
            f = random_poly(ring, 5, rng)
            bad += op(f) != two_pass_drgamma(n, f)
        rep.add(f"heisenberg:{n}/operator vs two-pass DR(Gamma f) mismatches", 0, bad, "derived")
    an = drgamma_analysis(max_degree)
    rep.add(f"sphere3/DR.Gamma block diagonal up to {max_degree}", True, an.block_diagonal, "derived")
    rep.add(f"sphere3/DR.Gamma Gram-Hermitian up to {max_degree}", True, an.hermitian, "paper")
    rep.add(f"sphere3/DR.Gamma PSD up to {max_degree}", True, an.psd, "paper")
    rep.add(f"sphere3/ker DR.Gamma = ker Gamma up to {max_degree}", True, an.kernel_matches_gamma, "paper")
    d5, dk = an.deviation(5), an.deviation(max_degree)
    rep.add(f"sphere3/|ratio-1| at {max_degree} < at 5", f"< {d5}", dk,
            "derived", passed=d5 is not None and dk is not None and dk < d5)
    b00 = next(b for b in an.blocks if (b.p, b.q) == (0, 0))
    rep.add("sphere3/DR.Gamma(1)", {Fraction(4): 1}, b00.eigenvalues, "derived")
    return rep


SUITES = {
    "commutators": suite_commutators,
    "linearizations": suite_linearizations,
    "adjointness": suite_adjointness,
    "rossi": suite_rossi,
    "kernel": suite_kernel,
    "splitting": suite_splitting,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> Report:
    if name != "all" and name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    t0 = time.perf_counter()
    if name == "all":
        rep = Report("all")
        for fn in SUITES.values():
            rep.extend(_prefixed(fn(seed)))
    else:
        rep = _prefixed(SUITES[name](seed))
    rep.seed = seed
    rep.seconds = time.perf_counter() - t0
    return rep


def _prefixed(rep: Report) -> Report:
    for c in rep.checks:
        c.name = f"{rep.suite}: {c.name}"
    return rep
