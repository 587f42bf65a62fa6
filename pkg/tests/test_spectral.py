import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crscalar.exactalg import GaussianRational, Poly, free_ring, parse_poly, sphere_ring
from crscalar.models import Rossi3, Sphere3
from crscalar.spectral import linalg, univariate as U
from crscalar.spectral.certificates import rossi_system_certificate
from crscalar.spectral.drgamma import drgamma_analysis, predicted_principal_value
from crscalar.spectral.eigen import zz_eigenvalues, zz_maps_into
from crscalar.spectral.harmonics import gram_matrix, harmonic_basis, inner_product, operator_block
from crscalar.spectral.kernel import _kernel_on, admissible_pairs, exact_kernel, laplacian_relation
from crscalar.spectral.tables import CSV_COLUMNS, rows_to_csv, spectrum_rows
from crscalar.variation import gamma

S = sphere_ring()
F = free_ring()


def P(text, ring=S):
    return parse_poly(text, ring)


def ambient_laplacian(f):
    return sum((f.diff(f"z{j}").diff(f"zb{j}") for j in (1, 2)), Poly(F))


# --- harmonics -----------------------------------------------------------------

def test_harmonic_examples():
    b = harmonic_basis(1, 0)
    assert b.dim == 2
    assert linalg.rank([[x for x in row] for row in _rows(b.elements + (P("z1"), P("z2")))]) == 2
    assert harmonic_basis(3, 1).dim == 5


def _rows(polys):
    keys = sorted({e for p in polys for e in p.terms})
    return [[p.terms.get(e, GaussianRational(0)) for e in keys] for p in polys]


def test_dim_22_against_independent_rank():
    mons = [Poly.monomial(F, (a, 2 - a, c, 2 - c)) for a in range(3) for c in range(3)]
    images = [ambient_laplacian(x) for x in mons]
    assert harmonic_basis(2, 2).dim == 9 - linalg.rank(_rows(images))


@pytest.mark.parametrize("k", range(9))
def test_harmonic_invariants(k):
    for p in range(k + 1):
        b = harmonic_basis(p, k - p)
        assert b.dim == k + 1
        for f in b.ambient:
            assert ambient_laplacian(f) == 0
            assert all(e[0] + e[1] == p and e[2] + e[3] == k - p for e in f.terms)


# --- inner products ------------------------------------------------------------

def _quadrature(a, b, steps=4000):
    """Mean of |z1|^(2a) |z2|^(2b) over S^3 with z1 = cos(e) e^{i.}, z2 = sin(e) e^{i.}."""
    h = (math.pi / 2) / steps
    tot = 0.0
    for k in range(steps):
        e = (k + 0.5) * h
        tot += math.cos(e) ** (2 * a + 1) * math.sin(e) ** (2 * b + 1)
    return 2 * tot * h


def test_inner_product_examples():
    assert inner_product(P("z1"), P("z1")) == Fraction(1, 2)
    assert inner_product(P("z1"), P("z2")) == 0
    f = P("z1^2*zb2")
    assert inner_product(f, f) == Fraction(1, 12)
    assert abs(_quadrature(2, 1) - 1 / 12) < 1e-3


@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (2, 3), (4, 1)])
def test_monomial_rule_matches_quadrature(a, b):
    f = Poly.monomial(F, (a, b, a, b)).change_ring(S)
    exact = inner_product(f, Poly.const(S, 1))
    assert abs(float(exact.re) - _quadrature(a, b)) < 1e-6


def test_inner_product_is_rotation_invariant():
    # the unitary swap z1 <-> z2 preserves the measure
    def swap(p):
        return Poly(F, {(e[1], e[0], e[3], e[2]): c for e, c in p.change_ring(F).terms.items()}).change_ring(S)

    f, g = P("z1^2*zb2 + 3*z2"), P("z1*z2*zb1 - i*zb2")
    assert inner_product(f, g) == inner_product(swap(f), swap(g))


def test_gram_is_hermitian_positive():
    G = gram_matrix(list(harmonic_basis(2, 1).elements))
    assert linalg.is_hermitian(G)
    assert linalg.ldl_psd(G)[0]


# --- kernels -------------------------------------------------------------------

def test_sphere_kernel():
    kr = exact_kernel(Sphere3())
    assert kr.dimension == 4
    assert kr.eigenvalue == 1 and set(kr.pairs) == {(1, 0), (0, 1)}
    coords = [P("1/2*z1 + 1/2*zb1"), P("-1/2*i*z1 + 1/2*i*zb1"), P("1/2*z2 + 1/2*zb2"), P("-1/2*i*z2 + 1/2*i*zb2")]
    r = linalg.rank(_rows(list(kr.basis)))
    assert r == 4 == linalg.rank(_rows(list(kr.basis) + coords))
    for f in kr.basis:
        assert f == f.conjugate()
        assert gamma(Sphere3(), f).is_zero()


@pytest.mark.parametrize("t", [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10), Fraction(-3, 5)], ids=str)
def test_rossi_kernel_and_localization(t):
    kr = exact_kernel(Rossi3(t))
    assert kr.dimension == 0
    assert kr.eigenvalue == (1 + 18 * t**2 + t**4) / (1 - t**2) ** 2
    assert kr.pairs == tuple(admissible_pairs(kr.eigenvalue))


def test_admissible_pairs():
    assert admissible_pairs(2) == [(0, 2), (2, 0)]
    assert admissible_pairs(10) == [(0, 10), (1, 3), (3, 1), (10, 0)]
    assert admissible_pairs(Fraction(5, 2)) == []


def test_kernel_dimension_is_basis_independent():
    rng = random.Random(41)
    for m in (Sphere3(), Rossi3(Fraction(1, 3))):
        for p, q in ((1, 0), (2, 0), (3, 1)):
            base = list(harmonic_basis(p, q).elements)
            while True:
                M = [[GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in base] for _ in base]
                if linalg.rank(M) == len(base):
                    break
            mixed = [sum((b * M[i][j] for j, b in enumerate(base)), Poly(S)) for i in range(len(base))]
            assert len(_kernel_on(m, mixed)) == len(_kernel_on(m, base))


def test_laplacian_relation_sphere():
    x, y, w, c0 = laplacian_relation(Sphere3())
    assert c0 == 1 and y == 0 and w == 0


# --- eigenvalues ---------------------------------------------------------------

def test_zz_spectra():
    sp = zz_eigenvalues(2, 0)
    assert sp.eigenvalues == {-2: 3, 2: 3}
    assert sp.charpoly == U.power(U.upoly([-4, 0, 1]), 3)
    sp = zz_eigenvalues(3, 1)
    assert sp.eigenvalues == {-6: 5, 6: 5}
    assert sp.charpoly == U.power(U.upoly([-36, 0, 1]), 5)
    assert zz_eigenvalues(1, 0).eigenvalue_set == {0}


@pytest.mark.parametrize("pq", [(0, 0), (1, 0), (2, 0), (3, 1), (2, 2), (5, 0)])
def test_zz_mapping_property(pq):
    assert zz_maps_into(*pq)


# --- certificates --------------------------------------------------------------

def test_certificates():
    c1, c2 = rossi_system_certificate(1), rossi_system_certificate(2)
    assert c1.p1 == U.upoly([1, 0, -22, 0, 1]) and c1.no_solution
    assert c2.p1 == U.upoly([9, 0, -38, 0, 9]) and c2.no_solution
    assert U.gcd(c1.p1, c1.p1) == U.monic(c1.p1)
    with pytest.raises(ValueError):
        rossi_system_certificate(3)


@pytest.mark.parametrize("system", [1, 2])
def test_certificate_numerical_oracle(system):
    cert = rossi_system_certificate(system)
    lam, mu = {1: (2, 2), 2: (10, 6)}[system]
    assert len(cert.p1_root_intervals) == 4
    for lo, hi in cert.p1_root_intervals:
        t = float(lo + hi) / 2
        assert abs(float(U.evaluate(cert.p1, Fraction(t)))) < 1e-6 * max(1, abs(t) ** 4)
        # neither sign of the second equation holds at a root of the first
        lhs, rhs = mu * (1 - t * t) ** 2, 10 * t * (1 + t * t)
        assert min(abs(lhs - rhs), abs(lhs + rhs)) > 1e-3


# --- univariate / linalg -------------------------------------------------------

def test_rational_roots():
    p = U.mul(U.upoly([-6, 1]), U.mul(U.upoly([6, 1]), U.upoly([-1, 3])))
    assert U.rational_roots(p) == [-6, Fraction(1, 3), 6]
    assert U.rational_roots(U.upoly([1, 0, 1])) == []
    assert U.rational_roots(U.upoly([0, 0, -4, 0, 1])) == [-2, 0, 2]
    assert U.count_real_roots(U.upoly([-2, 0, 1]), -2, 2) == 2


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=4, unique=True))
def test_rational_roots_recovers_product(roots):
    p = U.upoly([1])
    for r in roots:
        p = U.mul(p, U.upoly([-r, 1]))
    assert U.rational_roots(p) == sorted(roots)


small = st.integers(-4, 4)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.tuples(small, small), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_linalg_properties(rows):
    A = [[GaussianRational(a, b) for a, b in row] for row in rows]
    n = len(A)
    null = linalg.nullspace(A, ncols=n)
    assert linalg.rank(A) + len(null) == n
    for v in null:
        assert all(x == 0 for x in linalg.matvec(A, v))
    cp = linalg.charpoly(A)
    acc = linalg.zeros(n, n)
    power = linalg.identity(n)
    for c in cp:
        acc = [[acc[i][j] + c * power[i][j] for j in range(n)] for i in range(n)]
        power = linalg.matmul(power, A)
    assert all(x == 0 for row in acc for x in row)
    if not null:
        assert linalg.matmul(A, linalg.inverse(A)) == linalg.identity(n)


# --- DR o Gamma ----------------------------------------------------------------

def test_drgamma_small():
    rep = drgamma_analysis(4)
    assert rep.block_diagonal and rep.hermitian and rep.psd and rep.kernel_matches_gamma
    eig = {(b.p, b.q): b.eigenvalues for b in rep.blocks}
    assert eig[(0, 0)] == {4: 1}
    assert eig[(1, 0)] == {0: 2} and eig[(0, 1)] == {0: 2}
    assert predicted_principal_value(1, 1) == Fraction(9, 2) * 16
    with pytest.raises(ValueError):
        drgamma_analysis(3)


def test_operator_block_rejects_non_invariant_span():
    with pytest.raises(ValueError):
        operator_block(lambda f: f * P("z1"), [P("z1")])


def test_spectrum_csv():
    text = rows_to_csv(spectrum_rows(2))
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert "1,0,2,-1,2" in lines and "1,1,3,-4,0" in lines
