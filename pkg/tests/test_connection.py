import random
from fractions import Fraction

import pytest

from crscalar.connection import (
    COMMUTATOR_FAMILIES, CovDeriv, Tensor, commutator_residuals, scalar_curvature, solve_connection, sublaplacian,
)
from crscalar.exactalg import GaussianRational, Poly, TJet, parse_poly, random_poly, sphere_ring
from crscalar.models import Heisenberg, Rossi3, Sphere3, deform_frame, model_frame
from crscalar.spectral.harmonics import harmonic_basis
from crscalar.variation import DeformationTangent, connection_for

I = GaussianRational(0, 1)
SAMPLE_T = [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10), Fraction(-1, 2)]


def table(t):
    r = (1 + t * t) / (1 - t * t)
    return GaussianRational(0, -2 * r), GaussianRational(0, -4 * t / (1 - t * t)), GaussianRational(2 * r)


@pytest.mark.parametrize("t", SAMPLE_T, ids=str)
def test_rossi_table(t):
    conn = connection_for(Rossi3(t))
    om, a11, r = table(t)
    assert conn.omega_theta() == [Poly.const(conn.frame.ring, om), 0, 0]
    assert conn.A11 == a11
    assert conn.R == r
    assert not conn.uses("lam")


def test_rossi_table_at_half_literal():
    conn = connection_for(Rossi3(Fraction(1, 2)))
    assert conn.omega_theta()[0] == GaussianRational(0, Fraction(-10, 3))
    assert conn.A11 == GaussianRational(0, Fraction(-8, 3))
    assert conn.R == Fraction(10, 3)
    assert scalar_curvature(connection_for(Rossi3(Fraction(1, 3)))) == Fraction(5, 2)


def test_rossi_jet_matches_table_series():
    conn = connection_for(Rossi3("jet"))
    S = conn.frame.ring
    c = lambda *v: TJet(S, list(v))  # noqa: E731
    assert conn.R == c(2, 0, 4)
    assert conn.A11 == c(0, GaussianRational(0, -4), 0)
    assert conn.omega_theta()[0] == c(GaussianRational(0, -2), 0, GaussianRational(0, -4))


def test_sphere_and_heisenberg():
    conn = connection_for(Sphere3())
    assert conn.A11 == 0 and conn.R == 2
    for n in (1, 2, 3):
        conn = connection_for(Heisenberg(n))
        assert conn.R == 0
        assert all(x == 0 for row in conn.A for x in row)
        assert all(w == 0 for row in conn.omega for col in row for w in col)


def _deformed():
    ring = sphere_ring()
    E = parse_poly("z1*zb2 + i", ring)
    u = parse_poly("z1 + zb1 + z2*zb1 + z1*zb2", ring)
    return deform_frame(Sphere3(), DeformationTangent(E, u), 2)


def all_connections():
    out = [connection_for(m) for m in (Sphere3(), Rossi3(Fraction(1, 3)), Rossi3("jet"), Heisenberg(1), Heisenberg(2))]
    out.append(solve_connection(_deformed()))
    return out


@pytest.mark.parametrize("conn", all_connections(), ids=lambda c: str(c.frame.model))
def test_reality_and_metric_compatibility(conn):
    fr = conn.frame
    n = conn.n
    assert conn.R == conn.R.conjugate()
    assert conn.V_defects() == []
    # dh_{a bbar} = omega_{a bbar} + omega_{bbar a} on every frame direction
    h = fr.h
    for k, e in enumerate(fr.vectors):
        kc = fr.conj_index(k)
        for a in range(n):
            for b in range(n):
                lhs = e(h[a][b])
                rhs = 0
                for g in range(n):
                    rhs = rhs + conn.omega[a][g][k] * h[g][b] + (conn.omega[b][g][kc] * h[a][g]).conjugate()
                assert lhs == rhs


@pytest.mark.parametrize("conn", all_connections()[:3], ids=lambda c: str(c.frame.model))
def test_torsion_conjugate_pairing(conn):
    # A^{1bar}_1 read from [Z, T] is the conjugate of A^1_{1bar} read from [Zbar, T]
    c = conn.frame.structure
    assert conn.A_up[0][0] == c[2][0][1]
    assert c[1][0][2] == conn.A_up[0][0].conjugate()


def test_bracket_dtheta_matches_ambient_d():
    fr = model_frame(Sphere3())
    th = fr.theta
    for X in fr.vectors:
        for Y in fr.vectors:
            amb = 0
            for i, ci in th.coeffs.items():
                for j in range(fr.ring.nvars):
                    dc = ci.diff(j)
                    if dc:
                        amb = amb + dc * (X[j] * Y[i] - Y[j] * X[i])
            assert th.d(X, Y) == amb


# --- covariant derivatives -----------------------------------------------------

def test_sublaplacian_examples():
    conn = connection_for(Sphere3())
    S = conn.frame.ring
    assert sublaplacian(Poly.var(S, "z1"), conn) == -Poly.var(S, "z1")
    assert sublaplacian(Poly.const(S, 5), conn) == 0
    for f in harmonic_basis(2, 2).elements:
        assert sublaplacian(f, conn) == f * -12


def test_nabla_nabla_equals_ZZ_on_sphere():
    conn = connection_for(Sphere3())
    D = CovDeriv(conn)
    rng = random.Random(21)
    Z = conn.frame.Z1
    for _ in range(10):
        f = random_poly(conn.frame.ring, 4, rng)
        assert D.scalar(f, 2)[(1, 1)] == Z(Z(f))


def test_leibniz_on_scalars():
    conn = connection_for(Rossi3(Fraction(1, 2)))
    rng = random.Random(22)
    S = conn.frame.ring
    for _ in range(5):
        f, g = random_poly(S, 3, rng), random_poly(S, 3, rng)
        d = Tensor.scalar(conn, f * g).nabla()
        df, dg = Tensor.scalar(conn, f).nabla(), Tensor.scalar(conn, g).nabla()
        for k in range(conn.frame.dim):
            assert d.value((k,)) == df.value((k,)) * g + f * dg.value((k,))


# --- commutator identities -----------------------------------------------------

def test_commutator_examples_on_sphere():
    fr = model_frame(Sphere3())
    S = fr.ring
    res = commutator_residuals(fr, samples=0, scalars=[parse_poly("z1*zb2", S)],
                               sections=[[Poly.var(S, "z2")]])
    assert set(res) == set(COMMUTATOR_FAMILIES)
    assert all(not r for v in res.values() for r in v)
    assert all(res[f] for f in COMMUTATOR_FAMILIES)


@pytest.mark.parametrize("m", [Sphere3(), Rossi3(Fraction(1, 3)), Rossi3("jet"), Heisenberg(1), Heisenberg(2)], ids=str)
def test_commutators_vanish(m):
    res = commutator_residuals(model_frame(m), seed=5, samples=4)
    assert all(not r for v in res.values() for r in v)


def test_commutators_vanish_on_deformed_frame():
    fr = _deformed()
    res = commutator_residuals(fr, seed=6, samples=2, degree=3)
    assert all(not r for v in res.values() for r in v)


def test_inconsistent_frame_is_rejected():
    from dataclasses import replace
    from crscalar.connection import ConnectionError as CE
    fr = model_frame(Sphere3())
    bad = replace(fr, T=fr.T * 2)
    with pytest.raises(CE):
        solve_connection(bad)
