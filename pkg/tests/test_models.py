import random
from fractions import Fraction

import pytest

from crscalar.exactalg import GaussianRational, Poly, TJet, free_ring, parse_poly, random_poly, sphere_ring
from crscalar.models import (
    Heisenberg, Rossi3, Sphere3, VectorField, bracket, deform_frame, model_frame, parse_model, reeb_field,
)
from crscalar.variation import DeformationTangent, rossi_tangent

I = GaussianRational(0, 1)
SAMPLE_T = [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10), Fraction(-2, 7)]


def tangency(X):
    """X(|z|^2 - 1) on S^3, from the ambient derivative of |z|^2."""
    F = free_ring()
    norm = parse_poly("z1*zb1 + z2*zb2", F)
    out = Poly(X.ring)
    for i, c in X.coeffs.items():
        out = out + c * norm.diff(X.ring.names[i]).change_ring(X.ring)
    return out


def all_frames():
    return [model_frame(m) for m in (Sphere3(), *(Rossi3(t) for t in SAMPLE_T), Heisenberg(1), Heisenberg(2))]


# --- model ids -----------------------------------------------------------------

def test_parse_model():
    assert parse_model("sphere3") == Sphere3()
    assert parse_model("rossi:1/2") == Rossi3(Fraction(1, 2))
    assert parse_model("heisenberg:3") == Heisenberg(3)
    assert parse_model("rossi:jet").is_jet
    for bad in ("rossi:1", "rossi:0", "rossi:3/2", "heisenberg:0", "torus"):
        with pytest.raises(ValueError):
            parse_model(bad)


# --- frames --------------------------------------------------------------------

@pytest.mark.parametrize("fr", all_frames(), ids=str)
def test_duality_and_levi(fr):
    assert fr.duality_defects() == []
    n = fr.n
    for a in range(n):
        for b in range(n):
            assert fr.h[a][b] == (1 if a == b else 0)


@pytest.mark.parametrize("fr", all_frames()[:6], ids=str)
def test_sphere_fields_are_tangent(fr):
    for X in fr.vectors:
        assert tangency(X) == 0


def test_sphere_T_and_bracket():
    fr = model_frame(Sphere3())
    S = fr.ring
    T = VectorField.from_names(S, z1=parse_poly("i*z1", S), z2=parse_poly("i*z2", S),
                               zb1=parse_poly("-i*zb1", S), zb2=parse_poly("-i*zb2", S))
    assert fr.T == T
    assert bracket(fr.Z1, fr.Z1bar) == fr.T * (-I)
    assert bracket(fr.T, fr.T).is_zero()
    assert bracket(fr.Z1, fr.Z1).is_zero()


def test_heisenberg_bracket():
    fr = model_frame(Heisenberg(1))
    assert bracket(fr.Z1, fr.Z1bar) == fr.T * (-I)
    assert bracket(fr.Z1, fr.T).is_zero()


def test_reeb_field_on_model_forms():
    fr = model_frame(Sphere3())
    assert reeb_field(fr.theta, fr) == fr.T


def test_jacobi_identity():
    fr = model_frame(Sphere3())
    rng = random.Random(11)

    def field():
        X = VectorField(fr.ring)
        for v in fr.vectors:
            X = X + v * random_poly(fr.ring, 2, rng, density=0.3)
        return X

    for _ in range(50):
        X, Y, Z = field(), field(), field()
        jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
        assert jac.is_zero()
        assert tangency(bracket(X, Y)) == 0


# --- deformations --------------------------------------------------------------

def test_deform_zero_is_constant_jet():
    fr = model_frame(Sphere3())
    dfr = deform_frame(Sphere3(), DeformationTangent.zero(fr.ring), 2)
    for v, w in zip(dfr.vectors, fr.vectors):
        for i in range(fr.ring.nvars):
            assert v[i] == TJet.constant(w[i], 2)


def test_deform_rossi_tangent_matches_rossi_jet():
    ring = sphere_ring()
    dfr = deform_frame(Sphere3(), rossi_tangent(ring), 2)
    jet = model_frame(Rossi3("jet"))
    for v, w in ((dfr.Z1, jet.Z1), (dfr.theta1, jet.theta1)):
        assert v == w


def test_deformed_frames_stay_dual_with_unit_levi_form():
    ring = sphere_ring()
    rng = random.Random(12)
    for _ in range(4):
        u = random_poly(ring, 2, rng)
        d = DeformationTangent(random_poly(ring, 2, rng), u + u.conjugate())
        dfr = deform_frame(Sphere3(), d, 2)
        assert dfr.duality_defects() == []
        # only the contact factor moves the Levi form: h_t = e^{tu}
        h = dfr.h[0][0]
        assert h[0] == 1 and h[1] == d.u
        cr_only = deform_frame(Sphere3(), DeformationTangent(d.E11, Poly(ring)), 2)
        assert cr_only.h[0][0] == TJet.constant(Poly.const(ring, 1), 2)
        # theta_t(T_t) = 1 forces theta_0(T') = -u at first order
        assert dfr.theta(dfr.T) == 1
        base = model_frame(Sphere3())
        first = VectorField(ring, {i: c[1] for i, c in dfr.T.coeffs.items()})
        assert base.theta(first) == -d.u


def test_deform_needs_n1_exact_base():
    with pytest.raises(ValueError):
        deform_frame(Heisenberg(2), DeformationTangent.zero(model_frame(Heisenberg(2)).ring))
    with pytest.raises(ValueError):
        deform_frame(Rossi3("jet"), DeformationTangent.zero(sphere_ring()))
