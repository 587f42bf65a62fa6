import random
from fractions import Fraction

import pytest

from crscalar.exactalg import GaussianRational, Poly, parse_poly, random_poly
from crscalar.models import Heisenberg, Sphere3
from crscalar.operators import LeftInvariantOperator
from crscalar.splitting import (
    compose_drgamma_flat, half_laplacian_identity, principal_coefficients, residual, sublaplacian_operator,
    two_pass_drgamma,
)
from crscalar.variation import connection_for

I = GaussianRational(0, 1)


def lie(n):
    return connection_for(Heisenberg(n)).frame.lie


def ring(n):
    return connection_for(Heisenberg(n)).frame.ring


# --- operators -----------------------------------------------------------------

def test_flat_normal_ordering():
    L = lie(1)
    ZZb = LeftInvariantOperator.word(L, [1, 2])
    ZbZ = LeftInvariantOperator.word(L, [2, 1])
    T = LeftInvariantOperator.word(L, [0])
    # [Z, Zb] = -i T
    assert ZbZ == ZZb + T * I
    assert str(ZbZ).count("Zb1") == 1


@pytest.mark.parametrize("model", [Heisenberg(1), Heisenberg(2), Sphere3()], ids=str)
def test_operators_act_like_fields(model):
    fr = connection_for(model).frame
    L = fr.lie
    rng = random.Random(51)
    dim = 2 * fr.n + 1
    for _ in range(6):
        letters = [rng.randrange(dim) for _ in range(rng.randint(1, 4))]
        op = LeftInvariantOperator.word(L, letters)
        f = random_poly(fr.ring, 4, rng)
        g = f
        for k in reversed(letters):
            g = fr.vectors[k](g)
        assert op(f) == g


def test_composition_is_associative():
    L = lie(2)
    R = ring(2)
    rng = random.Random(52)

    def rand_op():
        op = LeftInvariantOperator(L)
        for _ in range(3):
            w = [rng.randrange(5) for _ in range(rng.randint(0, 3))]
            op = op + LeftInvariantOperator.word(L, w) * random_poly(R, 1, rng)
        return op

    for _ in range(5):
        a, b, c = rand_op(), rand_op(), rand_op()
        assert a.compose(b).compose(c) == a.compose(b.compose(c))
        f = random_poly(R, 4, rng)
        assert a.compose(b)(f) == a(b(f))


def test_heisenberg_order():
    L = lie(1)
    R = ring(1)
    T = LeftInvariantOperator.word(L, [0])
    assert T.heisenberg_order() == 2
    assert (LeftInvariantOperator.word(L, [1, 2]) * Poly.var(R, "s")).heisenberg_order() == 0
    assert LeftInvariantOperator(L).heisenberg_order() is None


# --- splitting residual --------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_residual_order(n):
    res = residual(n)
    assert res.order_at_most_3
    assert res.operator.part_of_order(4).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_residual_is_exactly_zero(n):
    # the flat model leaves no lower-order terms at all
    assert residual(n).is_zero


@pytest.mark.parametrize("n", [1, 2])
def test_homogeneous_degree_drop(n):
    # equivalent form of the order bound: on a monomial of Heisenberg degree d <= 8 the
    # residual has no degree (d - 4) part
    R = ring(n)
    op = residual(n).operator
    rng = random.Random(53 + n)
    for _ in range(25):
        e = [0] * R.nvars
        for _ in range(rng.randint(0, 6)):
            e[rng.randrange(R.nvars)] += 1
        mono = Poly.monomial(R, e)
        (d,) = mono.weighted_degrees()
        if 4 <= d <= 8:
            assert op(mono).homogeneous_part(d - 4) == 0


def test_principal_coefficients():
    for n in (1, 2, 3, 7):
        b, c, a2 = principal_coefficients(n)
        assert b * (1 - a2) == b - c
        assert a2 == Fraction(n * (n + 2), 2 * n * n + 4 * n + 3)


def test_drgamma_examples():
    op = compose_drgamma_flat(1)
    R = ring(1)
    assert op(Poly.const(R, 1)) == 0
    assert op(Poly.var(R, "s")) == 0
    f = parse_poly("z1*zb1", R)
    assert op(f) == two_pass_drgamma(1, f)
    g = parse_poly("z1^2*zb1^2 + s^2 - i*z1*s", R)
    assert op(g) == two_pass_drgamma(1, g)
    assert op(g) != 0


def test_operator_matches_two_pass():
    rng = random.Random(54)
    for n in (1, 2):
        op = compose_drgamma_flat(n)
        for _ in range(4):
            f = random_poly(ring(n), 5, rng)
            assert op(f) == two_pass_drgamma(n, f)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_half_laplacian_identity(n):
    R = ring(n)
    extra = [parse_poly("z1*zb1", R), Poly.var(R, "s"), parse_poly("z1^2*zb1*s", R)]
    assert all(r == 0 for r in half_laplacian_identity(n, extra=extra))


def test_sublaplacian_operator_flat():
    L = lie(1)
    expected = LeftInvariantOperator.word(L, [1, 2]) * 2 + LeftInvariantOperator.word(L, [0]) * I
    assert sublaplacian_operator(1) == expected


def test_bad_n():
    with pytest.raises(ValueError):
        residual(0)
