"""Linearizations of the MTW scalar curvature and torsion, and the adjoint Gamma.

A tangent vector to (J, theta) is a pair (E, u): E_{ab} symmetric, giving
Jdot = 2 Re E_a^{bbar} theta^a (x) Zb_b, and u with theta_t = e^{tu} theta.

    DR(E, u) = 2 Re( i E_{ab;}^{ab} + i div(N.E) - n A^{ab} E_{ab} ) - (n+1) Delta_b u - R u
    DA(E, u) = i nabla_0 E_{ab} + (i/2)(u_{ab} + u_{ba}) + (i/2)(N_{gab} + N_{gba}) u^g
    Gamma f  = -(G(f), S(f)),  G = i f_{ab} - i N_{agb} f^g + n f A_{ab},  S = (n+1) Delta_b f + R f

The formulas are written once and evaluated either on polynomials or on
:class:`~crscalar.operators.LeftInvariantOperator` values (the "unknown" f
then stands for the identity operator), so DR o Gamma comes out as an
operator by the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .connection import ConnectionData, Tensor, solve_connection, sublaplacian
from .exactalg.jets import DEFAULT_ORDER
from .exactalg.numbers import GaussianRational
from .exactalg.poly import Poly
from .models import FrameData, deform_frame, model_frame
from .operators import LeftInvariantOperator

__all__ = [
    "DeformationTangent", "GammaValue", "rossi_tangent", "connection_for",
    "linearize_R", "linearize_A", "gamma", "dstar", "epsilon", "variation_jet",
    "gamma_operator", "drgamma_operator", "tangent_inner", "gamma_pairing",
]

I = GaussianRational(0, 1)
HALF_I = GaussianRational(0, Fraction(1, 2))


@dataclass(frozen=True, eq=False)
class DeformationTangent:
    """(E, u). ``E11`` is E_{11}; for n >= 2 pass the full symmetric matrix ``E``."""

    E11: Poly
    u: Poly
    E: tuple | None = None

    def __post_init__(self):
        if self.u != self.u.conjugate():
            raise ValueError("contact direction u must be real")
        if self.E is not None:
            E = tuple(tuple(r) for r in self.E)
            n = len(E)
            if any(len(r) != n for r in E):
                raise ValueError("E must be square")
            for a in range(n):
                for b in range(n):
                    if E[a][b] != E[b][a]:
                        raise ValueError("E_{ab} must be symmetric")
            object.__setattr__(self, "E", E)
            if E[0][0] != self.E11:
                raise ValueError("E11 disagrees with E[0][0]")

    def matrix(self, n: int):
        if self.E is not None:
            if len(self.E) != n:
                raise ValueError(f"tangent has size {len(self.E)}, model has n = {n}")
            return [list(r) for r in self.E]
        if n != 1:
            raise ValueError("a tangent given by E11 alone only fits n = 1 models")
        return [[self.E11]]

    def on_ring(self, ring):
        """Same tangent with coefficients moved to ``ring`` (e.g. a Rossi ring with lam)."""
        mv = lambda p: p if p.ring == ring else p.change_ring(ring)  # noqa: E731
        E = None if self.E is None else tuple(tuple(mv(x) for x in r) for r in self.E)
        return DeformationTangent(mv(self.E11), mv(self.u), E)

    @classmethod
    def zero(cls, ring):
        return cls(Poly(ring), Poly(ring))


def rossi_tangent(ring) -> DeformationTangent:
    """The t-derivative at 0 of the Rossi family, as a tangent at the standard S^3."""
    return DeformationTangent(Poly.const(ring, I), Poly(ring))


@dataclass(frozen=True, eq=False)
class GammaValue:
    torsion_part: list   # n x n matrix of G_{ab}
    scalar_part: object

    @property
    def torsion11(self):
        return self.torsion_part[0][0]

    def is_zero(self) -> bool:
        return not self.scalar_part and not any(x for r in self.torsion_part for x in r)


@lru_cache(maxsize=None)
def _model_connection(m) -> ConnectionData:
    return solve_connection(model_frame(m))


def connection_for(m) -> ConnectionData:
    """Accept a model id, a FrameData or a ConnectionData."""
    if isinstance(m, ConnectionData):
        return m
    if isinstance(m, FrameData):
        return solve_connection(m)
    return _model_connection(m)


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _mul(c, x):
    if x is None or not c:
        return None
    return c * x


def _zero_like(x):
    return x * 0


# ---------------------------------------------------------------------------
# building blocks (work for Poly and operator values)

def _lower_N(conn):
    """N_{g a b} with all indices down and unbarred: conj(N_{gbar abar}^r h_{r bbar})."""
    n, h = conn.n, conn.frame.h
    out = {}
    for g in range(n):
        for a in range(n):
            for b in range(n):
                v = None
                for r in range(n):
                    v = _add(v, _mul(h[r][b], conn.N[g][a][r]))
                if v is not None and v:
                    out[(g, a, b)] = v.conjugate()
    return out


def _P(conn, E):
    """i nabla^a nabla^b E_{ab} + i nabla_a(N^{bag} E_{bg}) - n A^{ab} E_{ab}."""
    n = conn.n
    K = conn.hinv
    t = Tensor.from_components(conn, 2, {(1 + a, 1 + b): E[a][b] for a in range(n) for b in range(n)})
    d2 = t.nabla().nabla()
    out = None
    for a in range(n):
        for b in range(n):
            for g in range(n):
                for d in range(n):
                    k = K[a][g] * K[b][d]
                    if not k:
                        continue
                    out = _add(out, _mul(k * I, d2[(1 + a, 1 + b, 1 + n + d, 1 + n + g)]))
                    Abar = conn.A[g][d].conjugate()
                    if Abar:
                        out = _add(out, _mul(k * Abar * (-n), E[a][b]))
    if any(x for row in conn.N for col in row for x in col):
        out = _add(out, _N_divergence(conn, E))
    return out


def _N_divergence(conn, E):
    """i nabla_a V^a with V^a = N^{bag} E_{bg}, N^{bag} = h^{b rbar} h^{a sbar} N_{rbar sbar}^g."""
    fr = conn.frame
    n = fr.n
    K = conn.hinv
    V = []
    for a in range(n):
        v = None
        for b in range(n):
            for g in range(n):
                for r in range(n):
                    for s in range(n):
                        c = K[b][r] * K[a][s] * conn.N[r][s][g]
                        v = _add(v, _mul(c, E[b][g]))
        V.append(v)
    out = None
    for a in range(n):
        if V[a] is not None:
            out = _add(out, fr.derive(1 + a, V[a]))
        for g in range(n):
            out = _add(out, _mul(conn.omega[g][a][1 + a], V[g]))
    return _mul(I, out)


def _two_re(x):
    if x is None:
        return None
    return x + x.conjugate()


def _contact_R(conn, u):
    n = conn.n
    lap = sublaplacian(u, conn)
    return lap * (-(n + 1)) - conn.R * u if conn.R else lap * (-(n + 1))


def _dr(conn, E, u):
    out = _two_re(_P(conn, E))
    c = _contact_R(conn, u) if u is not None else None
    out = _add(out, c)
    return out


def _gamma_parts(conn, f):
    """(G, S) for a function or operator f."""
    n = conn.n
    K = conn.hinv
    d1 = Tensor.scalar(conn, f).nabla()
    d2 = d1.nabla()
    Nl = _lower_N(conn)
    G = []
    for a in range(n):
        row = []
        for b in range(n):
            v = _mul(I, d2[(1 + a, 1 + b)])
            for g in range(n):
                if (a, g, b) in Nl:
                    # f^g = h^{g dbar} f_dbar
                    for d in range(n):
                        v = _add(v, _mul(-I * Nl[(a, g, b)] * K[g][d], d1[(1 + n + d,)]))
            if conn.A[a][b]:
                v = _add(v, conn.A[a][b] * n * f)
            row.append(v if v is not None else _zero_like(f))
        G.append(row)
    S = sublaplacian(f, conn) * (n + 1)
    if conn.R:
        S = S + conn.R * f
    return G, S


# ---------------------------------------------------------------------------
# public operations

def linearize_R(m, d: DeformationTangent):
    conn = connection_for(m)
    d = d.on_ring(conn.frame.ring)
    out = _dr(conn, d.matrix(conn.n), d.u)
    return out if out is not None else Poly(conn.frame.ring)


def linearize_A(m, d: DeformationTangent):
    """n x n matrix of the first variation of A_{ab}."""
    conn = connection_for(m)
    d = d.on_ring(conn.frame.ring)
    n = conn.n
    K = conn.hinv
    E = d.matrix(n)
    dE = Tensor.from_components(conn, 2, {(1 + a, 1 + b): E[a][b] for a in range(n) for b in range(n)}).nabla()
    du = Tensor.scalar(conn, d.u).nabla()
    d2u = du.nabla()
    Nl = _lower_N(conn)
    zero = Poly(conn.frame.ring)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            v = _mul(I, dE[(1 + a, 1 + b, 0)])
            v = _add(v, _mul(HALF_I, _add(d2u[(1 + a, 1 + b)], d2u[(1 + b, 1 + a)])))
            for g in range(n):
                c = None
                c = _add(c, Nl.get((g, a, b)))
                c = _add(c, Nl.get((g, b, a)))
                if c:
                    for e in range(n):
                        v = _add(v, _mul(HALF_I * c * K[g][e], du[(1 + n + e,)]))
            row.append(v if v is not None else zero)
        out.append(row)
    return out


def gamma(m, f) -> GammaValue:
    conn = connection_for(m)
    if isinstance(f, Poly) and f.ring != conn.frame.ring:
        f = f.change_ring(conn.frame.ring)
    G, S = _gamma_parts(conn, f)
    return GammaValue(G, S)


def dstar(m, tau, tau_bar=None):
    """d* tau = -(nabla^a tau_a + nabla^abar tau_abar); ``tau_bar`` defaults to conj(tau)."""
    conn = connection_for(m)
    n = conn.n
    K = conn.hinv
    if tau_bar is None:
        tau_bar = [t.conjugate() for t in tau]
    comps = {(1 + a,): tau[a] for a in range(n)}
    comps.update({(1 + n + a,): tau_bar[a] for a in range(n)})
    d = Tensor.from_components(conn, 1, comps).nabla()
    out = None
    for a in range(n):
        for b in range(n):
            out = _add(out, _mul(K[a][b], d[(1 + a, 1 + n + b)]))
            out = _add(out, _mul(K[b][a], d[(1 + n + a, 1 + b)]))
    return -out if out is not None else Poly(conn.frame.ring)


def epsilon(m, d: DeformationTangent):
    """Components eps_a = i h^{b gbar} nabla_gbar E_{ab} of eps = 2 Re(eps_a theta^a)."""
    conn = connection_for(m)
    d = d.on_ring(conn.frame.ring)
    n = conn.n
    K = conn.hinv
    E = d.matrix(n)
    dE = Tensor.from_components(conn, 2, {(1 + a, 1 + b): E[a][b] for a in range(n) for b in range(n)}).nabla()
    out = []
    for a in range(n):
        v = None
        for b in range(n):
            for g in range(n):
                v = _add(v, _mul(I * K[b][g], dE[(1 + a, 1 + b, 1 + n + g)]))
        out.append(v if v is not None else Poly(conn.frame.ring))
    return out


@dataclass(frozen=True)
class VariationJets:
    R: object
    A11: object
    h: object


def variation_jet(m, d: DeformationTangent, order: int = DEFAULT_ORDER) -> VariationJets:
    """Jets of R, A11 and h along (J0 exp(-2t J0 E), e^{tu} theta)."""
    fr = deform_frame(m, d, order)
    conn = solve_connection(fr)
    return VariationJets(conn.R, conn.A11, fr.h[0][0])


# ---------------------------------------------------------------------------
# tangent metric and operator forms

def tangent_inner(conn, E, u, E2, u2):
    """Pointwise <(E,u),(E',u')> = 2 Re(E_{ab} conj(E')^{ab}) + u u'."""
    n = conn.n
    K = conn.hinv
    out = u * u2
    for a in range(n):
        for b in range(n):
            for g in range(n):
                for d in range(n):
                    # conj(E')^{ab} = h^{a gbar} h^{b dbar} conj(E'_{gd})
                    c = K[a][g] * K[b][d]
                    if c:
                        x = E[a][b] * E2[g][d].conjugate() * c
                        out = out + x + x.conjugate()
    return out


def gamma_pairing(m, g: GammaValue, d: DeformationTangent):
    """Pointwise <Gamma f, (E, u)> for Gamma f held as the components (G, S).

    As an element of the tangent space the adjoint of DR is -(G, S), so this
    is minus ``tangent_inner``. Its integral equals that of f DR(E, u).
    """
    conn = connection_for(m)
    d = d.on_ring(conn.frame.ring)
    return -tangent_inner(conn, g.torsion_part, g.scalar_part, d.matrix(conn.n), d.u)


def _identity(conn):
    fr = conn.frame
    if fr.lie is None:
        raise ValueError("model has no invariant generator frame; operators unavailable")
    return LeftInvariantOperator.identity(fr.lie)


def gamma_operator(m):
    """(G, S) as operators in f."""
    conn = connection_for(m)
    return _gamma_parts(conn, _identity(conn))


def drgamma_operator(m):
    """DR o Gamma as an operator: f -> DR(-G(f), -S(f))."""
    conn = connection_for(m)
    G, S = _gamma_parts(conn, _identity(conn))
    E = [[-x for x in row] for row in G]
    return _dr(conn, E, -S)
