"""MTW (here Tanaka-Webster) connection, torsion and curvature of a frame.

Everything is computed from brackets of the frame vectors. Write
c[i][j][k] = coform_k([e_i, e_j]) with e_0 = T, e_a = Z_a, e_{n+a} = Zb_a.
Evaluating the structure equations on pairs of frame vectors gives

    omega_b^a(Zb_g) = -theta^a([Z_b, Zb_g])      omega_b^a(T) = -theta^a([Z_b, T])
    A^a_{bbar}      =  theta^a([Zb_b, T])          N_{bbar cbar}^a = theta^a([Zb_b, Zb_c])

and omega_b^a(Z_g) follows from dh = omega_{ab} + omega_{ba}-bar. The remaining
equations are consistency conditions, which are checked.

Tensors are dicts of components keyed by tuples of frame indices; the
covariant derivative appends its direction on the right, so the key
(a, b) of the second derivative of u is nabla_b nabla_a u.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .exactalg.numbers import GaussianRational
from .exactalg.poly import random_poly
from .models import FrameData, invert_matrix, solve_linear

__all__ = [
    "ConnectionData", "Tensor", "CovDeriv", "solve_connection", "scalar_curvature",
    "sublaplacian", "commutator_residuals", "ConnectionError",
]

I = GaussianRational(0, 1)


class ConnectionError(ValueError):
    """The structure equations have no solution for this coframe."""


def _conj(x):
    return x.conjugate()


def _nz(x):
    return x is not None and bool(x)


@dataclass(frozen=True, eq=False)
class ConnectionData:
    frame: FrameData
    omega: list       # omega[b][a][d] = omega_b^a(e_d)
    A_up: list        # A_up[a][b] = A^a_{bbar}
    N: list           # N[b][c][a] = N_{bbar cbar}^a
    hinv: list        # hinv[a][b] = h^{a bbar}

    @property
    def n(self):
        return self.frame.n

    @cached_property
    def A(self):
        """Lowered torsion A_{ab} = conj(A_{abar bbar}), A_{gbar bbar} = h_{a gbar} A^a_{bbar}."""
        n, h = self.n, self.frame.h
        low_bar = [[_sum(h[a][g] * self.A_up[a][b] for a in range(n)) for b in range(n)] for g in range(n)]
        return [[_conj(low_bar[a][b]) for b in range(n)] for a in range(n)]

    @property
    def A11(self):
        return self.A[0][0]

    @cached_property
    def A_mixed(self):
        """A_a^{bbar} = A_{ag} h^{g bbar}."""
        n = self.n
        return [[_sum(self.A[a][g] * self.hinv[g][b] for g in range(n)) for b in range(n)] for a in range(n)]

    def omega_theta(self, b=0, a=0):
        """Components of omega_b^a against (theta, theta^1..n, theta^1bar..nbar)."""
        return list(self.omega[b][a])

    @cached_property
    def conn_table(self):
        """W[d][k][m]: nabla_{e_d} of a lower slot k picks up -W[d][k][m] * (slot m)."""
        fr = self.frame
        n, dim = fr.n, fr.dim
        W = [[dict() for _ in range(dim)] for _ in range(dim)]
        for d in range(dim):
            dc = fr.conj_index(d)
            for b in range(n):
                for a in range(n):
                    w = self.omega[b][a][d]
                    if w:
                        W[d][1 + b][1 + a] = w
                    wb = _conj(self.omega[b][a][dc])
                    if wb:
                        W[d][1 + n + b][1 + n + a] = wb
        return W

    def Omega(self, b, a, i, j):
        """Curvature two-form Omega_b^a = d omega_b^a - omega_b^g ^ omega_g^a on (e_i, e_j)."""
        fr = self.frame
        n = fr.n
        om = self.omega
        e = fr.vectors
        c = fr.structure
        val = e[i](om[b][a][j]) - e[j](om[b][a][i])
        for k in range(fr.dim):
            if c[i][j][k] and om[b][a][k]:
                val = val - c[i][j][k] * om[b][a][k]
        for g in range(n):
            val = val - (om[b][g][i] * om[g][a][j] - om[b][g][j] * om[g][a][i])
        return val

    def curvature(self, b, a, c, e):
        """R_b^a_{c ebar} = Omega_b^a(Z_c, Zb_e)."""
        n = self.n
        return self.Omega(b, a, 1 + c, 1 + n + e)

    @cached_property
    def R(self):
        return scalar_curvature(self, self.frame)

    def V_holo(self, b, a, c, e):
        return self.Omega(b, a, 1 + c, 1 + e)

    def V_antiholo(self, b, a, c, e):
        n = self.n
        return self.Omega(b, a, 1 + n + c, 1 + n + e)

    def V_defects(self):
        """Index tuples where the (2,0) or (0,2) curvature part fails to vanish."""
        n = self.n
        bad = []
        for b in range(n):
            for a in range(n):
                for c in range(n):
                    for e in range(n):
                        if self.V_holo(b, a, c, e):
                            bad.append(("holo", b, a, c, e))
                        if self.V_antiholo(b, a, c, e):
                            bad.append(("antiholo", b, a, c, e))
        return bad

    def uses(self, name):
        vals = [w for row in self.omega for col in row for w in col]
        vals += [x for row in self.A_up for x in row]
        return any(v.uses(name) for v in vals if v)


def _sum(it):
    out = None
    for x in it:
        out = x if out is None else out + x
    return out


def solve_connection(fr: FrameData) -> ConnectionData:
    n, dim = fr.n, fr.dim
    bad = fr.duality_defects()
    if bad:
        raise ConnectionError(f"coframe is not dual to the frame at (form, vector) = {bad[0]}")
    c = fr.structure
    h = fr.h
    zero = fr.zero()
    try:
        hinvT = invert_matrix([[h[b][a] for b in range(n)] for a in range(n)])
    except ValueError as exc:
        raise ConnectionError(f"degenerate Levi form: {exc}") from None
    hinv = hinvT  # (h^T)^{-1}: sum_g hinv[a][g] h[b][g] = delta_ab
    Zi = lambda a: 1 + a  # noqa: E731
    Zbi = lambda a: 1 + n + a  # noqa: E731
    om = [[[zero] * dim for _ in range(n)] for _ in range(n)]
    for b in range(n):
        for a in range(n):
            om[b][a][0] = -c[Zi(b)][0][Zi(a)]
            for g in range(n):
                om[b][a][Zbi(g)] = -c[Zi(b)][Zbi(g)][Zi(a)]
    # sum_m omega_a^m(Z_g) h_{m bbar} = Z_g h_{a bbar} - conj(sum_m omega_b^m(Zb_g) h_{m abar})
    for g in range(n):
        for a in range(n):
            rhs = []
            for b in range(n):
                r = fr.vectors[Zi(g)](h[a][b])
                s = _sum(om[b][m][Zbi(g)] * h[m][a] for m in range(n))
                rhs.append(r - _conj(s))
            try:
                sol = solve_linear([[h[m][b] for m in range(n)] for b in range(n)], rhs)
            except ValueError as exc:
                raise ConnectionError(str(exc)) from None
            for m in range(n):
                om[a][m][Zi(g)] = sol[m]
    A_up = [[c[Zbi(b)][0][Zi(a)] for b in range(n)] for a in range(n)]
    N = [[[c[Zbi(b)][Zbi(cc)][Zi(a)] for a in range(n)] for cc in range(n)] for b in range(n)]
    conn = ConnectionData(fr, om, A_up, N, hinv)
    _check_consistency(conn)
    return conn


def _check_consistency(conn: ConnectionData):
    fr = conn.frame
    n = fr.n
    c = fr.structure
    h = fr.h
    om = conn.omega
    # metric compatibility along T
    for a in range(n):
        for b in range(n):
            lhs = fr.T(h[a][b])
            rhs = _sum(om[a][m][0] * h[m][b] for m in range(n)) + _conj(
                _sum(om[b][m][0] * h[m][a] for m in range(n))
            )
            if lhs != rhs:
                raise ConnectionError("metric compatibility fails along T")
    # dtheta^a(Z_b, Z_c) = omega_b^a(Z_c) - omega_c^a(Z_b)
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                lhs = -c[1 + b][1 + cc][1 + a]
                if lhs != om[b][a][1 + cc] - om[cc][a][1 + b]:
                    raise ConnectionError("structure equation fails on (Z, Z)")
    # no theta or Zb component in the wrong slots: dtheta^a(Zb, T) has no omega part,
    # and dtheta^a(T, .) pairs are covered above; theta^a([Zb_b, Zb_c]) is N.
    # dtheta(Z_a, Zb_b) = i h_{a bbar} is the definition of h; dtheta(T, .) = 0:
    for k in range(1, fr.dim):
        if c[0][k][0]:
            raise ConnectionError("T is not the Reeb field of theta")


def scalar_curvature(conn: ConnectionData, fr: FrameData | None = None):
    """R = R_a^a_{c ebar} h^{c ebar}."""
    n = conn.n
    K = conn.hinv
    return _sum(
        conn.curvature(a, a, cc, e) * K[cc][e] for a in range(n) for cc in range(n) for e in range(n)
    )


# ---------------------------------------------------------------------------
# tensors and covariant derivatives


class Tensor:
    """Covariant tensor with lower frame indices; components computed lazily.

    Index kinds follow the frame numbering: 1..n holomorphic, n+1..2n
    antiholomorphic, 0 the Reeb direction. Missing components are zero.
    """

    def __init__(self, conn: ConnectionData, rank: int, getter):
        self.conn = conn
        self.rank = rank
        self._get = getter
        self._cache = {}

    @classmethod
    def from_components(cls, conn, rank, comps):
        comps = dict(comps)
        return cls(conn, rank, lambda k: comps.get(k))

    @classmethod
    def scalar(cls, conn, u):
        return cls(conn, 0, lambda k: u)

    def __getitem__(self, key):
        key = tuple(key)
        if key not in self._cache:
            v = self._get(key)
            self._cache[key] = v if _nz(v) else None
        return self._cache[key]

    def value(self, key, like=None):
        v = self[key]
        if v is None:
            return like * 0 if like is not None else self.conn.frame.zero()
        return v

    def nabla(self) -> "Tensor":
        conn = self.conn
        fr = conn.frame
        W = conn.conn_table
        parent = self

        def get(key):
            *k, d = key
            k = tuple(k)
            base = parent[k]
            out = fr.derive(d, base) if base is not None else None
            for s, ks in enumerate(k):
                for m, w in W[d][ks].items():
                    other = parent[k[:s] + (m,) + k[s + 1:]]
                    if other is not None:
                        t = w * other
                        out = -t if out is None else out - t
            return out

        return Tensor(conn, self.rank + 1, get)


class CovDeriv:
    """Convenience handle: covariant derivatives of scalars and sections for one model."""

    def __init__(self, conn: ConnectionData):
        self.conn = conn
        self.frame = conn.frame

    def scalar(self, u, times=1) -> Tensor:
        t = Tensor.scalar(self.conn, u)
        for _ in range(times):
            t = t.nabla()
        return t

    def section(self, sigma, times=1) -> Tensor:
        """sigma: list of components sigma_a (a = 0..n-1)."""
        t = Tensor.from_components(self.conn, 1, {(1 + a,): s for a, s in enumerate(sigma)})
        for _ in range(times):
            t = t.nabla()
        return t

    def symmetric(self, E, times=1) -> Tensor:
        """E: n x n matrix of E_{ab}."""
        n = self.frame.n
        t = Tensor.from_components(
            self.conn, 2, {(1 + a, 1 + b): E[a][b] for a in range(n) for b in range(n)}
        )
        for _ in range(times):
            t = t.nabla()
        return t


def sublaplacian(u, conn: ConnectionData, fr: FrameData | None = None):
    """Delta_b u = 2 Re nabla^a nabla_a u, extended complex-linearly."""
    n = conn.n
    K = conn.hinv
    d2 = Tensor.scalar(conn, u).nabla().nabla()
    out = None
    for a in range(n):
        for b in range(n):
            k = K[a][b]
            for key in ((1 + a, 1 + n + b), (1 + n + b, 1 + a)):
                v = d2[key]
                if v is not None:
                    t = k * v
                    out = t if out is None else out + t
    return out if out is not None else u * 0


# ---------------------------------------------------------------------------
# commutator identities

COMMUTATOR_FAMILIES = (
    "matsumoto-holomorphic",
    "matsumoto-mixed",
    "matsumoto-reeb",
    "matsumoto-mixed-conjugate",
    "curvature-commutator",
    "torsion-commutator",
)


def _scalar_residuals(conn, u):
    fr = conn.frame
    n = fr.n
    h = fr.h
    d1 = Tensor.scalar(conn, u).nabla()
    d2 = d1.nabla()
    z = fr.zero() * 0 + u * 0
    val = lambda t, k: t.value(k, z)  # noqa: E731
    out = {f: [] for f in COMMUTATOR_FAMILIES[:4]}
    for a in range(n):
        A_, Ab = 1 + a, 1 + n + a
        for b in range(n):
            B, Bb = 1 + b, 1 + n + b
            # nabla_b nabla_a u = nabla_a nabla_b u - N_{ab}^{gbar} nabla_gbar u
            r = val(d2, (A_, B)) - val(d2, (B, A_))
            for g in range(n):
                Nc = _conj(conn.N[a][b][g])
                if Nc:
                    r = r + Nc * val(d1, (1 + n + g,))
            out["matsumoto-holomorphic"].append(r)
            # nabla_bbar nabla_a u = nabla_a nabla_bbar u + i h_{a bbar} nabla_0 u
            r = val(d2, (A_, Bb)) - val(d2, (Bb, A_)) - I * h[a][b] * val(d1, (0,))
            out["matsumoto-mixed"].append(r)
            # conjugate: nabla_b nabla_abar u = nabla_abar nabla_b u - i h_{b abar} nabla_0 u
            r = val(d2, (Ab, B)) - val(d2, (B, Ab)) + I * h[b][a] * val(d1, (0,))
            out["matsumoto-mixed-conjugate"].append(r)
        # nabla_a nabla_0 u = nabla_0 nabla_a u + A_a^{bbar} nabla_bbar u
        r = val(d2, (0, A_)) - val(d2, (A_, 0))
        for b in range(n):
            r = r - conn.A_mixed[a][b] * val(d1, (1 + n + b,))
        out["matsumoto-reeb"].append(r)
    return out


def _nabla_A_upper(conn, a, b, eps):
    """nabla_a A^eps_{bbar} (upper holomorphic eps, lower antiholomorphic b)."""
    fr = conn.frame
    n = fr.n
    W = conn.conn_table
    d = 1 + a
    val = fr.vectors[d](conn.A_up[eps][b])
    for g in range(n):
        w = conn.omega[g][eps][d]
        if w:
            val = val + w * conn.A_up[g][b]
        wb = W[d][1 + n + b].get(1 + n + g)
        if wb:
            val = val - wb * conn.A_up[eps][g]
    return val


def _section_residuals(conn, sigma):
    fr = conn.frame
    n = fr.n
    h = fr.h
    s1 = Tensor.from_components(conn, 1, {(1 + a,): s for a, s in enumerate(sigma)})
    d1 = s1.nabla()
    d2 = d1.nabla()
    z = fr.zero() * 0 + sigma[0] * 0
    val = lambda t, k: t.value(k, z)  # noqa: E731
    out = {"curvature-commutator": [], "torsion-commutator": []}
    for a in range(n):
        A_ = 1 + a
        for b in range(n):
            B, Bb = 1 + b, 1 + n + b
            for g in range(n):
                Gb = 1 + n + g
                # nabla_gbar nabla_b sigma_a = nabla_b nabla_gbar sigma_a + i h_{b gbar} nabla_0 sigma_a
                #                              + R_a^e_{b gbar} sigma_e
                r = val(d2, (A_, B, Gb)) - val(d2, (A_, Gb, B)) - I * h[b][g] * val(d1, (A_, 0))
                for e in range(n):
                    r = r - conn.curvature(a, e, b, g) * val(s1, (1 + e,))
                out["curvature-commutator"].append(r)
            # nabla_bbar nabla_0 sigma_a = nabla_0 nabla_bbar sigma_a + A_{bbar}^e nabla_e sigma_a
            #     + sigma_e nabla_a A_{bbar}^e - A_a^{rbar} N_{bbar rbar}^e sigma_e
            r = val(d2, (A_, 0, Bb)) - val(d2, (A_, Bb, 0))
            for e in range(n):
                r = r - conn.A_up[e][b] * val(d1, (A_, 1 + e))
                r = r - val(s1, (1 + e,)) * _nabla_A_upper(conn, a, b, e)
                for rr in range(n):
                    r = r + conn.A_mixed[a][rr] * conn.N[b][rr][e] * val(s1, (1 + e,))
            out["torsion-commutator"].append(r)
    return out


def commutator_residuals(fr: FrameData, conn: ConnectionData | None = None, *, seed: int = 0,
                         samples: int = 3, degree: int = 4, scalars=(), sections=()):
    """Residuals (left minus right) of the six commutator identities.

    Random test functions are drawn with ``seed``; extra ``scalars`` and
    ``sections`` (lists of n components) can be supplied. Returns a dict
    family -> list of residuals; every entry should be exactly zero.
    """
    conn = conn or solve_connection(fr)
    rng = random.Random(seed)
    ring = fr.ring
    names = tuple(nm for nm in ring.names if nm != "lam")
    us = list(scalars) + [random_poly(ring, degree, rng, names=names) for _ in range(samples)]
    sigmas = list(sections) + [
        [random_poly(ring, degree, rng, names=names) for _ in range(fr.n)] for _ in range(samples)
    ]
    out = {f: [] for f in COMMUTATOR_FAMILIES}
    for u in us:
        for k, v in _scalar_residuals(conn, u).items():
            out[k].extend(v)
    for s in sigmas:
        for k, v in _section_residuals(conn, s).items():
            out[k].extend(v)
    return out
