"""Univariate polynomials over Q: Euclid, Sturm sequences, real-root isolation.

A polynomial is a tuple of Fractions, lowest degree first, without trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "upoly", "deg", "add", "sub", "mul", "scale", "divmod_", "gcd", "monic", "evaluate",
    "derivative", "sturm_sequence", "count_real_roots", "isolate_real_roots", "rational_roots",
    "to_string", "power",
]


def upoly(coeffs) -> tuple:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def deg(p) -> int:
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return upoly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, c):
    return upoly([c * x for x in p])


def sub(p, q):
    return add(p, scale(q, -1))


def mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly(out)


def power(p, k):
    out = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq, lq = deg(q), q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and any(r):
        k = len(r) - 1 - dq
        c = r[-1] / lq
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return upoly(quot), upoly(r)


def monic(p):
    return scale(p, 1 / p[-1]) if p else p


def gcd(p, q):
    """Monic gcd (the zero polynomial's gcd with itself is 0)."""
    a, b = upoly(p), upoly(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def evaluate(p, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return upoly([i * c for i, c in enumerate(p)][1:])


def sturm_sequence(p):
    seq = [upoly(p), derivative(upoly(p))]
    while seq[-1]:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return seq


def _sign_changes(seq, x):
    signs = [evaluate(s, x) for s in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(p, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    seq = sturm_sequence(p)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def _cauchy_bound(p):
    return 1 + max(abs(c / p[-1]) for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_real_roots(p, width=Fraction(1, 10**6)):
    """Disjoint rational intervals (lo, hi], each holding exactly one distinct real root.

    Intervals are refined by bisection until narrower than ``width``.
    """
    p = upoly(p)
    if deg(p) < 1:
        return []
    seq = sturm_sequence(p)
    B = _cauchy_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = _sign_changes(seq, lo) - _sign_changes(seq, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def rational_roots(p):
    """All distinct rational roots.

    Real roots are isolated by Sturm bisection; a rational root num/den in lowest
    terms has den dividing the leading coefficient of the integer-scaled
    polynomial, so each interval is probed at the nearest such fractions.
    """
    from math import gcd as igcd, lcm

    p = upoly(p)
    if not p:
        raise ValueError("zero polynomial")
    roots = set()
    while p and p[0] == 0:
        roots.add(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return sorted(roots)
    L = 1
    for c in p:
        L = lcm(L, c.denominator)
    ints = [int(c * L) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    an = abs(ints[-1] // g)
    dens = [d for d in range(1, an + 1) if an % d == 0] if an < 10**6 else None
    sq = divmod_(p, gcd(p, derivative(p)))[0]
    for lo, hi in isolate_real_roots(sq, width=Fraction(1, 4 * max(an, 1) ** 2)):
        cands = dens if dens is not None else [1, an]
        for d in cands:
            for num in {(hi * d).__floor__(), (lo * d).__ceil__()}:
                x = Fraction(num, d)
                if lo < x <= hi and evaluate(p, x) == 0:
                    roots.add(x)
    return sorted(roots)


def to_string(p, var="t") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        cs = str(a)
        if k == 0:
            body = cs
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{cs}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
