"""Dense univariate kernels: gcd, squarefree part, Sylvester resultants, eliminants.

Polynomials are coefficient lists, lowest degree first, over a field object
from ``fields`` (``QQ`` or a ``PrimeField``).
"""

from __future__ import annotations

from typing import Sequence

from .fields import PrimeField, QQ
from .poly import MultiPoly


def trim(a: Sequence) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(trim(a)) - 1


def derivative(a: Sequence, F=QQ) -> list:
    return trim([F(i * c) for i, c in enumerate(a)][1:])


def divmod_poly(a: Sequence, b: Sequence, F=QQ) -> tuple[list, list]:
    a = trim([F(c) for c in a])
    b = trim([F(c) for c in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = F.inv(b[-1])
    q = [F(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F(a[-1] * inv)
        shift = len(a) - len(b)
        q[shift] = c
        for j, x in enumerate(b):
            a[shift + j] = F(a[shift + j] - c * x)
        a = trim(a)
    return trim(q), a


def monic(a: Sequence, F=QQ) -> list:
    a = trim(a)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F(c * inv) for c in a]


def gcd(a: Sequence, b: Sequence, F=QQ) -> list:
    a, b = trim([F(c) for c in a]), trim([F(c) for c in b])
    while b:
        a, b = b, divmod_poly(a, b, F)[1]
    return monic(a, F)


def squarefree_part(a: Sequence, F=QQ) -> list:
    """``a / gcd(a, a')``, made monic.  Assumes deg a < char F in positive characteristic."""
    a = trim([F(c) for c in a])
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    if F.characteristic and degree(a) >= F.characteristic:
        raise ValueError("degree too large for the characteristic")
    g = gcd(a, derivative(a, F), F)
    return monic(divmod_poly(a, g, F)[0], F)


def determinant(M: list[list], F=QQ) -> object:
    M = [[F(x) for x in row] for row in M]
    n = len(M)
    det = F(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return F(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = F(-det)
        pv = M[col][col]
        det = F(det * pv)
        inv = F.inv(pv)
        for r in range(col + 1, n):
            if M[r][col]:
                f = F(M[r][col] * inv)
                M[r] = [F(x - f * y) for x, y in zip(M[r], M[col])]
    return det


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix for the formal degrees ``len(f)-1`` and ``len(g)-1`` (leading zeros kept)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - i - n - 1))
    return rows


def resultant(f: Sequence, g: Sequence, F=QQ, formal: bool = False) -> object:
    """Sylvester resultant.  With ``formal`` the given lengths fix the degrees."""
    if not formal:
        f, g = trim(f), trim(g)
    if not trim(f) or not trim(g):
        raise ValueError("resultant with the zero polynomial")
    if len(f) == 1 and len(g) == 1:
        return F(1)
    return determinant(sylvester_matrix(f, g), F)


def interpolate(xs: Sequence[int], ys: Sequence[int], F: PrimeField) -> list[int]:
    """Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = [F(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F((coef[i] - coef[i - 1]) * F.inv(xs[i] - xs[i - j]))
    poly = [F(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [F(0)] * n
        for k in range(deg + 1):
            if k + 1 < n:
                new[k + 1] = F(new[k + 1] + poly[k])
            new[k] = F(new[k] - poly[k] * xs[i])
        new[0] = F(new[0] + coef[i])
        poly = new
        deg += 1
    return trim(poly)


def univariate_view(f: MultiPoly, var: int) -> list[MultiPoly]:
    """Coefficients of ``f`` as a polynomial in variable ``var``; entries free of ``var``."""
    d = f.degree_in(var)
    out = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        out[e[var]][e[:var] + (0,) + e[var + 1 :]] = c
    return [MultiPoly._raw(f.names, t, f.domain) for t in out]


def _eval_other(coeffs: list[MultiPoly], other: int, y: int, F: PrimeField) -> list[int]:
    out = []
    for c in coeffs:
        s = 0
        for e, a in c.terms.items():
            s += a * pow(y, e[other], F.p)
        out.append(s % F.p)
    return out


def eliminant(f: MultiPoly, g: MultiPoly, var: int = 0) -> list[int]:
    """``Res_var(f, g)`` for bivariate ``f, g`` over F_p, as a dense polynomial in the other variable.

    Evaluates the Sylvester determinant at enough points and interpolates.
    """
    F = f.domain
    if not isinstance(F, PrimeField) or f.nvars != 2:
        raise ValueError("eliminant expects bivariate polynomials over a prime field")
    f._compat(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("eliminant with the zero polynomial")
    other = 1 - var
    fc, gc = univariate_view(f, var), univariate_view(g, var)
    bound = f.total_degree() * g.total_degree()
    xs = list(range(bound + 1))
    ys = []
    for y in xs:
        a, b = _eval_other(fc, other, y, F), _eval_other(gc, other, y, F)
        # the formal Sylvester determinant vanishes when either specialization does
        ys.append(resultant(a, b, F, formal=True) if any(a) and any(b) else 0)
    return interpolate(xs, ys, F)
