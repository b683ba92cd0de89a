"""Buchberger's algorithm over F_p in graded reverse-lex order, and quotient-ring tools.

Internally polynomials are plain ``{exponent: int}`` dicts with coefficients in
``range(p)``; the public functions take and return ``MultiPoly``.
"""

from __future__ import annotations

import math
from itertools import product

from .fields import PrimeField
from .poly import MultiPoly, grevlex_key

INFINITE = math.inf


def _lm(p: dict) -> tuple:
    return max(p, key=grevlex_key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p: dict, P: int) -> dict:
    inv = pow(p[_lm(p)], -1, P)
    return {e: c * inv % P for e, c in p.items()}


def _reduce(p: dict, G: list[dict], lms: list[tuple], P: int) -> dict:
    """Full reduction of ``p`` by the monic polynomials ``G``."""
    p = dict(p)
    rem = {}
    while p:
        e = _lm(p)
        c = p.pop(e)
        for g, lg in zip(G, lms):
            if _divides(lg, e):
                shift = tuple(a - b for a, b in zip(e, lg))
                for ge, gc in g.items():
                    if ge == lg:
                        continue
                    t = tuple(a + b for a, b in zip(ge, shift))
                    v = (p.get(t, 0) - c * gc) % P
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
    return rem


def _spoly(f: dict, g: dict, lf: tuple, lg: tuple, P: int) -> dict:
    L = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(L, lf))
    sg = tuple(a - b for a, b in zip(L, lg))
    out: dict = {}
    for e, c in f.items():
        t = tuple(a + b for a, b in zip(e, sf))
        out[t] = (out.get(t, 0) + c) % P
    for e, c in g.items():
        t = tuple(a + b for a, b in zip(e, sg))
        out[t] = (out.get(t, 0) - c) % P
    return {e: c for e, c in out.items() if c}


def _field(polys: list[MultiPoly]) -> PrimeField:
    if not polys:
        raise ValueError("need at least one generator")
    dom = polys[0].domain
    if not isinstance(dom, PrimeField):
        raise ValueError("Groebner bases are computed over prime fields only")
    for f in polys:
        polys[0]._compat(f)
    return dom


def groebner_dicts(gens: list[dict], P: int) -> list[dict]:
    G = [_monic(g, P) for g in gens if g]
    lms = [_lm(g) for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        # normal selection strategy: smallest lcm first, ties broken by index
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = lms[i], lms[j]
        L = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if any(
            k != i and k != j
            and _divides(lms[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        h = _reduce(_spoly(G[i], G[j], li, lj, P), G, lms, P)
        if h:
            h = _monic(h, P)
            n = len(G)
            G.append(h)
            lms.append(_lm(h))
            pairs.update((a, n) for a in range(n))
    # minimalize, then interreduce
    keep = []
    for i, li in enumerate(lms):
        if any(_divides(lms[j], li) and (lms[j] != li or j < i) for j in range(len(G)) if j != i):
            continue
        keep.append(i)
    G = [G[i] for i in keep]
    lms = [lms[i] for i in keep]
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1 :]
        olms = lms[:i] + lms[i + 1 :]
        out.append(_monic(_reduce(g, others, olms, P), P))
    out.sort(key=lambda g: grevlex_key(_lm(g)), reverse=True)
    return out


def groebner(polys: list[MultiPoly]) -> list[MultiPoly]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    polys = list(polys)
    F = _field(polys)
    gens = [dict(f.terms) for f in polys if f]
    if not gens:
        return []
    names = polys[0].names
    return [MultiPoly._raw(names, g, F) for g in groebner_dicts(gens, F.p)]


def reduce(f: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Normal form of ``f`` modulo a Groebner basis."""
    F = f.domain
    G = [dict(g.terms) for g in basis]
    return MultiPoly._raw(f.names, _reduce(dict(f.terms), G, [_lm(g) for g in G], F.p), F)


def leading_monomials(basis: list[MultiPoly]) -> list[tuple]:
    return [g.leading_term()[0] for g in basis]


def standard_monomials(basis: list[MultiPoly], nvars: int | None = None) -> list[tuple] | None:
    """Monomials outside the leading-term ideal, or ``None`` if there are infinitely many."""
    if nvars is None:
        if not basis:
            raise ValueError("need nvars for an empty basis")
        nvars = basis[0].nvars
    lms = leading_monomials(basis)
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in lms if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = [e for e in product(*(range(b) for b in bounds)) if not any(_divides(l, e) for l in lms)]
    out.sort(key=grevlex_key)
    return out


def quotient_dimension(basis: list[MultiPoly], nvars: int | None = None) -> int | float:
    """Dimension of k[x]/I over k; ``INFINITE`` when the staircase is unbounded."""
    std = standard_monomials(basis, nvars)
    return INFINITE if std is None else len(std)


def minimal_polynomial(basis: list[MultiPoly], var: int) -> list[int]:
    """Monic generator of ``I ∩ k[x_var]`` (lowest degree first) for a zero-dimensional ``I``."""
    if not basis:
        raise ValueError("empty basis")
    F = basis[0].domain
    P = F.p
    names = basis[0].names
    dim = quotient_dimension(basis)
    if dim == INFINITE:
        raise ValueError("ideal is not zero-dimensional")
    G = [dict(g.terms) for g in basis]
    lms = [_lm(g) for g in G]
    x = [0] * len(names)
    x[var] = 1
    x = tuple(x)
    rows: list[tuple[tuple, dict, dict]] = []  # (pivot, vector, combination)
    cur = _reduce({(0,) * len(names): 1}, G, lms, P)
    for j in range(dim + 1):
        v, combo = dict(cur), {j: 1}
        for piv, rv, rc in rows:
            c = v.get(piv)
            if c:
                for e, a in rv.items():
                    t = (v.get(e, 0) - c * a) % P
                    if t:
                        v[e] = t
                    else:
                        v.pop(e, None)
                for e, a in rc.items():
                    combo[e] = (combo.get(e, 0) - c * a) % P
        if not v:
            poly = [0] * (j + 1)
            for e, a in combo.items():
                poly[e] = a % P
            inv = pow(poly[j], -1, P)
            return [c * inv % P for c in poly]
        piv = max(v, key=grevlex_key)
        inv = pow(v[piv], -1, P)
        rows.append((piv, {e: a * inv % P for e, a in v.items()}, {e: a * inv % P for e, a in combo.items()}))
        shifted = {tuple(a + b for a, b in zip(e, x)): c for e, c in cur.items()}
        cur = _reduce(shifted, G, lms, P)
    raise AssertionError("no relation found within the quotient dimension")
