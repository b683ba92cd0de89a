"""Sparse multivariate polynomials over QQ or F_p.

A ``MultiPoly`` maps exponent tuples to nonzero coefficients.  Terms are
printed and hashed in graded reverse-lexicographic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .fields import QQ, PrimeField, RationalField

Domain = RationalField | PrimeField


class NotDivisible(ArithmeticError):
    pass


class DomainMismatch(ValueError):
    pass


def grevlex_key(e: tuple[int, ...]) -> tuple:
    """Larger key means larger monomial in graded reverse-lex order."""
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class WeightedGrading:
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if not any(self.weights):
            raise ValueError("at least one weight must be positive")

    def degree(self, e: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, e))


class MultiPoly:
    __slots__ = ("names", "terms", "domain")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple[int, ...], object] = (), domain: Domain = QQ):
        self.names = tuple(names)
        self.domain = domain
        n = len(self.names)
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for variables {self.names}")
            c = domain(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms: dict[tuple[int, ...], object] = {e: domain(c) for e, c in clean.items() if domain(c)}

    @classmethod
    def _raw(cls, names, terms, domain) -> MultiPoly:
        """Trusted constructor: ``terms`` already normalized with no zeros."""
        p = cls.__new__(cls)
        p.names, p.terms, p.domain = names, terms, domain
        return p

    @classmethod
    def zero(cls, names, domain: Domain = QQ) -> MultiPoly:
        return cls._raw(tuple(names), {}, domain)

    @classmethod
    def const(cls, names, c, domain: Domain = QQ) -> MultiPoly:
        names = tuple(names)
        return cls(names, {(0,) * len(names): c}, domain)

    @classmethod
    def var(cls, names, i: int, domain: Domain = QQ) -> MultiPoly:
        names = tuple(names)
        e = [0] * len(names)
        e[i] = 1
        return cls._raw(names, {tuple(e): domain(1)}, domain)

    @classmethod
    def gens(cls, names, domain: Domain = QQ) -> list[MultiPoly]:
        return [cls.var(names, i, domain) for i in range(len(names))]

    # basic views

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # arithmetic

    def _compat(self, other: MultiPoly) -> None:
        if self.names != other.names:
            raise DomainMismatch(f"variables {self.names} vs {other.names}")
        if self.domain != other.domain:
            raise DomainMismatch(f"domains {self.domain} vs {other.domain}")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._compat(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.names, other, self.domain)
        return NotImplemented

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = dom(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.names, out, dom)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        dom = self.domain
        return MultiPoly._raw(self.names, {e: dom(-c) for e, c in self.terms.items()}, dom)

    def __sub__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.names, {e: v for e, c in out.items() if (v := dom(c))}, dom)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.names, 1, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.names == other.names and self.domain == other.domain and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.names, other, self.domain)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.names, self.domain, tuple(self.sorted_terms())))

    def scale(self, c) -> MultiPoly:
        return self * MultiPoly.const(self.names, c, self.domain)

    def monic(self) -> MultiPoly:
        _, lc = self.leading_term()
        return self.scale(self.domain.inv(lc))

    # conversions

    def to_domain(self, domain: Domain) -> MultiPoly:
        return MultiPoly(self.names, {e: domain(c) for e, c in self.terms.items()}, domain)

    def rename(self, names: Sequence[str]) -> MultiPoly:
        if len(names) != self.nvars:
            raise ValueError("wrong number of names")
        return MultiPoly._raw(tuple(names), dict(self.terms), self.domain)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r}, {self.names}, {self.domain})"

    def __str__(self) -> str:
        return format_poly(self)


# -- text format -------------------------------------------------------------


def format_poly(f: MultiPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        neg = isinstance(f.domain, RationalField) and c < 0
        mag = -c if neg else c
        mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(f.names, e) if x)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_NUM = re.compile(r"^\d+(?:/\d+)?$")
_POW = re.compile(r"^([A-Za-z_]\w*)(?:\^(\d+))?$")


def parse_poly(text: str, names: Sequence[str], domain: Domain = QQ) -> MultiPoly:
    """Parse ``"3*s^2*x - t + 1/2*y"`` over the given variables."""
    names = tuple(names)
    idx = {n: i for i, n in enumerate(names)}
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    chunks = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in chunks) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    terms: dict = {}
    for sign, body in chunks:
        coeff = Fraction(1)
        e = [0] * len(names)
        for factor in body.split("*"):
            if _NUM.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _POW.match(factor)
            if m is None or m.group(1) not in idx:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            e[idx[m.group(1)]] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(names, terms, domain)


# -- operations ----------------------------------------------------------------


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient ``f / g``; raises ``NotDivisible`` when the remainder is nonzero."""
    f._compat(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dom = f.domain
    lg, lc = g.leading_term()
    lc_inv = dom.inv(lc)
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        e = max(rem, key=grevlex_key)
        c = rem[e]
        if any(a < b for a, b in zip(e, lg)):
            raise NotDivisible(f"{g} does not divide {f}")
        qe = tuple(a - b for a, b in zip(e, lg))
        qc = dom(c * lc_inv)
        quot[qe] = qc
        for ge, gc in g.terms.items():
            t = tuple(a + b for a, b in zip(qe, ge))
            v = dom(rem.get(t, 0) - qc * gc)
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly._raw(f.names, quot, dom)


def weighted_degree(f: MultiPoly, w: WeightedGrading | Sequence[int]) -> int:
    if not isinstance(w, WeightedGrading):
        w = WeightedGrading(tuple(w))
    if f.is_zero():
        raise ValueError("the zero polynomial has no weighted degree")
    return max(w.degree(e) for e in f.terms)


def is_weighted_homogeneous(f: MultiPoly, w: WeightedGrading | Sequence[int]) -> bool:
    if not isinstance(w, WeightedGrading):
        w = WeightedGrading(tuple(w))
    return len({w.degree(e) for e in f.terms}) <= 1


def diff(f: MultiPoly, i: int) -> MultiPoly:
    dom = f.domain
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            v = dom(c * e[i])
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
    return MultiPoly._raw(f.names, out, dom)


def partials(f: MultiPoly) -> list[MultiPoly]:
    return [diff(f, i) for i in range(f.nvars)]


def substitute(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """Replace variable ``i`` of ``f`` by ``images[i]`` (all in a common ring)."""
    if len(images) != f.nvars:
        raise ValueError("need one image per variable")
    names, dom = images[0].names, images[0].domain
    for g in images:
        if g.names != names or g.domain != dom:
            raise DomainMismatch("images must share variables and domain")
    powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(names, 1, dom)} for _ in images]

    def pw(i, n):
        cache = powers[i]
        if n not in cache:
            cache[n] = pw(i, n - 1) * images[i]
        return cache[n]

    out = MultiPoly.zero(names, dom)
    for e, c in f.sorted_terms():
        term = MultiPoly.const(names, dom(c), dom)
        for i, n in enumerate(e):
            if n:
                term = term * pw(i, n)
        out = out + term
    return out


def substitute_homogeneous(
    f: MultiPoly,
    forms: Sequence[MultiPoly],
    weights: WeightedGrading | Sequence[int],
) -> MultiPoly:
    """Substitute homogeneous forms of degrees ``weights`` into a weighted-homogeneous ``f``.

    The result is homogeneous of degree equal to the weighted degree of ``f``.
    """
    if not isinstance(weights, WeightedGrading):
        weights = WeightedGrading(tuple(weights))
    if len(forms) != f.nvars or len(weights.weights) != f.nvars:
        raise ValueError("need one form and one weight per variable")
    for name, g, w in zip(f.names, forms, weights.weights):
        if g.is_zero() or not g.is_homogeneous() or g.total_degree() != w:
            raise ValueError(f"form for {name} must be homogeneous of degree {w}, got {g}")
    if not is_weighted_homogeneous(f, weights):
        raise ValueError("f is not weighted homogeneous for these weights")
    out = substitute(f, forms)
    if not out.is_zero():
        d = weighted_degree(f, weights)
        if not out.is_homogeneous() or out.total_degree() != d:
            raise ArithmeticError("substitution did not produce a homogeneous form")
    return out


def specialize(f: MultiPoly, i: int, value) -> MultiPoly:
    """Set variable ``i`` to ``value``, keeping the variable slot (its exponent becomes 0)."""
    dom = f.domain
    v = dom(value)
    out: dict = {}
    for e, c in f.terms.items():
        ne = e[:i] + (0,) + e[i + 1 :]
        out[ne] = out.get(ne, 0) + c * v ** e[i]
    return MultiPoly._raw(f.names, {e: x for e, c in out.items() if (x := dom(c))}, dom)


def drop_variable(f: MultiPoly, i: int) -> MultiPoly:
    """Remove variable ``i`` (which must not occur) from the ring."""
    if any(e[i] for e in f.terms):
        raise ValueError(f"variable {f.names[i]} still occurs")
    names = f.names[:i] + f.names[i + 1 :]
    return MultiPoly._raw(names, {e[:i] + e[i + 1 :]: c for e, c in f.terms.items()}, f.domain)


def dehomogenize(f: MultiPoly, i: int = 0) -> MultiPoly:
    return drop_variable(specialize(f, i, 1), i)


def linear_change(f: MultiPoly, matrix: Sequence[Sequence[int]]) -> MultiPoly:
    """Substitute ``x_i -> sum_j matrix[i][j] x_j``."""
    dom = f.domain
    xs = MultiPoly.gens(f.names, dom)
    images = []
    for row in matrix:
        g = MultiPoly.zero(f.names, dom)
        for c, x in zip(row, xs):
            if dom(c):
                g = g + x.scale(c)
        images.append(g)
    return substitute(f, images)
