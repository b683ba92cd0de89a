"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its reduced residue modulo the cyclotomic polynomial
Phi_N, in the power basis 1, z, ..., z^(phi(N)-1).  Internally only the nonzero
coordinates are kept, as a sorted tuple of ``(power, coefficient)`` pairs, since
the group elements we care about are roots of unity and stay sparse.
Coefficients are ints or reduced Fractions; integral Fractions are demoted to
int so that hashing and equality are structural.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


class NotRootOfUnity(ArithmeticError):
    pass


class ConductorMismatch(ValueError):
    pass


def _norm(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high) with monic ``den``."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Computed as ``(x^n - 1) / prod_{d | n, d < n} Phi_d``.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_exact_div(num, den))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """``table[e]`` is the sparse reduction of ``x^e`` mod Phi_n for ``0 <= e < n``."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        table.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by x and reduce the overflow with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(table)


@dataclass(frozen=True, order=True)
class CycPhase:
    """The root of unity e(a/b) = exp(2 pi i a/b), stored with 0 <= a < b and gcd(a, b) = 1."""

    a: int
    b: int

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError("phase denominator must be positive")
        a = self.a % self.b  # e() has period 1
        g = math.gcd(a, self.b)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", self.b // g)

    @classmethod
    def of(cls, x: Fraction | int | CycPhase) -> CycPhase:
        if isinstance(x, CycPhase):
            return x
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.b)


class CycNumber:
    __slots__ = ("N", "terms", "_hash")

    def __init__(self, N: int, terms=()):
        """``terms`` is an iterable of ``(power, coefficient)`` with power < phi(N)."""
        self.N = N
        self.terms: tuple[tuple[int, Rational], ...] = tuple(terms)
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, N: int) -> CycNumber:
        return cls(N)

    @classmethod
    def one(cls, N: int) -> CycNumber:
        return cls(N, ((0, 1),))

    @classmethod
    def from_rational(cls, N: int, c: Rational) -> CycNumber:
        c = _norm(Fraction(c))
        return cls(N, ((0, c),) if c else ())

    @classmethod
    def zeta_power(cls, N: int, e: int) -> CycNumber:
        return cls(N, _power_table(N)[e % N])

    @classmethod
    def from_coords(cls, N: int, coords) -> CycNumber:
        if len(coords) != euler_phi(N):
            raise ValueError(f"need {euler_phi(N)} coordinates for conductor {N}")
        return cls(N, tuple((i, _norm(Fraction(c))) for i, c in enumerate(coords) if c))

    @classmethod
    def from_poly(cls, N: int, coeffs) -> CycNumber:
        """Reduce an arbitrary polynomial in zeta (low-to-high coefficients) mod Phi_N."""
        table = _power_table(N)
        acc: dict[int, Rational] = {}
        for e, c in enumerate(coeffs):
            if c:
                for i, t in table[e % N]:
                    acc[i] = acc.get(i, 0) + c * t
        return cls._from_acc(N, acc)

    @classmethod
    def _from_acc(cls, N: int, acc: dict[int, Rational]) -> CycNumber:
        return cls(N, tuple((i, _norm(c)) for i, c in sorted(acc.items()) if c))

    # views

    @property
    def degree(self) -> int:
        return euler_phi(self.N)

    @property
    def coords(self) -> list[Fraction]:
        out = [Fraction(0)] * euler_phi(self.N)
        for i, c in self.terms:
            out[i] = Fraction(c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def is_rational(self) -> bool:
        return all(i == 0 for i, _ in self.terms)

    # arithmetic

    def _check(self, other: CycNumber) -> None:
        if self.N != other.N:
            raise ConductorMismatch(f"conductors {self.N} and {other.N} differ")

    def _coerce(self, other) -> CycNumber:
        if isinstance(other, CycNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.N, other)
        return NotImplemented

    def __add__(self, other) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for i, c in other.terms:
            acc[i] = acc.get(i, 0) + c
        return CycNumber._from_acc(self.N, acc)

    __radd__ = __add__

    def __neg__(self) -> CycNumber:
        return CycNumber(self.N, tuple((i, -c) for i, c in self.terms))

    def __sub__(self, other) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycNumber:
        return (-self) + other

    def __mul__(self, other) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return CycNumber(self.N)
        if other.is_rational():
            c = other.terms[0][1]
            return CycNumber(self.N, tuple((i, _norm(a * c)) for i, a in self.terms))
        if self.is_rational():
            return other * self
        N = self.N
        table = _power_table(N)
        acc: dict[int, Rational] = {}
        for i, a in self.terms:
            for j, b in other.terms:
                ab = a * b
                for k, t in table[(i + j) % N]:
                    acc[k] = acc.get(k, 0) + ab * t
        return CycNumber._from_acc(self.N, acc)

    __rmul__ = __mul__

    def inv(self) -> CycNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.N)]
        s = _qx_inverse_mod(self.coords, phi)
        return CycNumber.from_coords(self.N, s + [0] * (euler_phi(self.N) - len(s)))

    def __truediv__(self, other) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, n: int) -> CycNumber:
        base = self
        if n < 0:
            base, n = self.inv(), -n
        result = CycNumber.one(self.N)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison and hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNumber):
            return self.N == other.N and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == CycNumber.from_rational(self.N, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.N, self.terms))
        return self._hash

    def key(self) -> tuple:
        return self.terms

    def __repr__(self) -> str:
        return f"CycNumber({self.N}, {self.terms!r})"

    def __str__(self) -> str:
        pairs = ", ".join(f"({c},{i})" for i, c in self.terms)
        return f"zeta{self.N}: [{pairs}]"

    def to_json(self) -> dict:
        return {
            "conductor": self.N,
            "terms": [[c if isinstance(c, int) else str(c), i] for i, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> CycNumber:
        N = int(data["conductor"])
        acc = {int(i): _norm(Fraction(c)) for c, i in data["terms"]}
        return cls._from_acc(N, acc)

    def embed(self, M: int) -> CycNumber:
        """Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N)."""
        if M % self.N:
            raise ConductorMismatch(f"{self.N} does not divide {M}")
        step = M // self.N
        coeffs = [0] * (step * euler_phi(self.N))
        for i, c in self.terms:
            coeffs[i * step] = c
        return CycNumber.from_poly(M, coeffs)


def _qx_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _qx_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _qx_trim(list(a))
    b = _qx_trim(list(b))
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for j, c in enumerate(b):
            a[shift + j] -= f * c
        _qx_trim(a)
    return _qx_trim(q), a


def _qx_sub_mul(a: list, b: list, q: list) -> list:
    """``a - q*b``"""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _qx_trim(out)


def _qx_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """``s`` with ``s*a == 1 (mod m)``, ``m`` irreducible."""
    r0, r1 = _qx_trim(list(m)), _qx_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _qx_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qx_sub_mul(s0, s1, q)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(phase, N: int) -> CycNumber:
    """e(a/b) as an element of Q(zeta_N); requires ``b | N``."""
    ph = CycPhase.of(phase)
    if N % ph.b:
        raise ConductorMismatch(f"denominator {ph.b} does not divide conductor {N}")
    return CycNumber.zeta_power(N, ph.a * (N // ph.b))


def e(x, N: int) -> CycNumber:
    return root_of_unity(x, N)


def scalar_order(z: CycNumber) -> int:
    """Least ``n >= 1`` with ``z^n == 1``.

    Roots of unity in Q(zeta_N) have order dividing lcm(2, N), so the search
    stops there and raises ``NotRootOfUnity`` otherwise.
    """
    if z.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    bound = z.N * (2 // math.gcd(2, z.N))
    w = z
    for n in range(1, bound + 1):
        if w.is_one():
            return n
        w = w * z
    raise NotRootOfUnity(f"{z} has no finite order dividing {bound}")


def random_element(N: int, rng: random.Random, density: float = 1.0, height: int = 5) -> CycNumber:
    coords = []
    for _ in range(euler_phi(N)):
        if rng.random() < density:
            coords.append(Fraction(rng.randint(-height, height), rng.randint(1, height)))
        else:
            coords.append(0)
    return CycNumber.from_coords(N, coords)
