"""Coefficient domains: the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 2147483647
SECOND_PRIME = 1000000007

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int) -> bool:
    """Trial division by small primes, then strong pseudoprime tests.

    The witness set is deterministic for n < 3.3e24.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class DenominatorDivisible(ArithmeticError):
    """A rational coefficient has a denominator divisible by the target prime."""


class RationalField:
    name = "QQ"
    characteristic = 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __call__(self, c) -> int | Fraction:
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("division by zero in QQ")
        return self(Fraction(1) / c)

    def fmt(self, c) -> str:
        return str(c)


QQ = RationalField()


class PrimeField:
    """The field F_p, elements stored as ints in ``range(p)``."""

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __call__(self, c) -> int:
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise DenominatorDivisible(f"denominator of {c} is divisible by {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def inv(self, c: int) -> int:
        if c % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(c, -1, self.p)

    def fmt(self, c) -> str:
        return str(c)


def GF(p: int) -> PrimeField:
    return PrimeField(p)
