"""Free-group words on two letters and the presentation family of the curve complements.

Words are run-length encoded: a tuple of ``(generator, exponent)`` pairs, kept
freely reduced at all times.  Generator 0 is ``a`` (alpha), generator 1 is
``b`` (beta).  Presentations with more generators are supported by the word
machinery but only the two-letter text format is defined.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

ALPHA = 0
BETA = 1
_NAMES = "ab"


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> Word:
        return cls(((g, e),))

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, n: int) -> Word:
        return power(self, n)

    def __invert__(self) -> Word:
        return invert(self)

    def __len__(self) -> int:
        """Length as a word in the letters ``g^{+-1}``."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def expand(self) -> list[tuple[int, int]]:
        """Unit-length letters ``(g, +-1)`` in order."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def exponent_sum(self, g: int) -> int:
        return sum(e for h, e in self.letters if h == g)


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in letters:
        g, e = int(g), int(e)
        if g < 0:
            raise ValueError(f"negative generator index {g}")
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


IDENTITY = Word()
A = Word.gen(ALPHA)
B = Word.gen(BETA)


def free_reduce(w: Word | Sequence[tuple[int, int]]) -> Word:
    if isinstance(w, Word):
        return Word(w.letters)
    return Word(tuple(w))


def multiply(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def invert(w: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(w.letters)))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = invert(w), -n
    return Word(w.letters * n)


def commutator(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``, the relator form of ``u v = v u``."""
    return u * v * ~u * ~v


_TOKEN = re.compile(r"^([ab])(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    """Parse ``"b^-1 a b^-1 a"``.  ``""`` and ``"1"`` both denote the identity."""
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad word token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0:
            raise ValueError(f"zero exponent in token {tok!r}")
        letters.append((_NAMES.index(m.group(1)), e))
    w = Word(tuple(letters))
    if w.letters != tuple(letters):
        raise ValueError(f"word {text!r} is not freely reduced")
    return w


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    if any(g > 1 for g, _ in w.letters):
        return " ".join(f"g{g}" + (f"^{e}" if e != 1 else "") for g, e in w.letters)
    return " ".join(_NAMES[g] + (f"^{e}" if e != 1 else "") for g, e in w.letters)


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[Word, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.ngens < 1:
            raise ValueError("a presentation needs at least one generator")
        rels = tuple(r if isinstance(r, Word) else Word(tuple(r)) for r in self.relators)
        for r in rels:
            for g, _ in r.letters:
                if g >= self.ngens:
                    raise ValueError(f"generator {g} out of range in relator {r}")
        object.__setattr__(self, "relators", rels)

    def __str__(self) -> str:
        gens = ",".join(_NAMES[i] if self.ngens <= 2 else f"g{i}" for i in range(self.ngens))
        return f"<{gens} | " + ", ".join(map(str, self.relators)) + ">"


def bezout(p: int, q: int) -> tuple[int, int]:
    """Return ``(mu, nu)`` with ``mu*p + nu*q == 1`` and ``0 <= nu < p``."""
    if p < 2 or q < 2:
        raise ValueError("p and q must exceed 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    nu = pow(q, -1, p)
    mu, rem = divmod(1 - nu * q, p)
    assert rem == 0
    return mu, nu


@dataclass(frozen=True)
class GroupParams:
    """Integer data ``(p, q, m, k, l)`` of a curve and its group."""

    p: int
    q: int
    m: int
    k: int
    l: int

    def __post_init__(self):
        if min(self.p, self.q, self.m) < 2:
            raise ValueError("p, q, m must be > 1")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be positive")
        if self.p * self.l < self.m * self.k or self.q * self.l < self.m * self.k:
            raise ValueError("need p*l >= m*k and q*l >= m*k")

    @classmethod
    def dihedral(cls, q: int, k: int, l: int | None = None) -> GroupParams:
        if q < 3 or q % 2 == 0:
            raise ValueError(f"dihedral case needs odd q >= 3, got {q}")
        return cls(2, q, 2, k, k if l is None else l)

    @property
    def is_dihedral(self) -> bool:
        return self.p == 2 and self.m == 2

    @property
    def r(self) -> int:
        if self.q % 2 == 0:
            raise ValueError("r is defined only for odd q")
        return (self.q - 1) // 2

    @property
    def mu_nu(self) -> tuple[int, int]:
        return bezout(self.p, self.q)

    @property
    def weights(self) -> tuple[int, int, int, int]:
        """Weights of ``(s, t, x, y)``."""
        p, q, m, k, l = self.p, self.q, self.m, self.k, self.l
        return (k, l, q * l - m * k, p * l - m * k)

    @property
    def degree(self) -> int:
        return self.p * self.q * self.l - self.m * self.k


def a0_word(p: int, q: int) -> Word:
    mu, nu = bezout(p, q)
    return Word(((BETA, mu), (ALPHA, nu)))


def presentation_G(p: int, q: int) -> Presentation:
    bezout(p, q)  # validates
    return Presentation(2, (Word(((ALPHA, p), (BETA, -q))),), name=f"G<{p},{q}>")


def presentation_pi1_U(params: GroupParams) -> Presentation:
    a0m = a0_word(params.p, params.q) ** params.m
    rels = (
        Word(((ALPHA, params.p), (BETA, -params.q))),
        commutator(A, a0m),
        commutator(B, a0m),
    )
    return Presentation(2, rels, name=f"pi1(U){_ptag(params)}")


def rho_image(params: GroupParams) -> Word:
    """Image of the circle-action generator: ``b^{ql} a0^{-mk}``."""
    return B ** (params.q * params.l) * a0_word(params.p, params.q) ** (-params.m * params.k)


def presentation_complement(params: GroupParams) -> Presentation:
    base = presentation_pi1_U(params)
    return Presentation(2, base.relators + (rho_image(params),), name=f"pi1(P2-C){_ptag(params)}")


def _ptag(params: GroupParams) -> str:
    return f"(p={params.p},q={params.q},m={params.m},k={params.k},l={params.l})"


def presentation_H(q: int, k: int) -> Presentation:
    if q < 3 or q % 2 == 0:
        raise ValueError(f"H(q;k) needs odd q >= 3, got {q}")
    if k < 1:
        raise ValueError("k must be positive")
    r = (q - 1) // 2
    c = Word(((BETA, -r), (ALPHA, 1)))
    c2 = c ** 2
    rels = (
        Word(((ALPHA, 2), (BETA, -q))),
        B ** (q * k) * c ** (-2 * k),
        commutator(A, c2),
        commutator(B, c2),
    )
    return Presentation(2, rels, name=f"H({q};{k})")


def relator_set(pres: Presentation) -> frozenset[Word]:
    return frozenset(pres.relators)


def normal_form(w: Word, q: int) -> tuple[int, int]:
    """Rewrite ``w`` as ``a^M b^N`` with ``M in {0, 1}``.

    Uses ``b^n a = a^(2n+1) b^(2nr)``, ``b^n a^-1 = a^(2n-1) b^(2nr)`` and the
    central relation ``a^2 = b^q``.  These rules hold in H(q;1), whose relations
    give ``b^r a = a b^-r``.  ``N`` is returned unreduced.
    """
    if q < 3 or q % 2 == 0:
        raise ValueError(f"normal form needs odd q >= 3, got {q}")
    r = (q - 1) // 2
    M, N = 0, 0
    for g, e in w.letters:
        if g == BETA:
            N += e
            continue
        if g != ALPHA:
            raise ValueError("normal form is defined on words in a, b")
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            # a^M b^N a^step = a^(M + 2N + step) b^(2Nr)
            E = M + 2 * N + step
            half, M = divmod(E, 2)
            N = q * half + 2 * N * r
    return M, N
