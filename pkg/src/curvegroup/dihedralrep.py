"""The 2x2 cyclotomic representation of H(q;k) and the structure of its image.

``build_rep`` gives the matrices A (image of a) and B (image of b) over
Q(zeta_N) with N = 4rkq.  ``closure`` enumerates the matrix group they
generate, and ``extension_structure`` splits it into its scalar subgroup and
its image in PGL_2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclo import CycNumber, e, scalar_order
from .enumeration import CapExceeded
from .fpcore import ALPHA, BETA, IDENTITY, Word, presentation_H

DEFAULT_CLOSURE_CAP = 10_000


@dataclass(frozen=True)
class Mat2:
    a: CycNumber
    b: CycNumber
    c: CycNumber
    d: CycNumber

    @classmethod
    def identity(cls, N: int) -> Mat2:
        one, zero = CycNumber.one(N), CycNumber.zero(N)
        return cls(one, zero, zero, one)

    @classmethod
    def scalar(cls, z: CycNumber) -> Mat2:
        zero = CycNumber.zero(z.N)
        return cls(z, zero, zero, z)

    @property
    def N(self) -> int:
        return self.a.N

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    __mul__ = __matmul__

    def scale(self, z: CycNumber) -> Mat2:
        return Mat2(self.a * z, self.b * z, self.c * z, self.d * z)

    def det(self) -> CycNumber:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mat2:
        dinv = self.det().inv()
        return Mat2(self.d * dinv, -self.b * dinv, -self.c * dinv, self.a * dinv)

    def __pow__(self, n: int) -> Mat2:
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = Mat2.identity(self.N)
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a.is_one()

    def key(self) -> tuple:
        return (self.a.terms, self.b.terms, self.c.terms, self.d.terms)

    def to_json(self) -> list[list[dict]]:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def conductor(q: int, k: int) -> int:
    r = (q - 1) // 2
    return 4 * r * k * q


def build_rep(q: int, k: int) -> tuple[Mat2, Mat2]:
    """A = [[0, e(q/4rk)], [e(q/4rk), 0]], B = diag(e(1/2rk + r/q), e(1/2rk - r/q))."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"representation needs odd q >= 3, got {q}")
    if k < 1:
        raise ValueError("k must be positive")
    r = (q - 1) // 2
    N = conductor(q, k)
    zero = CycNumber.zero(N)
    off = e(Fraction(q, 4 * r * k), N)
    A = Mat2(zero, off, off, zero)
    B = Mat2(
        e(Fraction(1, 2 * r * k) + Fraction(r, q), N),
        zero,
        zero,
        e(Fraction(1, 2 * r * k) - Fraction(r, q), N),
    )
    return A, B


def central_scalar(q: int, k: int) -> CycNumber:
    """c = e(1/2rk)."""
    r = (q - 1) // 2
    return e(Fraction(1, 2 * r * k), conductor(q, k))


@dataclass(frozen=True)
class RelationReport:
    a2_equals_bq: bool
    bqk_equals_c_power: bool
    square_is_scalar_c: bool

    @property
    def all(self) -> bool:
        return self.a2_equals_bq and self.bqk_equals_c_power and self.square_is_scalar_c

    def as_dict(self) -> dict:
        return {
            "A^2 = B^q": self.a2_equals_bq,
            "B^qk = (B^-r A)^2k": self.bqk_equals_c_power,
            "(B^-r A)^2 = cI": self.square_is_scalar_c,
        }


def verify_relations(A: Mat2, B: Mat2, q: int, k: int) -> RelationReport:
    r = (q - 1) // 2
    x = (B ** (-r)) @ A
    x2 = x @ x
    return RelationReport(
        A @ A == B ** q,
        B ** (q * k) == x2 ** k,
        x2 == Mat2.scalar(central_scalar(q, k)),
    )


def rep_eval(w: Word, A: Mat2, B: Mat2) -> Mat2:
    images = {ALPHA: A, BETA: B}
    out = Mat2.identity(A.N)
    for g, n in w.letters:
        out = out @ (images[g] ** n)
    return out


@dataclass
class MatrixGroup:
    """Elements in BFS order from the identity, with one witness word each."""

    generators: tuple[Mat2, ...]
    elements: list[Mat2]
    words: list[Word]
    index: dict[tuple, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m: Mat2) -> bool:
        return m.key() in self.index

    def position(self, m: Mat2) -> int:
        return self.index[m.key()]


def closure(generators: Sequence[Mat2], cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Breadth-first closure under the generators and their inverses.

    Generator ``i`` is recorded in witness words as letter ``i`` (so for
    ``(A, B)`` the words are words in a, b).
    """
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    moves: list[tuple[Mat2, int, int]] = []
    for i, g in enumerate(gens):
        moves.append((g, i, 1))
        moves.append((g.inverse(), i, -1))
    I = Mat2.identity(gens[0].N)
    elements, words = [I], [IDENTITY]
    index = {I.key(): 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        for m, g, s in moves:
            y = x @ m
            kk = y.key()
            if kk in index:
                continue
            if len(elements) >= cap:
                raise CapExceeded(cap, len(elements))
            index[kk] = len(elements)
            elements.append(y)
            words.append(words[i] * Word.gen(g, s))
            queue.append(len(elements) - 1)
    return MatrixGroup(gens, elements, words, index)


@dataclass(frozen=True)
class ExtensionReport:
    order: int
    scalar_order: int
    pgl_order: int
    pgl_dihedral: bool
    scalar_central: bool
    c_order: int
    scalars_generated_by_c: bool

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "scalar_subgroup_order": self.scalar_order,
            "pgl_image_order": self.pgl_order,
            "pgl_image_dihedral": self.pgl_dihedral,
            "scalar_subgroup_central": self.scalar_central,
            "c_order": self.c_order,
            "scalars_generated_by_c": self.scalars_generated_by_c,
        }


def _quotient_by_scalars(G: MatrixGroup, scalars: list[Mat2]) -> tuple[list[int], list[int]]:
    """Partition G into cosets of its scalar subgroup.

    Returns ``(class_of, reps)``: class id of each element, and the element
    index of each class representative (the earliest in BFS order).
    """
    class_of = [-1] * len(G)
    reps = []
    for i, g in enumerate(G.elements):
        if class_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        for z in scalars:
            class_of[G.position(g.scale(z.a))] = cid
    return class_of, reps


def is_dihedral(order: int, mul, identity: int, q: int) -> bool:
    """Search for s, t with s^2 = t^q = 1, t of order q, s outside <t>, s t s^-1 = t^-1.

    ``mul(x, y)`` multiplies class ids.  Together with ``order == 2q`` such a pair
    exhibits the group as D_q.
    """
    if order != 2 * q:
        return False

    def pw(x, n):
        y = identity
        for _ in range(n):
            y = mul(y, x)
        return y

    def elt_order(x):
        y, n = x, 1
        while y != identity:
            y = mul(y, x)
            n += 1
        return n

    for t in range(order):
        if elt_order(t) != q:
            continue
        cyc = {pw(t, i) for i in range(q)}
        t_inv = pw(t, q - 1)
        for s in range(order):
            if s in cyc or mul(s, s) != identity:
                continue
            # s = s^-1
            if mul(mul(s, t), s) == t_inv:
                return True
    return False


def extension_structure(G: MatrixGroup, q: int, k: int) -> ExtensionReport:
    scalars = [g for g in G.elements if g.is_scalar()]
    central = all((z @ g) == (g @ z) for z in scalars for g in G.generators)
    class_of, reps = _quotient_by_scalars(G, scalars)

    def mul(x, y):
        return class_of[G.position(G.elements[reps[x]] @ G.elements[reps[y]])]

    dihedral = is_dihedral(len(reps), mul, class_of[0], q)
    c = central_scalar(q, k)
    c_ord = scalar_order(c)
    generated = {Mat2.scalar(c ** i).key() for i in range(c_ord)}
    return ExtensionReport(
        order=len(G),
        scalar_order=len(scalars),
        pgl_order=len(reps),
        pgl_dihedral=dihedral,
        scalar_central=central,
        c_order=c_ord,
        scalars_generated_by_c=generated == {z.key() for z in scalars},
    )


def relators_map_to_identity(q: int, k: int, A: Mat2 | None = None, B: Mat2 | None = None) -> bool:
    if A is None or B is None:
        A, B = build_rep(q, k)
    return all(rep_eval(w, A, B).is_identity() for w in presentation_H(q, k).relators)


@dataclass(frozen=True)
class NormalFormCoverage:
    beta_order: int
    injective: bool
    covers: bool


def normal_form_coverage(G: MatrixGroup, A: Mat2, B: Mat2) -> NormalFormCoverage:
    """Check whether ``(M, N) -> A^M B^N`` (M in {0,1}, 0 <= N < ord B) is a bijection onto G."""
    ordB = 1
    P = B
    while not P.is_identity():
        P = P @ B
        ordB += 1
    seen = set()
    injective = True
    for M in (0, 1):
        X = A if M else Mat2.identity(A.N)
        for _ in range(ordB):
            kk = X.key()
            if kk in seen:
                injective = False
            seen.add(kk)
            X = X @ B
    return NormalFormCoverage(ordB, injective, seen == set(G.index))


def emit_matrices(G: MatrixGroup, report: ExtensionReport, q: int, k: int) -> dict:
    """JSON document for ``--emit``."""
    A, B = G.generators[:2]
    return {
        "q": q,
        "k": k,
        "conductor": A.N,
        "generators": {"A": A.to_json(), "B": B.to_json()},
        "order": len(G),
        "elements": [
            {"word": str(w), "matrix": m.to_json()} for m, w in zip(G.elements, G.words)
        ],
        "extension": report.as_dict(),
    }
