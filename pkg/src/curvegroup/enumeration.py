"""Todd-Coxeter coset enumeration over the trivial subgroup, and Smith normal form.

Columns of the coset table are indexed ``2g`` for generator ``g`` and ``2g+1``
for its inverse, so ``col ^ 1`` is the inverse column.  Coset ids are handed
out first-touch and never reused, which makes runs reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fpcore import Presentation

DEFAULT_COSET_CAP = 1_000_000
STRATEGIES = ("felsch", "hlt")


class CapExceeded(RuntimeError):
    """Raised when an enumeration would need more live cosets than allowed."""

    def __init__(self, cap: int, defined: int):
        super().__init__(f"coset cap {cap} exceeded after {defined} definitions")
        self.cap = cap
        self.defined = defined


class TableAuditError(AssertionError):
    pass


def _relator_columns(pres: Presentation) -> list[list[int]]:
    rels = []
    for w in pres.relators:
        cols = [2 * g + (0 if e > 0 else 1) for g, e in w.expand()]
        if cols:
            rels.append(cols)
    return rels


class CosetTable:
    """Mutable coset table with coincidence handling by union-find."""

    def __init__(self, ngens: int, cap: int):
        self.ncols = 2 * ngens
        self.cap = cap
        self.rows: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.defined = 1
        self._queue: list[int] = []
        self.deductions: list[tuple[int, int]] = []

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise CapExceeded(self.cap, self.defined)
        d = len(self.rows)
        self.rows.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.defined += 1
        self.rows[c][x] = d
        self.rows[d][x ^ 1] = c
        self.deductions.append((c, x))
        return d

    def _merge(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        self._queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        self._queue = []
        self._merge(a, b)
        i = 0
        while i < len(self._queue):
            g = self._queue[i]
            i += 1
            row = self.rows[g]
            for x in range(self.ncols):
                d = row[x]
                if d is None:
                    continue
                row[x] = None
                if self.rows[d][x ^ 1] == g:
                    self.rows[d][x ^ 1] = None
                mu, nu = self.find(g), self.find(d)
                if self.rows[mu][x] is not None:
                    self._merge(nu, self.rows[mu][x])
                elif self.rows[nu][x ^ 1] is not None:
                    self._merge(mu, self.rows[nu][x ^ 1])
                else:
                    self.rows[mu][x] = nu
                    self.rows[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def scan(self, c: int, rel: list[int], fill: bool) -> None:
        """Trace ``rel`` from ``c`` both ways; deduce or merge, defining new cosets if ``fill``."""
        rows = self.rows
        f = b = c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and rows[f][rel[i]] is not None:
                f = rows[f][rel[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][rel[j] ^ 1] is not None:
                b = rows[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][rel[i]] = b
                rows[b][rel[i] ^ 1] = f
                self.deductions.append((f, rel[i]))
                return
            if not fill:
                return
            self.define(f, rel[i])

    def compact(self) -> list[list[int]]:
        """Renumber live cosets 0..n-1 in id order; the table must be complete."""
        live = [c for c in range(len(self.rows)) if self.is_live(c)]
        index = {c: i for i, c in enumerate(live)}
        out = []
        for c in live:
            row = self.rows[c]
            if any(d is None for d in row):
                raise TableAuditError(f"coset {c} has undefined entries")
            out.append([index[self.find(d)] for d in row])
        return out


def audit_table(table: list[list[int]], relators: list[list[int]]) -> None:
    """Closure, inverse consistency and relator tracing from every coset."""
    n = len(table)
    for c, row in enumerate(table):
        for x, d in enumerate(row):
            if not 0 <= d < n:
                raise TableAuditError(f"entry ({c},{x}) out of range")
            if table[d][x ^ 1] != c:
                raise TableAuditError(f"entry ({c},{x}) -> {d} lacks its inverse")
    for rel in relators:
        for c in range(n):
            d = c
            for x in rel:
                d = table[d][x]
            if d != c:
                raise TableAuditError(f"relator fails to close at coset {c}")


@dataclass
class EnumerationResult:
    order: int
    cosets_defined: int
    strategy: str
    table: list[list[int]]

    def as_dict(self, group: str) -> dict:
        return {
            "group": group,
            "order": self.order,
            "cosets_defined": self.cosets_defined,
            "strategy": self.strategy,
        }


def _run_hlt(ct: CosetTable, rels: list[list[int]]) -> None:
    c = 0
    while c < len(ct.rows):
        for rel in rels:
            if not ct.is_live(c):
                break
            ct.scan(c, rel, fill=True)
        if ct.is_live(c):
            for x in range(ct.ncols):
                if ct.rows[c][x] is None:
                    ct.define(c, x)
        ct.deductions.clear()  # HLT rescans rows instead of processing deductions
        c += 1


def _run_felsch(ct: CosetTable, rels: list[list[int]]) -> None:
    # every cyclic conjugate of every relator and its inverse, keyed by first column
    by_first: list[list[list[int]]] = [[] for _ in range(ct.ncols)]
    seen = set()
    for rel in rels:
        inv = [x ^ 1 for x in reversed(rel)]
        for word in (rel, inv):
            for s in range(len(word)):
                rot = tuple(word[s:] + word[:s])
                if rot not in seen:
                    seen.add(rot)
                    by_first[rot[0]].append(list(rot))

    def process():
        while ct.deductions:
            c, x = ct.deductions.pop()
            if not ct.is_live(c):
                continue
            for rel in by_first[x]:
                if not ct.is_live(c):
                    break
                ct.scan(c, rel, fill=False)
            d = ct.rows[c][x]
            if d is not None and ct.is_live(d):
                for rel in by_first[x ^ 1]:
                    if not ct.is_live(d):
                        break
                    ct.scan(d, rel, fill=False)

    for rel in rels:
        ct.scan(0, rel, fill=False)
    process()
    c = 0
    while c < len(ct.rows):
        for x in range(ct.ncols):
            if ct.is_live(c) and ct.rows[c][x] is None:
                ct.define(c, x)
                process()
        c += 1


def todd_coxeter(
    pres: Presentation,
    coset_cap: int = DEFAULT_COSET_CAP,
    strategy: str = "felsch",
) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup; the number of cosets is the group order.

    Raises ``CapExceeded`` if more than ``coset_cap`` cosets are live at once.
    The finished table is audited before the order is returned.
    """
    if coset_cap < 1:
        raise ValueError("coset_cap must be positive")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    rels = _relator_columns(pres)
    ct = CosetTable(pres.ngens, coset_cap)
    if strategy == "hlt":
        _run_hlt(ct, rels)
    else:
        _run_felsch(ct, rels)
    table = ct.compact()
    audit_table(table, rels)
    return EnumerationResult(len(table), ct.defined, strategy, table)


# -- Smith normal form ----------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: list[list[int]]) -> tuple[list[int], int, list[list[int]], list[list[int]]]:
    """Return ``(diagonal, rank, U, V)`` with ``U M V = diag`` and ``U, V`` unimodular.

    The diagonal has ``min(rows, cols)`` nonnegative entries, each dividing the next
    among the nonzero ones, zeros last.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ValueError("ragged matrix")
    S = [[int(v) for v in r] for r in M]
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in S:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for R in S:
            R[dst] += f * R[src]
        for R in V:
            R[dst] += f * R[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(S[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    diag = [S[i][i] for i in range(min(rows, cols))]
    rank = sum(1 for d in diag if d)
    return diag, rank, U, V


def exponent_matrix(pres: Presentation) -> list[list[int]]:
    return [[w.exponent_sum(g) for g in range(pres.ngens)] for w in pres.relators]


@dataclass(frozen=True)
class Abelianization:
    invariants: tuple[int, ...]
    free_rank: int

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.invariants) if self.is_finite else None

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariants) + self.free_rank <= 1

    def as_dict(self) -> dict:
        return {"invariants": list(self.invariants), "free_rank": self.free_rank}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


def abelianization(pres: Presentation) -> Abelianization:
    M = exponent_matrix(pres)
    if not M:
        return Abelianization((), pres.ngens)
    diag, rank, _, _ = smith_normal_form(M)
    return Abelianization(tuple(d for d in diag if d > 1), pres.ngens - rank)
