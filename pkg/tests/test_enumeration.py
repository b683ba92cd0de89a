import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvegroup.enumeration import (
    CapExceeded,
    TableAuditError,
    abelianization,
    audit_table,
    exponent_matrix,
    smith_normal_form,
    todd_coxeter,
)
from curvegroup.fpcore import GroupParams, Presentation, parse_word, presentation_complement, presentation_G, presentation_H

GRID = [(q, k) for q in (3, 5, 7, 9) for k in (1, 2, 3)]


def pres(ngens, *rels):
    return Presentation(ngens, tuple(parse_word(r) for r in rels))


@pytest.mark.parametrize("strategy", ["felsch", "hlt"])
def test_small_groups(strategy):
    assert todd_coxeter(pres(1, "a"), strategy=strategy).order == 1
    assert todd_coxeter(pres(1, "a^7"), strategy=strategy).order == 7
    # S3 = <a, b | a^2, b^3, (ab)^2>
    s3 = Presentation(2, (parse_word("a^2"), parse_word("b^3"), parse_word("a b a b")))
    assert todd_coxeter(s3, strategy=strategy).order == 6
    # quaternion group
    q8 = Presentation(2, (parse_word("a^4"), parse_word("a^2 b^-2"), parse_word("b^-1 a b a")))
    assert todd_coxeter(q8, strategy=strategy).order == 8


@pytest.mark.parametrize("q,k", GRID)
def test_order_grid(q, k):
    expected = 2 * q * (q - 1) * k
    felsch = todd_coxeter(presentation_H(q, k), strategy="felsch")
    hlt = todd_coxeter(presentation_H(q, k), strategy="hlt")
    assert felsch.order == hlt.order == expected
    assert todd_coxeter(presentation_complement(GroupParams(2, q, 2, k, k))).order == expected


def test_enumeration_is_deterministic():
    a = todd_coxeter(presentation_H(5, 2))
    b = todd_coxeter(presentation_H(5, 2))
    assert a.table == b.table and a.cosets_defined == b.cosets_defined


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        todd_coxeter(presentation_H(3, 1), coset_cap=5)
    # Z is infinite: no finite cap suffices
    with pytest.raises(CapExceeded):
        todd_coxeter(Presentation(2, (parse_word("a b a^-1 b^-1"),)), coset_cap=500)


def test_bad_arguments():
    with pytest.raises(ValueError):
        todd_coxeter(presentation_H(3, 1), coset_cap=0)
    with pytest.raises(ValueError):
        todd_coxeter(presentation_H(3, 1), strategy="random")


def test_table_audit_catches_corruption():
    res = todd_coxeter(presentation_H(3, 1))
    rels = [[0, 0, 3, 3, 3]]  # a a B B B in column encoding (gen*2 + inverse bit)
    audit_table(res.table, rels)
    bad = [row[:] for row in res.table]
    bad[0][0], bad[1][0] = bad[1][0], bad[0][0]
    with pytest.raises(TableAuditError):
        audit_table(bad, rels)


def test_json_fragment():
    p = presentation_H(3, 1)
    doc = todd_coxeter(p).as_dict(p.name)
    assert set(doc) == {"group", "order", "cosets_defined", "strategy"}
    assert doc["order"] == 12


# -- Smith normal form and abelianization ------------------------------------------


def matmul(X, Y):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*Y)] for row in X]


def det(M):
    n = len(M)
    if n == 0:
        return 1
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1 :] for r in M[1:]]) for j in range(n))


def minors_gcd(M, i):
    rows, cols = len(M), len(M[0])
    g = 0
    for R in combinations(range(rows), i):
        for C in combinations(range(cols), i):
            g = math.gcd(g, det([[M[r][c] for c in C] for r in R]))
    return g


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]])[:2] == ([1, 6], 2)
    assert smith_normal_form([[0, 0], [0, 0]])[:2] == ([0, 0], 0)
    assert smith_normal_form([[2, -3], [2, -5]])[:2] == ([1, 4], 2)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150)
@given(matrices)
def test_snf_remultiplies(M):
    diag, rank, U, V = smith_normal_form(M)
    D = [[diag[i] if i == j else 0 for j in range(len(M[0]))] for i in range(len(M))]
    assert matmul(matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz) and len(nz) == rank
    assert diag[: len(nz)] == nz  # zeros last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-12, 12), min_size=4, max_size=4), min_size=4, max_size=4))
def test_snf_preserves_minor_gcds(M):
    diag, rank, _, _ = smith_normal_form(M)
    prod = 1
    for i in range(1, rank + 1):
        prod *= diag[i - 1]
        assert minors_gcd(M, i) == prod
    for i in range(rank + 1, 5):
        assert minors_gcd(M, i) == 0


def test_abelianization_examples():
    ab = abelianization(presentation_H(3, 1))
    assert ab.invariants == (4,) and ab.free_rank == 0
    assert str(ab) == "Z/4"
    ab = abelianization(presentation_G(2, 3))
    assert ab.invariants == () and ab.free_rank == 1
    assert abelianization(Presentation(2, ())).free_rank == 2
    assert exponent_matrix(presentation_G(2, 3)) == [[2, -3]]


@pytest.mark.parametrize("q,k", GRID)
def test_abelianization_grid(q, k):
    ab = abelianization(presentation_H(q, k))
    assert ab.is_cyclic and ab.order == 2 * (q - 1) * k
