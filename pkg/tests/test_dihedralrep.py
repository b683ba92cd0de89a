import json
from fractions import Fraction

import pytest

from curvegroup.cyclo import CycNumber, e
from curvegroup.dihedralrep import (
    Mat2,
    build_rep,
    central_scalar,
    closure,
    conductor,
    emit_matrices,
    extension_structure,
    is_dihedral,
    normal_form_coverage,
    relators_map_to_identity,
    rep_eval,
    verify_relations,
)
from curvegroup.enumeration import CapExceeded
from curvegroup.fpcore import IDENTITY, parse_word

GRID = [(q, k) for q in (3, 5, 7, 9) for k in (1, 2, 3)]


def test_build_rep_3_1():
    A, B = build_rep(3, 1)
    N = conductor(3, 1)
    assert N == 12
    zero = CycNumber.zero(N)
    assert A == Mat2(zero, e(Fraction(3, 4), N), e(Fraction(3, 4), N), zero)
    assert B == Mat2(e(Fraction(5, 6), N), zero, zero, e(Fraction(1, 6), N))
    minus_I = Mat2.scalar(CycNumber.from_rational(N, -1))
    assert A @ A == minus_I
    x = B.inverse() @ A
    assert x @ x == minus_I
    with pytest.raises(ValueError):
        build_rep(4, 1)


@pytest.mark.parametrize("q,k", [(3, 1), (5, 2)] + GRID)
def test_relations_hold(q, k):
    A, B = build_rep(q, k)
    assert verify_relations(A, B, q, k).all
    assert relators_map_to_identity(q, k, A, B)


def test_tampered_matrix_fails_first_relation():
    A, B = build_rep(3, 1)
    bad = Mat2(A.a, -A.b, A.c, A.d)
    rep = verify_relations(bad, B, 3, 1)
    assert not rep.a2_equals_bq
    assert not rep.all


def test_rep_eval_examples():
    A, B = build_rep(3, 1)
    assert rep_eval(IDENTITY, A, B).is_identity()
    assert rep_eval(parse_word("a^2"), A, B) == Mat2.scalar(CycNumber.from_rational(12, -1))
    assert rep_eval(parse_word("b^3") * parse_word("b^-1 a") ** -2, A, B).is_identity()


def test_closure_small():
    I = Mat2.identity(12)
    assert len(closure([I])) == 1
    A, B = build_rep(3, 1)
    assert len(closure([A, B])) == 12
    with pytest.raises(CapExceeded):
        closure([A, B], cap=5)


@pytest.mark.parametrize("q,k", GRID)
def test_extension_grid(q, k):
    A, B = build_rep(q, k)
    G = closure([A, B])
    assert len(G) == 2 * q * (q - 1) * k
    ext = extension_structure(G, q, k)
    assert ext.scalar_order == k * (q - 1) == ext.c_order
    assert ext.scalar_central and ext.scalars_generated_by_c
    assert ext.pgl_order == 2 * q and ext.pgl_dihedral


def test_closure_witness_words():
    A, B = build_rep(5, 1)
    G = closure([A, B])
    for m, w in zip(G.elements, G.words):
        assert rep_eval(w, A, B) == m


def test_central_scalar_order():
    from curvegroup.cyclo import scalar_order

    for q, k in GRID:
        assert scalar_order(central_scalar(q, k)) == k * (q - 1)


def test_is_dihedral_rejects_cyclic():
    # Z/6 under addition is not D_3
    assert not is_dihedral(6, lambda x, y: (x + y) % 6, 0, 3)
    # D_3 as permutations of {0,1,2}
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    compose = lambda i, j: perms.index(tuple(perms[i][perms[j][x]] for x in range(3)))  # noqa: E731
    assert is_dihedral(6, compose, 0, 3)


@pytest.mark.parametrize("q,k", GRID)
def test_normal_form_completeness(q, k):
    A, B = build_rep(q, k)
    G = closure([A, B])
    cov = normal_form_coverage(G, A, B)
    assert cov.injective
    # tested, not assumed: coverage holds exactly when 2 ord(B) = |G|
    assert cov.covers == (2 * cov.beta_order == len(G))


def test_emit_document(tmp_path):
    A, B = build_rep(3, 1)
    G = closure([A, B])
    doc = emit_matrices(G, extension_structure(G, 3, 1), 3, 1)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    back = json.loads(path.read_text())
    assert back["order"] == len(back["elements"]) == 12
    assert back["extension"]["pgl_image_order"] == 6
    for entry in back["elements"]:
        m = entry["matrix"]
        assert len(m) == 2 and len(m[0]) == 2
        assert CycNumber.from_json(m[0][0]).N == 12
