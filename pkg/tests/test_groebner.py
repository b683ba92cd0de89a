import random
from itertools import permutations

import pytest

from curvegroup.curvelab import CurveInstance, singularity_audit
from curvegroup.polycore import (
    GF,
    INFINITE,
    MultiPoly,
    groebner,
    minimal_polynomial,
    parse_poly,
    quotient_dimension,
    reduce,
    standard_monomials,
)
from curvegroup.polycore.univariate import degree, squarefree_part

P = 32003
F = GF(P)
XY = ("x", "y")


def poly(text, names=XY):
    return parse_poly(text, names, F)


def test_examples():
    basis = groebner([poly("x^2"), poly("y^2")])
    assert basis == [poly("x^2"), poly("y^2")]
    assert quotient_dimension(basis) == 4
    basis = groebner([poly("x^2 - y"), poly("y^2")])
    assert set(standard_monomials(basis)) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    unit = groebner([poly("x"), poly("x - 1")])
    assert unit == [MultiPoly.const(XY, 1, F)]
    assert quotient_dimension(unit) == 0
    assert quotient_dimension(groebner([poly("x")]), 2) == INFINITE


def test_rejects_rationals():
    with pytest.raises(ValueError):
        groebner([parse_poly("x", XY)])


def random_dense(rng, names, d):
    """Dense polynomial of total degree d (all monomials up to d)."""
    terms = {}
    n = len(names)

    def rec(prefix, left):
        if len(prefix) == n:
            terms[tuple(prefix)] = rng.randrange(P)
            return
        for a in range(left + 1):
            rec(prefix + [a], left - a)

    rec([], d)
    return MultiPoly(names, terms, F)


def random_ideal(seed):
    rng = random.Random(seed)
    if seed % 3 == 0:
        names = ("x", "y", "z")
        return [random_dense(rng, names, 2) for _ in range(3)]
    degs = [rng.choice([2, 3]) for _ in range(rng.choice([2, 3]))]
    return [random_dense(rng, XY, d) for d in degs]


def macaulay_codimension(gens, D):
    """dim k[x]_{<=D} / span{m g : deg(m g) <= D}, by Gaussian elimination mod P."""
    n = gens[0].nvars
    monos = []

    def rec(prefix, left):
        if len(prefix) == n:
            monos.append(tuple(prefix))
            return
        for a in range(left + 1):
            rec(prefix + [a], left - a)

    rec([], D)
    pivots: dict[tuple, dict] = {}
    for g in gens:
        dg = g.total_degree()
        for m in monos:
            if sum(m) + dg > D:
                continue
            row = {tuple(a + b for a, b in zip(e, m)): c for e, c in g.terms.items()}
            while row:
                lead = max(row)
                if lead not in pivots:
                    inv = pow(row[lead], -1, P)
                    pivots[lead] = {e: c * inv % P for e, c in row.items()}
                    break
                c = row[lead]
                for e, a in pivots[lead].items():
                    v = (row.get(e, 0) - c * a) % P
                    if v:
                        row[e] = v
                    else:
                        row.pop(e, None)
    return len(monos) - len(pivots)


@pytest.mark.parametrize("seed", range(12))
def test_quotient_dimension_matches_macaulay(seed):
    gens = random_ideal(seed)
    dim = quotient_dimension(groebner(gens))
    assert dim != INFINITE
    # the truncated codimension settles at the true dimension for large D
    D = 12 if gens[0].nvars == 2 else 8
    assert macaulay_codimension(gens, D) == dim


@pytest.mark.parametrize("seed", range(6))
def test_basis_independent_of_generator_order(seed):
    gens = random_ideal(seed)
    ref = groebner(gens)
    for perm in permutations(gens):
        assert groebner(list(perm)) == ref


@pytest.mark.parametrize("seed", range(6))
def test_generators_reduce_to_zero(seed):
    gens = random_ideal(seed)
    basis = groebner(gens)
    for g in gens:
        assert reduce(g, basis).is_zero()
    # reduced: no basis term is divisible by another leading monomial
    lms = [b.leading_term()[0] for b in basis]
    for b in basis:
        for e in b.terms:
            for lm in lms:
                if lm != b.leading_term()[0]:
                    assert not all(x >= y for x, y in zip(e, lm))


def test_against_sympy():
    sympy = pytest.importorskip("sympy")
    x, y = sympy.symbols("x y")
    for seed in (1, 2, 4, 5):
        gens = random_ideal(seed)
        exprs = [
            sum(c * x ** e[0] * y ** e[1] for e, c in g.terms.items()) for g in gens
        ]
        ref = sympy.groebner(exprs, x, y, modulus=P, order="grevlex")
        ref_lms = sorted(sympy.Poly(p, x, y).monoms(order="grevlex")[0] for p in ref.exprs)
        ours = sorted(b.leading_term()[0] for b in groebner(gens))
        assert ours == ref_lms


def test_minimal_polynomial():
    # I = (x - y^2, y^3 - 2): y satisfies y^3 - 2, x satisfies x^3 - 4
    basis = groebner([poly("x - y^2"), poly("y^3 - 2")])
    assert minimal_polynomial(basis, 1) == [F(-2), 0, 0, 1]
    assert minimal_polynomial(basis, 0) == [F(-4), 0, 0, 1]
    # a double point: (x, y^2) has minimal polynomial y^2 with squarefree part y
    basis = groebner([poly("x"), poly("y^2")])
    mp = minimal_polynomial(basis, 1)
    assert mp == [0, 0, 1]
    assert degree(squarefree_part(mp, F)) == 1


@pytest.mark.parametrize(
    "text",
    [
        "y^2*z - x^3 - x^2*z",  # nodal cubic
        "x^3 + y^3 - x*y*z",  # folium: node at the origin
    ],
)
def test_nodes_have_tjurina_one(text):
    curve = CurveInstance(parse_poly(text, ("x", "y", "z")), 3, provenance="nodal cubic")
    audit = singularity_audit(curve, P, chart_seed=3)
    assert audit.N == audit.T == 1


def test_three_nodes():
    # xyz = 0: three lines, three nodes
    curve = CurveInstance(parse_poly("x*y*z", ("x", "y", "z")), 3, provenance="triangle")
    audit = singularity_audit(curve, P, chart_seed=1)
    assert audit.N == audit.T == 3
