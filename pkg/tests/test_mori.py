import random
from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from toricprim import (all_primitive_relations, anticanonical_class, classify_relation_type,
                       fano_index, is_extremal, is_fano, mori_cone_generators, picard_rank,
                       primitive_relation, product_fan, projective_space_fan)
from toricprim.fan import FanError
from toricprim.mori import NotFanoError, contraction_violations, extremal_relations
from toricprim.relations import PrimitiveRelation

from conftest import fans, hirzebruch, random_unimodular, surfaces, transformed


def index_oracle(fan):
    """gcd of <u, x> - 1 over all rays, with u the all-ones functional on one smooth cone.

    -K = mH iff some u in M has <u, x> = 1 mod m on every ray; on a
    basis cone u is then unique mod m.
    """
    import sympy
    cone = min(fan.max_cones)
    basis = sympy.Matrix([list(fan.rays[i]) for i in cone])
    u = basis.solve(sympy.Matrix([1] * fan.dim))
    vals = [int(sum(a * b for a, b in zip(u, r))) - 1 for r in fan.rays]
    return reduce(gcd, vals, 0)


def extremal_oracle(fan, rel):
    """Float LP: is r(P) a nonnegative combination of the non-proportional classes?"""
    r = rel.relation_class
    others = []
    for c in mori_cone_generators(fan):
        ratios = {a / b for a, b in zip(c, r) if b} if all((a == 0) == (b == 0) for a, b in zip(c, r)) else set()
        if len(ratios) == 1 and ratios.pop() > 0:
            continue
        others.append(c)
    if not others:
        return True
    a_eq = [list(col) for col in zip(*others)]
    res = linprog([0] * len(others), A_eq=a_eq, b_eq=list(r), bounds=[(0, None)] * len(others),
                  method="highs")
    return res.status != 0


def test_p2_generators(p2):
    assert mori_cone_generators(p2) == [(1, 1, 1)]


def test_dp7_generator(dp7):
    gens = mori_cone_generators(dp7)
    assert len(gens) == 5
    assert (1, -1, 1, 0, 0) in gens


def test_p1xp1_extremal():
    fan = product_fan(projective_space_fan(1), projective_space_fan(1))
    assert is_extremal(fan, [0, 1]) and is_extremal(fan, [2, 3])


def test_dp7_extremality(dp7):
    r14 = primitive_relation(dp7, [0, 3]).relation_class
    r13 = primitive_relation(dp7, [0, 2]).relation_class
    r24 = primitive_relation(dp7, [1, 3]).relation_class
    assert r14 == tuple(a + b for a, b in zip(r13, r24))
    assert not is_extremal(dp7, [0, 3])
    assert is_extremal(dp7, [0, 2])
    flags = {r.collection: is_extremal(dp7, r.collection) for r in all_primitive_relations(dp7)}
    assert flags == {(0, 2): True, (0, 3): False, (1, 3): True, (1, 4): True, (2, 4): False}


def test_fano_examples(p2, dp7):
    assert is_fano(p2) and is_fano(dp7)
    assert not is_fano(hirzebruch(2))
    assert is_fano(hirzebruch(1)) and not is_fano(hirzebruch(3))


def test_anticanonical_examples(p2):
    assert anticanonical_class(p2).coords == (3,)
    assert anticanonical_class(projective_space_fan(1)).coords == (2,)
    p1 = projective_space_fan(1)
    assert anticanonical_class(product_fan(p1, p1)).coords == (2, 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_projective_space_index(d):
    fan = projective_space_fan(d)
    assert fano_index(fan) == d + 1 == index_oracle(fan)
    assert picard_rank(fan) == 1


def test_index_examples(catalog):
    assert fano_index(catalog[1].fan) == 2
    assert fano_index(catalog[9].fan) == 2
    assert picard_rank(catalog[9].fan) == 5


def test_non_fano_index_raises():
    with pytest.raises(NotFanoError):
        fano_index(hirzebruch(2))


def test_picard_rank_requires_complete():
    from toricprim import make_fan
    with pytest.raises(FanError):
        picard_rank(make_fan(2, [[1, 0], [0, 1]], [[0, 1]]))


def _rel(m, coeffs):
    n = m + len(coeffs)
    return PrimitiveRelation(tuple(range(m)), tuple(range(m, n)), tuple(coeffs),
                             m - sum(coeffs), (0,) * n)


@pytest.mark.parametrize("m, coeffs, tag", [
    (6, (), "T1"), (5, (1,), "T2"), (5, (3,), "T3"), (4, (), "T4"), (4, (2,), "T5"),
    (4, (1, 1), "T6"), (3, (1,), "T7"), (2, (), "T8"), (3, (2,), "OTHER"), (2, (1,), "OTHER"),
])
def test_relation_types(m, coeffs, tag, p2):
    assert str(classify_relation_type(p2, _rel(m, coeffs))) == tag


def test_index_matches_oracle_on_catalog(catalog):
    for e in catalog:
        assert fano_index(e.fan) == index_oracle(e.fan) == 2


@given(surfaces())
@settings(max_examples=50, deadline=None)
def test_surfaces_index_and_extremality(fan):
    if is_fano(fan):
        idx = fano_index(fan)
        assert idx == index_oracle(fan)
        assert all(r.degree % idx == 0 for r in all_primitive_relations(fan))
    for rel in all_primitive_relations(fan):
        assert is_extremal(fan, rel.collection) == extremal_oracle(fan, rel)


@given(fans(), st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_invariance(fan, seed):
    rng = random.Random(seed)
    perm = list(range(fan.n_rays))
    rng.shuffle(perm)
    image = transformed(fan, random_unimodular(rng, fan.dim), perm)
    # ray perm[k] of fan is ray k of image
    back = {k: perm[k] for k in range(fan.n_rays)}
    ours = {frozenset(r.collection): (is_extremal(fan, r.collection), r.degree)
            for r in all_primitive_relations(fan)}
    theirs = {frozenset(back[i] for i in r.collection): (is_extremal(image, r.collection), r.degree)
              for r in all_primitive_relations(image)}
    assert ours == theirs
    assert is_fano(fan) == is_fano(image)
    if is_fano(fan):
        assert fano_index(fan) == fano_index(image) == index_oracle(fan)
    assert picard_rank(fan) == picard_rank(image)


def test_catalog_extremal_properties(catalog):
    for e in catalog:
        ext = extremal_relations(e.fan)
        assert ext
        for rel in ext:
            assert extremal_oracle(e.fan, rel)
            assert str(classify_relation_type(e.fan, rel)) in {f"T{k}" for k in range(2, 9)}
            assert rel.order + len(rel.sigma) <= 6
        assert contraction_violations(e.fan) == []
        assert contraction_violations(e.fan, literal=True) == []
        assert all(r.degree % 2 == 0 for r in all_primitive_relations(e.fan))


@given(surfaces())
@settings(max_examples=30, deadline=None)
def test_contraction_condition_on_surfaces(fan):
    assert contraction_violations(fan) == []


def test_literal_contraction_variant_fails_on_dp7(dp7):
    assert contraction_violations(dp7) == []
    # P = {x1, x3}, P' = {x1, x4}: {x3} with sigma(P) = {x2} is a cone
    assert ((0, 2), (0, 3)) in contraction_violations(dp7, literal=True)
