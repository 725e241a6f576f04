from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from toricprim import (catalog_fano5_index2, del_pezzo_degree7, make_fan, product_fan,
                       projective_space_fan, projectivize_split)
from toricprim.constructions import prime_divisor


def hirzebruch(a: int):
    return make_fan(2, [[1, 0], [0, 1], [-1, a], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]])


def random_unimodular(rng: random.Random, d: int, steps: int = 6) -> list[list[int]]:
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    if d == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        q = rng.choice((-2, -1, 1, 2))
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-a for a in m[0]]
    return m


def transformed(fan, matrix, perm=None):
    """Image of *fan* under *matrix*, rays reordered by *perm*."""
    n = fan.n_rays
    perm = list(range(n)) if perm is None else list(perm)
    rays = [[sum(a * b for a, b in zip(row, fan.rays[perm[k]])) for row in matrix]
            for k in range(n)]
    where = {perm[k]: k for k in range(n)}
    cones = [[where[i] for i in c] for c in fan.max_cones]
    return make_fan(fan.dim, rays, cones)


def blow_up_surface(fan, i: int):
    """Insert u_i + u_(i+1) between two cyclically adjacent rays of a 2-d fan."""
    cones = sorted(fan.max_cones)
    a, b = cones[i % len(cones)]
    rays = [list(r) for r in fan.rays] + [[x + y for x, y in zip(fan.rays[a], fan.rays[b])]]
    new = len(rays) - 1
    out = [list(c) for c in fan.max_cones if c != (a, b)] + [[a, new], [new, b]]
    return make_fan(2, rays, out)


SMALL_FANS = {
    "P1": lambda: projective_space_fan(1),
    "P2": lambda: projective_space_fan(2),
    "P3": lambda: projective_space_fan(3),
    "P1xP1": lambda: product_fan(projective_space_fan(1), projective_space_fan(1)),
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "dP7": del_pezzo_degree7,
    "P1xP2": lambda: product_fan(projective_space_fan(1), projective_space_fan(2)),
    "P(O+O(1))/P2": lambda: projectivize_split(projective_space_fan(2),
                                              [prime_divisor(projective_space_fan(2), 0)]),
}


@st.composite
def fans(draw, names=tuple(SMALL_FANS)):
    """A small smooth complete fan in random lattice coordinates and ray order."""
    base = SMALL_FANS[draw(st.sampled_from(names))]()
    rng = random.Random(draw(st.integers(0, 2**32)))
    perm = list(range(base.n_rays))
    rng.shuffle(perm)
    return transformed(base, random_unimodular(rng, base.dim), perm)


@st.composite
def surfaces(draw, max_blowups=4):
    """Iterated toric blow-ups of P^2 or a Hirzebruch surface."""
    fan = draw(st.sampled_from([projective_space_fan(2), hirzebruch(0), hirzebruch(1),
                                hirzebruch(2), hirzebruch(3)]))
    for i in draw(st.lists(st.integers(0, 20), max_size=max_blowups)):
        fan = blow_up_surface(fan, i)
    return fan


@pytest.fixture(scope="session")
def catalog():
    return catalog_fano5_index2()


@pytest.fixture
def p2():
    return projective_space_fan(2)


@pytest.fixture
def dp7():
    return del_pezzo_degree7()
