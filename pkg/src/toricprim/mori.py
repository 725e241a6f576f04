"""Mori cone generators, extremality, the Fano test and the Fano index."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .fan import Fan, InvariantError, require_smooth_complete
from .linalg import (hermite_normal_form, matvec, nonnegative_solution,
                     smith_normal_form, transpose, vector_gcd)
from .relations import (PrimitiveRelation, all_primitive_relations,
                        primitive_relation)


class NotFanoError(ValueError):
    """The Fano index is only defined for Fano fans."""


@dataclass(frozen=True)
class PicClass:
    """Divisor class as intersection numbers with a fixed basis of curve classes.

    ``curve_basis`` rows are the Hermite normal form basis of the integer
    relations among the rays, which is the group of 1-cycles. Pairing
    with it identifies Pic with Z^(n-d).
    """

    coords: tuple[int, ...]
    curve_basis: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RelationType:
    tag: str
    shape: tuple[int, tuple[int, ...]]

    def __str__(self) -> str:
        return self.tag


# (m, sorted coefficient multiset) for the eight extremal shapes in dimension 5
RELATION_SHAPES = {
    (6, ()): "T1",
    (5, (1,)): "T2",
    (5, (3,)): "T3",
    (4, ()): "T4",
    (4, (2,)): "T5",
    (4, (1, 1)): "T6",
    (3, (1,)): "T7",
    (2, ()): "T8",
}


def mori_cone_generators(fan: Fan) -> list[tuple[int, ...]]:
    return [rel.relation_class for rel in all_primitive_relations(fan)]


def _positively_proportional(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    # u = t v with t > 0
    ratio = None
    for a, b in zip(u, v):
        if (a == 0) != (b == 0):
            return False
        if a:
            if (a > 0) != (b > 0):
                return False
            r = Fraction(a, b)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None


def in_cone(vector: Iterable[int], generators: list[tuple[int, ...]]) -> bool:
    """Exact test whether *vector* is a nonnegative combination of *generators*."""
    vector = list(vector)
    if not generators:
        return not any(vector)
    a = transpose(generators)
    return nonnegative_solution(a, vector) is not None


def is_extremal(fan: Fan, p: Iterable[int]) -> bool:
    """Does r(P) span an extreme ray of the cone generated by all relation classes?"""
    return _extremal(fan, primitive_relation(fan, p).collection)


@lru_cache(maxsize=4096)
def _extremal(fan: Fan, p: tuple[int, ...]) -> bool:
    r = primitive_relation(fan, p).relation_class
    others = [c for c in mori_cone_generators(fan) if not _positively_proportional(c, r)]
    return not in_cone(r, others)


def extremal_relations(fan: Fan) -> list[PrimitiveRelation]:
    return [rel for rel in all_primitive_relations(fan) if _extremal(fan, rel.collection)]


def is_fano(fan: Fan) -> bool:
    """Every primitive relation has positive degree."""
    return all(rel.degree > 0 for rel in all_primitive_relations(fan))


def picard_rank(fan: Fan) -> int:
    require_smooth_complete(fan, "picard_rank")
    return fan.n_rays - fan.dim


@lru_cache(maxsize=512)
def curve_basis(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """HNF basis of ``{b in Z^n : sum b_x x = 0}``.

    Read off from the Smith form of the map M -> Z^n, ``m -> (<m, x>)_x``;
    its invariant factors must all be 1 for a smooth complete fan.
    """
    require_smooth_complete(fan, "curve_basis")
    pairing = [list(r) for r in fan.rays]  # n x d, the map M -> Z^n
    u, dmat, _ = smith_normal_form(pairing)
    d = fan.dim
    if any(dmat[i][i] != 1 for i in range(d)):
        raise InvariantError("Picard group has torsion; fan is not smooth and complete")
    # rows d.. of U annihilate the image of M, and together form a lattice basis of it
    q = u[d:]
    basis = hermite_normal_form(q)
    if len(basis) != fan.n_rays - d:
        raise InvariantError("curve lattice has the wrong rank")
    for row in basis:
        if any(matvec(transpose(pairing), row)):
            raise InvariantError("curve basis vector is not a relation")
    return tuple(tuple(row) for row in basis)


def divisor_class(fan: Fan, divisor: Iterable[int]) -> PicClass:
    """Class of ``sum a_x D_x`` given the coefficient vector ``a``."""
    divisor = list(divisor)
    if len(divisor) != fan.n_rays:
        raise ValueError("divisor needs one coefficient per ray")
    basis = curve_basis(fan)
    coords = tuple(sum(a * b for a, b in zip(divisor, row)) for row in basis)
    return PicClass(coords, basis)


def anticanonical_class(fan: Fan) -> PicClass:
    return divisor_class(fan, [1] * fan.n_rays)


def fano_index(fan: Fan) -> int:
    """Largest m with -K = mH. Raises :class:`NotFanoError` if the fan is not Fano."""
    if not is_fano(fan):
        raise NotFanoError("fan is not Fano")
    return vector_gcd(anticanonical_class(fan).coords)


def classify_relation_type(fan: Fan, rel: PrimitiveRelation) -> RelationType:
    shape = (rel.order, tuple(sorted(rel.coeffs)))
    return RelationType(RELATION_SHAPES.get(shape, "OTHER"), shape)


def _contains_collection(fan: Fan, rays: set[int]) -> bool:
    return any(set(rel.collection) <= rays for rel in all_primitive_relations(fan))


def contraction_violations(fan: Fan, literal: bool = False) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (P, P') breaking the contractibility condition for extremal P.

    For extremal P and any other collection P' meeting it, the set
    ``(P' - P) ∪ σ(P)`` must contain a primitive collection. With
    ``literal=True`` the difference is taken the other way round,
    ``(P - P') ∪ σ(P)``; that variant already fails on the degree 7 del
    Pezzo surface but holds on the index 2 catalog. An empty list means
    the condition holds.
    """
    bad = []
    rels = all_primitive_relations(fan)
    for rel in extremal_relations(fan):
        p = set(rel.collection)
        for other in rels:
            q = set(other.collection)
            if other.collection == rel.collection or not p & q:
                continue
            rest = p - q if literal else q - p
            if not _contains_collection(fan, rest | set(rel.sigma)):
                bad.append((rel.collection, other.collection))
    return bad
