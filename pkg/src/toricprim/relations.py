"""Primitive collections and primitive relations of smooth complete fans."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .fan import Fan, FanError, InvariantError, require_smooth_complete

# refuse to enumerate subsets of larger ray sets
MAX_RAYS = 16


@dataclass(frozen=True)
class PrimitiveRelation:
    """``sum(rays[collection]) == sum(coeffs[j] * rays[sigma[j]])``."""

    collection: tuple[int, ...]
    sigma: tuple[int, ...]
    coeffs: tuple[int, ...]
    degree: int
    relation_class: tuple[int, ...]

    @property
    def order(self) -> int:
        """Number of rays in the collection (``m``)."""
        return len(self.collection)

    def key(self) -> tuple:
        """Hashable identity of the relation, independent of degree bookkeeping."""
        return self.collection, tuple(zip(self.sigma, self.coeffs))

    def to_json(self) -> dict:
        return {
            "collection": list(self.collection),
            "sigma": list(self.sigma),
            "coeffs": list(self.coeffs),
            "degree": self.degree,
        }

    def render(self, labels: Optional[Sequence[str]] = None,
               sort_key: Optional[Callable[[int], object]] = None) -> str:
        """Text form ``x1+x3 = x2``; coefficients other than one as ``2*x2``.

        ``labels`` default to 1-based ``x<i>``. ``sort_key`` orders the
        terms on each side (by ray index when omitted).
        """
        return format_relation(self.collection, dict(zip(self.sigma, self.coeffs)),
                               labels, sort_key)


def format_relation(collection: Iterable[int], rhs: dict, labels=None, sort_key=None,
                    sep: str = " = ") -> str:
    if labels is None:
        def name(i):
            return f"x{i + 1}"
    else:
        def name(i):
            return labels[i]
    key = sort_key or (lambda i: i)
    left = "+".join(name(i) for i in sorted(collection, key=key))
    terms = []
    for i in sorted(rhs, key=key):
        b = rhs[i]
        terms.append(name(i) if b == 1 else f"{b}*{name(i)}")
    right = "+".join(terms) if terms else "0"
    return f"{left}{sep}{right}"


def _check_size(fan: Fan, max_rays: int) -> None:
    if fan.n_rays > max_rays:
        raise ValueError(f"fan has {fan.n_rays} rays; enumeration is capped at {max_rays}")


def primitive_collections(fan: Fan, max_rays: int = MAX_RAYS) -> list[tuple[int, ...]]:
    """Minimal subsets of rays that do not span a cone, sorted lexicographically."""
    require_smooth_complete(fan, "primitive_collections")
    return list(_collections(fan, max_rays))


@lru_cache(maxsize=512)
def _collections(fan: Fan, max_rays: int) -> tuple[tuple[int, ...], ...]:
    _check_size(fan, max_rays)
    # all (k-1)-subsets of a minimal non-face are faces, so k <= dim + 1
    found = []
    for k in range(2, min(fan.n_rays, fan.dim + 1) + 1):
        for subset in combinations(range(fan.n_rays), k):
            if fan.is_face(subset):
                continue
            if all(fan.is_face(subset[:j] + subset[j + 1:]) for j in range(k)):
                found.append(subset)
    return tuple(sorted(found))


def is_primitive_collection(fan: Fan, p: Iterable[int]) -> bool:
    p = tuple(sorted(set(p)))
    if not p or any(i < 0 or i >= fan.n_rays for i in p):
        return False
    if fan.is_face(p):
        return False
    return all(fan.is_face(p[:j] + p[j + 1:]) for j in range(len(p)))


def primitive_relation(fan: Fan, p: Iterable[int]) -> PrimitiveRelation:
    """Locate the sum of the rays in *p* in the relative interior of a cone.

    Raises :class:`FanError` when *p* is not a primitive collection or no
    cone contains the sum.
    """
    require_smooth_complete(fan, "primitive_relation")
    return _relation(fan, tuple(sorted(set(p))))


@lru_cache(maxsize=4096)
def _relation(fan: Fan, p: tuple[int, ...]) -> PrimitiveRelation:
    if not is_primitive_collection(fan, p):
        raise FanError(f"{[i for i in p]} is not a primitive collection")
    total = [sum(fan.rays[i][k] for i in p) for k in range(fan.dim)]
    support = None
    if not any(total):
        support = {}
    else:
        for cone in fan.sorted_cones:
            num, d = fan.cone_coordinates(cone, total)
            if d < 0:
                num, d = [-x for x in num], -d
            if any(x < 0 for x in num):
                continue
            found = {}
            for i, x in zip(cone, num):
                if x:
                    if x % d:
                        raise InvariantError(
                            f"non-integral coefficient {x}/{d} in relation of {list(p)}")
                    found[i] = x // d
            if support is None:
                support = found
            elif found != support:
                raise InvariantError(f"sum of {list(p)} lies in two different cones")
    if support is None:
        raise FanError(f"no cone contains the sum of {list(p)}; fan is not complete")
    if set(support) & set(p):
        raise InvariantError(f"collection {list(p)} meets its own cone")
    sigma = tuple(sorted(support))
    coeffs = tuple(support[i] for i in sigma)
    cls = [0] * fan.n_rays
    for i in p:
        cls[i] = 1
    for i, b in zip(sigma, coeffs):
        cls[i] = -b
    return PrimitiveRelation(p, sigma, coeffs, len(p) - sum(coeffs), tuple(cls))


def all_primitive_relations(fan: Fan, max_rays: int = MAX_RAYS) -> list[PrimitiveRelation]:
    """One relation per primitive collection, ordered by collection."""
    return [primitive_relation(fan, p) for p in primitive_collections(fan, max_rays)]
