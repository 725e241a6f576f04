"""Unimodular equivalence of smooth complete fans."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .fan import Fan, require_smooth_complete
from .linalg import adjugate, det, matmul, matvec
from .relations import all_primitive_relations


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix acting on column vectors, determinant ±1."""

    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, v):
        return tuple(matvec(self.matrix, v))

    @property
    def determinant(self) -> int:
        return det(self.matrix)

    def inverse(self) -> "UnimodularMap":
        adj, d = adjugate(self.matrix)
        return UnimodularMap(tuple(tuple(x * d for x in row) for row in adj))

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self ∘ other``."""
        return UnimodularMap(tuple(tuple(r) for r in matmul(self.matrix, other.matrix)))


def fingerprint(fan: Fan) -> tuple:
    """``(dim, #rays, #cones, sorted (m, coefficients, degree) triples)``."""
    triples = sorted((rel.order, tuple(sorted(rel.coeffs)), rel.degree)
                     for rel in all_primitive_relations(fan))
    return fan.dim, fan.n_rays, len(fan.max_cones), tuple(triples)


def maps_fan_onto(m: UnimodularMap, a: Fan, b: Fan) -> bool:
    if abs(m.determinant) != 1:
        return False
    index = {r: i for i, r in enumerate(b.rays)}
    images = []
    for r in a.rays:
        j = index.get(m(r))
        if j is None:
            return False
        images.append(j)
    if len(set(images)) != b.n_rays or a.n_rays != b.n_rays:
        return False
    mapped = {tuple(sorted(images[i] for i in c)) for c in a.max_cones}
    return mapped == set(b.max_cones)


def find_isomorphism(a: Fan, b: Fan) -> Optional[UnimodularMap]:
    """Search for a lattice automorphism carrying fan *a* onto fan *b*.

    Anchors the lexicographically least maximal cone of ``a.canonical()``
    and tries every ordered matching onto every maximal cone of *b*.
    Exhaustive, so ``None`` means the fans are not isomorphic.
    """
    require_smooth_complete(a, "find_isomorphism")
    require_smooth_complete(b, "find_isomorphism")
    if fingerprint(a) != fingerprint(b):
        return None
    anchor = min(tuple(sorted(a.rays[i] for i in c)) for c in a.max_cones)
    # a smooth cone's basis matrix has an integral inverse
    basis = [list(col) for col in zip(*anchor)]
    adj, d = adjugate(basis)
    inv = [[x * d for x in row] for row in adj]
    b_index = {r: i for i, r in enumerate(b.rays)}
    others = [r for r in a.rays if r not in anchor]
    cone_set = set(b.max_cones)
    for target in b.sorted_cones:
        for perm in permutations(target):
            cols = [b.rays[i] for i in perm]
            m = matmul([list(row) for row in zip(*cols)], inv)
            images = [b_index[tuple(c)] for c in cols]
            for r in others:
                j = b_index.get(tuple(matvec(m, r)))
                if j is None:
                    break
                images.append(j)
            else:
                if len(set(images)) != b.n_rays:
                    continue
                where = {r: images[k] for k, r in enumerate(list(anchor) + others)}
                if all(tuple(sorted(where[a.rays[i]] for i in c)) in cone_set
                       for c in a.max_cones):
                    return UnimodularMap(tuple(tuple(row) for row in m))
    return None


def is_isomorphic(a: Fan, b: Fan) -> bool:
    return find_isomorphism(a, b) is not None
