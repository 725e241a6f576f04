"""Explicit smooth toric Fano varieties and a brute-force surface enumerator."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Optional

from .constructions import (direct_fan_from_relations, h_construction, prime_divisor,
                            product_fan, projective_space_fan, projectivize_split)
from .fan import Fan, FanError, make_fan
from .isomorphism import find_isomorphism, fingerprint
from .linalg import det, vector_gcd
from .mori import fano_index, is_fano
from .relations import all_primitive_relations


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    name: str
    fan: Fan
    picard_rank: int
    relations: Optional[tuple[str, ...]] = None
    dim: int = 5
    index: int = 2
    labels: tuple[str, ...] = field(default=(), compare=False)


# primitive relations of entries 6-8, as listed with the classification
ENTRY_RELATIONS = {
    6: ("x1+x2+x3=x4", "x4+x5+x6=x7", "x7+x8=0"),
    7: ("x1+x2+x3=x7", "x4+x5+x6=x7", "x7+x8=0"),
    8: ("x1+x2+x3=x7", "x4+x5+x6=x8", "x7+x8=0"),
}

DEL_PEZZO_7_RELATIONS = ("x1+x3=x2", "x1+x4=0", "x2+x4=x3", "x2+x5=x1", "x3+x5=0")

SEVEN_FOLD_RELATIONS = (
    "x1+x'1+x3+x'3=x2+x'2",
    "x1+x'1+x4+x'4=0",
    "x2+x'2+x4+x'4=x3+x'3",
    "x2+x'2+x5+x'5=x1+x'1",
    "x3+x'3+x5+x'5=0",
)


def catalog_fano5_index2() -> list[CatalogEntry]:
    """The ten smooth toric Fano 5-folds of index 2, numbered as classified."""
    P = projective_space_fan
    p1, p2, p3, p4 = P(1), P(2), P(3), P(4)
    e = []

    def add(name, fan, rank, relations=None):
        e.append(CatalogEntry(len(e) + 1, name, fan, rank, relations,
                              labels=tuple(f"x{i + 1}" for i in range(fan.n_rays))))

    add("P_{P^2}(O+O+O+O(1))",
        projectivize_split(p2, [[0] * 3, [0] * 3, prime_divisor(p2, 2)]), 2)
    add("P_{P^4}(O+O(1))", projectivize_split(p4, [prime_divisor(p4, 4)]), 2)
    add("P_{P^4}(O+O(3))", projectivize_split(p4, [prime_divisor(p4, 4, 3)]), 2)
    add("P^1 x P^1 x P^3", product_fan(p1, p1, p3), 3)
    add("P^1 x P_{P^3}(O+O(2))",
        product_fan(p1, projectivize_split(p3, [prime_divisor(p3, 3, 2)])), 3)
    for k in (6, 7, 8):
        base = "P_{P^2}(O+O+O(2))" if k == 6 else "P^2 x P^2"
        add(f"P^1-bundle over {base}", direct_fan_from_relations(5, ENTRY_RELATIONS[k]),
            3, ENTRY_RELATIONS[k])
    add("P^1 x P^1 x P_{P^2}(O+O(1))",
        product_fan(p1, p1, projectivize_split(p2, [prime_divisor(p2, 2)])), 4)
    add("P^1 x P^1 x P^1 x P^1 x P^1", product_fan(p1, p1, p1, p1, p1), 5)
    return e


def del_pezzo_degree7() -> Fan:
    """P^2 blown up in two torus-fixed points; rays x1..x5 in cyclic order."""
    rays = [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]]
    return make_fan(2, rays, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]])


def seven_fold_tower() -> list[tuple[Fan, tuple[str, ...]]]:
    """Fans X, H(x5,2)X, ..., Y with ray labels.

    H at ray ``xk`` labels its new rays ``xk`` and ``x'k``.
    """
    fan = del_pezzo_degree7()
    labels = tuple(f"x{i}" for i in range(1, 6))
    tower = [(fan, labels)]
    for k in (5, 4, 3, 2, 1):
        x = labels.index(f"x{k}")
        fan = h_construction(fan, x, 2)
        labels = tuple(l for l in labels if l != f"x{k}") + (f"x{k}", f"x'{k}")
        tower.append((fan, labels))
    return tower


def example_seven_fold() -> Fan:
    return seven_fold_tower()[-1][0]


def label_sort_key(label: str):
    """Order ``x1 < x'1 < x2 < ...``."""
    return int(label.lstrip("x'")), "'" in label


def relation_strings(fan: Fan, labels) -> set[str]:
    """Relations rendered like ``x1+x'1+x3+x'3=x2+x'2``."""
    key = lambda i: label_sort_key(labels[i])  # noqa: E731
    return {rel.render(labels, key).replace(" ", "") for rel in all_primitive_relations(fan)}


def is_splitting_fan(fan: Fan) -> bool:
    seen: set[int] = set()
    for p in (rel.collection for rel in all_primitive_relations(fan)):
        if seen & set(p):
            return False
        seen |= set(p)
    return True


def split_bundle_relations(fan: Fan) -> list[tuple[int, ...]]:
    """Zero-sum primitive collections disjoint from all other collections.

    Each one exhibits the fan as a toric projective-space bundle.
    """
    colls = [rel for rel in all_primitive_relations(fan)]
    out = []
    for rel in colls:
        if rel.sigma:
            continue
        if all(not set(rel.collection) & set(o.collection)
               for o in colls if o.collection != rel.collection):
            out.append(rel.collection)
    return out


def _primitive_box(bound: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
            if (a, b) != (0, 0) and vector_gcd((a, b)) == 1]


def _cross(u, v) -> int:
    return det([u, v])


def _locally_convex_cycles(bound: int) -> set[frozenset]:
    """Ray sets of smooth complete 2-d fans in the box with u_(i-1) + u_(i+1) = a u_i, a <= 1.

    Rays go counterclockwise; every consecutive pair is a lattice basis.
    Each fan is generated once, starting from its lexicographically least
    ray. The bound a <= 1 (no curve of self-intersection below -1) is
    necessary for the Fano property and keeps the search finite.
    """
    box = set(_primitive_box(bound))
    found = set()
    for u0 in sorted(box):
        for u1 in sorted(box):
            if u1 <= u0 or _cross(u0, u1) != 1:
                continue
            chain = [u0, u1]
            stack = [chain]
            while stack:
                chain = stack.pop()
                prev, cur = chain[-2], chain[-1]
                # nxt = a*cur - prev stays in the box only for |a| <= 2*bound
                for a in range(1, -2 * bound - 1, -1):
                    nxt = (a * cur[0] - prev[0], a * cur[1] - prev[1])
                    if nxt not in box:
                        continue
                    if nxt == u0:
                        # closing: the relation at u0 must also satisfy the bound
                        c = _coefficient(cur, u0, u1)
                        if c is not None and c <= 1 and len(chain) >= 3:
                            found.add(frozenset(chain))
                        continue
                    if nxt < u0 or nxt in chain:
                        continue
                    if _cross(cur, u0) > 0 and _cross(u0, nxt) > 0:
                        continue  # would wind past the start
                    stack.append(chain + [nxt])
    return found


def _coefficient(prev, mid, nxt) -> Optional[int]:
    s = (prev[0] + nxt[0], prev[1] + nxt[1])
    if s == (0, 0):
        return 0
    if _cross(s, mid) != 0:
        return None
    return s[0] // mid[0] if mid[0] else s[1] // mid[1]


def _angle_key(r):
    # half-plane first, then counterclockwise within it
    upper = r[1] > 0 or (r[1] == 0 and r[0] > 0)
    return 0 if upper else 1


def _fan_from_cycle(rays: frozenset) -> Fan:
    def cmp(u, v):
        hu, hv = _angle_key(u), _angle_key(v)
        if hu != hv:
            return hu - hv
        return -_cross(u, v)
    ordered = sorted(rays, key=cmp_to_key(cmp))
    n = len(ordered)
    return make_fan(2, ordered, [[i, (i + 1) % n] for i in range(n)])


def enumerate_smooth_fano_surfaces(coord_bound: int = 3, index: Optional[int] = None) -> list[Fan]:
    """Smooth Fano 2-d fans with rays in ``[-B, B]^2``, one per isomorphism class."""
    if coord_bound < 1:
        raise ValueError("coord_bound must be at least 1")
    reps: list[Fan] = []
    prints: list[tuple] = []
    # smallest coordinates first, so representatives come out tidy
    def tidy(s):
        return len(s), max(max(abs(x) for x in r) for r in s), sorted(s)
    for rays in sorted(_locally_convex_cycles(coord_bound), key=tidy):
        try:
            fan = _fan_from_cycle(rays)
        except FanError:
            continue
        if not (fan.smooth and fan.complete and is_fano(fan)):
            continue
        fp = fingerprint(fan)
        if any(p == fp and find_isomorphism(r, fan) is not None for r, p in zip(reps, prints)):
            continue
        reps.append(fan)
        prints.append(fp)
    if index is not None:
        reps = [f for f in reps if fano_index(f) == index]
    return reps
