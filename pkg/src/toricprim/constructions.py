"""Constructors for smooth complete fans.

Ray order of every constructed fan is documented per function since the
catalog and the relation-transformation law refer to rays by index.
"""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import Iterable, Sequence

from .fan import Fan, FanError, make_fan, require_smooth_complete
from .mori import is_extremal
from .relations import PrimitiveRelation, all_primitive_relations, primitive_relation

__all__ = [
    "ConstructionError", "projective_space_fan", "product_fan", "prime_divisor",
    "projectivize_split", "h_bundle_fan", "blow_down", "h_construction",
    "h_ray_map", "transform_relations", "direct_fan_from_relations", "parse_relation",
]


class ConstructionError(ValueError):
    """Preconditions of a construction are violated."""


def _validated(dim, rays, cones) -> Fan:
    fan = make_fan(dim, rays, cones)
    try:
        require_smooth_complete(fan, "construction output")
    except FanError as exc:
        raise ConstructionError(str(exc)) from None
    return fan


def projective_space_fan(d: int) -> Fan:
    """Rays ``e_1, ..., e_d, -(e_1 + ... + e_d)``; every d-subset is a cone."""
    if d < 1:
        raise ConstructionError("projective space needs d >= 1")
    rays = [[int(i == j) for j in range(d)] for i in range(d)]
    rays.append([-1] * d)
    return _validated(d, rays, combinations(range(d + 1), d))


def product_fan(a: Fan, b: Fan, *more: Fan) -> Fan:
    """Rays of *a* (padded with zeros) followed by rays of *b*."""
    if more:
        return product_fan(product_fan(a, b), *more)
    dim = a.dim + b.dim
    rays = [list(r) + [0] * b.dim for r in a.rays]
    rays += [[0] * a.dim + list(r) for r in b.rays]
    n = a.n_rays
    cones = [ca + tuple(n + i for i in cb) for ca in a.sorted_cones for cb in b.sorted_cones]
    return _validated(dim, rays, cones)


def prime_divisor(fan: Fan, ray: int, coefficient: int = 1) -> list[int]:
    """Coefficient vector of ``coefficient * D_ray``."""
    if not 0 <= ray < fan.n_rays:
        raise ConstructionError(f"no ray with index {ray}")
    out = [0] * fan.n_rays
    out[ray] = coefficient
    return out


def projectivize_split(base: Fan, twists: Sequence[Sequence[int]]) -> Fan:
    """Fan of P(O + O(D_1) + ... + O(D_r)) over *base*.

    ``twists[j]`` lists the coefficients of D_(j+1) on the base rays.
    Base ray v lifts to ``(v, D_1(v), ..., D_r(v))``. Ray order: lifted
    base rays, then ``f_1..f_r = e_(d+1)..e_(d+r)``, then
    ``f_0 = -(f_1 + ... + f_r)``.
    """
    require_smooth_complete(base, "projectivize_split")
    r = len(twists)
    if r < 1:
        raise ConstructionError("need at least one twist divisor")
    for t in twists:
        if len(t) != base.n_rays:
            raise ConstructionError("each twist needs one coefficient per base ray")
    d, n = base.dim, base.n_rays
    rays = [list(v) + [int(t[i]) for t in twists] for i, v in enumerate(base.rays)]
    rays += [[0] * d + [int(j == k) for k in range(r)] for j in range(r)]
    rays.append([0] * d + [-1] * r)
    fiber = list(range(n, n + r + 1))
    cones = [c + f for c in base.sorted_cones for f in combinations(fiber, r)]
    return _validated(d + r, rays, cones)


def _check_hx(fan: Fan, x: int, p: int, what: str) -> None:
    require_smooth_complete(fan, what)
    if not isinstance(x, int) or not 0 <= x < fan.n_rays:
        raise ConstructionError(f"no ray with index {x}")
    if not isinstance(p, int) or p < 2:
        raise ConstructionError(f"p must be an integer >= 2, got {p!r}")


def _z_rays(fan: Fan, x: int, p: int) -> list[list[int]]:
    d = fan.dim
    z = [[0] * d + [int(i == j) for j in range(p - 1)] for i in range(p - 1)]
    z.append(list(fan.rays[x]) + [-1] * (p - 1))
    return z


def h_bundle_fan(fan: Fan, x: int, p: int) -> Fan:
    """The fan that H_(x,p) blows down.

    Rays: all rays of *fan* zero-extended (same order), then
    ``z_1..z_(p-1) = e_(d+1)..e_(d+p-1)`` and ``z_p = x - (z_1 + ... + z_(p-1))``.
    Maximal cones: each maximal cone plus any p-1 of the z's. It carries
    the relation ``z_1 + ... + z_p = x``.
    """
    _check_hx(fan, x, p, "h_bundle_fan")
    n = fan.n_rays
    rays = [list(v) + [0] * (p - 1) for v in fan.rays] + _z_rays(fan, x, p)
    zs = range(n, n + p)
    cones = [c + zc for c in fan.sorted_cones for zc in combinations(zs, p - 1)]
    return _validated(fan.dim + p - 1, rays, cones)


def h_construction(fan: Fan, x: int, p: int) -> Fan:
    """H_(x,p): remove ray x and replace it by p rays summing to it.

    Rays: rays other than x zero-extended (original order), then
    ``z_1..z_p`` as in :func:`h_bundle_fan`. Use :func:`h_ray_map` to
    translate old ray indices.
    """
    _check_hx(fan, x, p, "h_construction")
    n = fan.n_rays
    old = [i for i in range(n) if i != x]
    new_index = {i: k for k, i in enumerate(old)}
    rays = [list(fan.rays[i]) + [0] * (p - 1) for i in old] + _z_rays(fan, x, p)
    zs = tuple(range(n - 1, n - 1 + p))
    cones = []
    for c in fan.sorted_cones:
        rest = tuple(new_index[i] for i in c if i != x)
        if x in c:
            cones.append(rest + zs)
        else:
            cones.extend(rest + zc for zc in combinations(zs, p - 1))
    return _validated(fan.dim + p - 1, rays, cones)


def h_ray_map(n_rays: int, x: int, p: int) -> tuple[dict[int, int], tuple[int, ...]]:
    """Old-index -> new-index map for rays kept by H_(x,p), and the z indices."""
    kept = {}
    k = 0
    for i in range(n_rays):
        if i != x:
            kept[i] = k
            k += 1
    return kept, tuple(range(n_rays - 1, n_rays - 1 + p))


def _relation_from_parts(n_rays: int, collection, rhs: dict) -> PrimitiveRelation:
    collection = tuple(sorted(collection))
    sigma = tuple(sorted(rhs))
    coeffs = tuple(rhs[i] for i in sigma)
    cls = [0] * n_rays
    for i in collection:
        cls[i] += 1
    for i, b in rhs.items():
        cls[i] -= b
    return PrimitiveRelation(collection, sigma, coeffs, len(collection) - sum(coeffs), tuple(cls))


def transform_relations(fan: Fan, x: int, p: int) -> list[PrimitiveRelation]:
    """Primitive relations of H_(x,p)(fan) predicted from those of *fan*.

    Collections avoiding x persist; x inside a collection becomes all of
    z_1..z_p; x with coefficient b on the right becomes b*z_1 + ... + b*z_p.
    Indices refer to the ray order of :func:`h_construction`.
    """
    _check_hx(fan, x, p, "transform_relations")
    kept, zs = h_ray_map(fan.n_rays, x, p)
    n_new = fan.n_rays - 1 + p
    out = []
    for rel in all_primitive_relations(fan):
        coll = [kept[i] for i in rel.collection if i != x]
        if x in rel.collection:
            coll.extend(zs)
        rhs = {}
        for i, b in zip(rel.sigma, rel.coeffs):
            if i == x:
                for z in zs:
                    rhs[z] = b
            else:
                rhs[kept[i]] = b
        out.append(_relation_from_parts(n_new, coll, rhs))
    return sorted(out, key=lambda r: r.collection)


def blow_down(fan: Fan, rel: PrimitiveRelation) -> Fan:
    """Contract the divisor of x along an extremal relation ``z_1 + ... + z_p = x``.

    Each maximal cone ``{x} ∪ S`` must contain all but one z; it becomes
    ``S ∪ {z_1, ..., z_p}``. Ray x is removed, other rays keep their order.
    """
    require_smooth_complete(fan, "blow_down")
    if len(rel.sigma) != 1 or rel.coeffs != (1,):
        raise ConstructionError("blow_down needs a relation z_1+...+z_p = x with one ray, coefficient 1")
    actual = primitive_relation(fan, rel.collection)
    if actual.key() != rel.key():
        raise ConstructionError("relation does not belong to this fan")
    if not is_extremal(fan, rel.collection):
        raise ConstructionError("relation is not extremal")
    (x,) = rel.sigma
    zs = set(rel.collection)
    keep = [i for i in range(fan.n_rays) if i != x]
    new_index = {i: k for k, i in enumerate(keep)}
    cones = set()
    for c in fan.sorted_cones:
        if x not in c:
            cones.add(tuple(new_index[i] for i in c))
            continue
        missing = zs - set(c)
        if len(missing) != 1:
            raise ConstructionError(f"cone {list(c)} does not contain all but one of the z rays")
        cones.add(tuple(sorted([new_index[i] for i in c if i != x] + [new_index[i] for i in missing])))
    return _validated(fan.dim, [fan.rays[i] for i in keep], cones)


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?[A-Za-z]+_?\{?(\d+)\}?$")


def parse_relation(text: str) -> tuple[list[int], dict[int, int]]:
    """Parse ``"x1+x2+x3 = 2*x4"`` into 0-based ``([0, 1, 2], {3: 2})``.

    Labels are a letter prefix followed by a 1-based index; ``0`` denotes
    an empty right-hand side.
    """
    if text.count("=") != 1:
        raise ConstructionError(f"relation {text!r} needs exactly one '='")
    lhs, rhs = (s.strip() for s in text.split("="))

    def terms(side):
        out = []
        for t in side.split("+"):
            t = t.strip()
            m = _TERM.match(t)
            if not m or int(m.group(2)) < 1:
                raise ConstructionError(f"cannot parse term {t!r}")
            out.append((int(m.group(1) or 1), int(m.group(2)) - 1))
        return out

    left = terms(lhs)
    if any(b != 1 for b, _ in left):
        raise ConstructionError("left side of a primitive relation has unit coefficients")
    right: dict[int, int] = {}
    if rhs != "0":
        for b, i in terms(rhs):
            right[i] = right.get(i, 0) + b
    return [i for _, i in left], right


def _dependency_choice(relations, n):
    """Pick one dependent ray per relation so that solving is acyclic."""
    def search(k, chosen):
        if k == len(relations):
            return list(chosen)
        coll, rhs = relations[k]
        for dep in sorted(coll, reverse=True):
            if dep in chosen:
                continue
            chosen.append(dep)
            if _acyclic(relations[:k + 1], chosen):
                res = search(k + 1, chosen)
                if res is not None:
                    return res
            chosen.pop()
        return None
    return search(0, [])


def _acyclic(relations, chosen) -> bool:
    deps = {}
    for (coll, rhs), dep in zip(relations, chosen):
        deps[dep] = [i for i in coll if i != dep] + list(rhs)
    state = {}

    def visit(v):
        if state.get(v) == 1:
            return False
        if state.get(v) == 2:
            return True
        state[v] = 1
        ok = all(visit(w) for w in deps.get(v, ()))
        state[v] = 2
        return ok
    return all(visit(v) for v in deps)


def direct_fan_from_relations(dim: int, relations: Iterable) -> Fan:
    """Build a splitting fan from its primitive relations.

    *relations* holds ``(collection, rhs)`` pairs with 0-based indices and
    ``rhs`` a ``{ray: coefficient}`` dict, or relation strings accepted by
    :func:`parse_relation`. Collections must partition the rays. Free rays
    get standard basis vectors in index order; one ray per relation is
    solved from it. The resulting relations are checked against the input.
    """
    rels = []
    for r in relations:
        if isinstance(r, str):
            r = parse_relation(r)
        coll, rhs = r
        coll = sorted(set(coll))
        rhs = {int(i): int(b) for i, b in dict(rhs).items()}
        if len(coll) < 2:
            raise ConstructionError("a primitive collection has at least two rays")
        if any(b <= 0 for b in rhs.values()):
            raise ConstructionError("right-hand coefficients must be positive")
        if set(coll) & set(rhs):
            raise ConstructionError("collection and right-hand side must be disjoint")
        rels.append((coll, rhs))
    if not rels:
        raise ConstructionError("need at least one relation")
    members = [i for coll, _ in rels for i in coll]
    if len(members) != len(set(members)):
        raise ConstructionError("collections of a splitting fan must be disjoint")
    n = len(members)
    if set(members) != set(range(n)):
        raise ConstructionError("collections must cover rays 1..n exactly")
    if any(i >= n for _, rhs in rels for i in rhs):
        raise ConstructionError("right-hand side names an unknown ray")
    if n - len(rels) != dim:
        raise ConstructionError(f"{n} rays and {len(rels)} relations give dimension {n - len(rels)}, not {dim}")

    chosen = _dependency_choice(rels, n)
    if chosen is None:
        raise ConstructionError("relations cannot be solved by successive substitution")
    dependent = dict(zip(chosen, rels))
    rays: dict[int, list[int]] = {}
    free = [i for i in range(n) if i not in dependent]
    for k, i in enumerate(free):
        rays[i] = [int(j == k) for j in range(dim)]

    def value(i):
        if i not in rays:
            coll, rhs = dependent[i]
            v = [0] * dim
            for j, b in rhs.items():
                v = [a + b * c for a, c in zip(v, value(j))]
            for j in coll:
                if j != i:
                    v = [a - c for a, c in zip(v, value(j))]
            rays[i] = v
        return rays[i]

    ray_list = [value(i) for i in range(n)]
    colls = [coll for coll, _ in rels]
    cones = [tuple(sorted(set(range(n)) - set(omit))) for omit in product(*colls)]
    try:
        fan = _validated(dim, ray_list, cones)
    except FanError as exc:
        raise ConstructionError(f"relations do not define a smooth complete fan: {exc}") from None
    expected = sorted((tuple(coll), tuple(sorted(rhs.items()))) for coll, rhs in rels)
    got = sorted(rel.key() for rel in all_primitive_relations(fan))
    if expected != got:
        raise ConstructionError("computed primitive relations differ from the requested ones")
    return fan
