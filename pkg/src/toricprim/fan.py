"""Simplicial fans in Z^d with full-dimensional maximal cones."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import adjugate, det, matvec, nonnegative_solution, vector_gcd

__all__ = [
    "Fan", "FanError", "InvariantError", "make_fan", "is_smooth", "is_complete",
    "fan_from_json", "fan_to_json", "load_fan", "canonical_fan",
]

# number of random points used by the completeness guard
GUARD_POINTS = 32
_POINT_RANGE = 10**6


class FanError(ValueError):
    """Input data does not describe a valid fan."""


class InvariantError(RuntimeError):
    """An internal invariant that should hold by construction failed."""


@dataclass(frozen=True)
class Fan:
    """Immutable fan: ray vectors plus maximal cones as sorted index tuples.

    Build instances with :func:`make_fan`, which validates the data; the
    bare constructor does no checking.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: frozenset[tuple[int, ...]]

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def sorted_cones(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.max_cones))

    @cached_property
    def cone_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in c) for c in self.sorted_cones)

    @cached_property
    def _adjugates(self) -> dict[tuple[int, ...], tuple[list[list[int]], int]]:
        # coordinates of p in the basis of cone c are adj @ p / det
        out = {}
        for c in self.sorted_cones:
            cols = [self.rays[i] for i in c]
            rows = [list(r) for r in zip(*cols)]
            out[c] = adjugate(rows)
        return out

    def cone_determinant(self, cone: tuple[int, ...]) -> int:
        return self._adjugates[cone][1]

    def cone_coordinates(self, cone: tuple[int, ...], point: Sequence[int]) -> list:
        """Scaled coordinates ``(num, den)`` of *point* in the ray basis of *cone*.

        ``point = sum(num[k] / den * rays[cone[k]])``; ``den`` may be negative.
        """
        adj, d = self._adjugates[cone]
        return matvec(adj, point), d

    def is_face(self, indices: Iterable[int]) -> bool:
        """True iff the given rays span a cone of the fan."""
        mask = 0
        for i in indices:
            mask |= 1 << i
        return any(mask & ~c == 0 for c in self.cone_masks)

    def canonical(self) -> "Fan":
        """Same fan with rays sorted lexicographically and indices remapped."""
        order = sorted(range(self.n_rays), key=lambda i: self.rays[i])
        new_index = {old: new for new, old in enumerate(order)}
        cones = frozenset(tuple(sorted(new_index[i] for i in c)) for c in self.max_cones)
        return Fan(self.dim, tuple(self.rays[i] for i in order), cones)

    @cached_property
    def smooth(self) -> bool:
        return all(abs(self.cone_determinant(c)) == 1 for c in self.sorted_cones)

    @cached_property
    def complete(self) -> bool:
        return _completeness(self, GUARD_POINTS, 0)

    def ray_index(self, ray: Sequence[int]) -> int:
        return self.rays.index(tuple(ray))

    def __repr__(self) -> str:
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


def make_fan(dim: int, rays: Sequence[Sequence[int]],
             max_cones: Iterable[Iterable[int]]) -> Fan:
    """Validate fan data and return a :class:`Fan`.

    Raises :class:`FanError` on duplicate or non-primitive rays, bad cone
    indices, degenerate cones, or cones whose interiors overlap.
    """
    if not isinstance(dim, int) or dim < 1:
        raise FanError(f"dimension must be a positive integer, got {dim!r}")
    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        raise FanError("fan needs at least one ray")
    for k, r in enumerate(rays):
        if len(r) != dim:
            raise FanError(f"ray {k} has length {len(r)}, expected {dim}")
        if not any(r):
            raise FanError(f"ray {k} is zero")
        if vector_gcd(r) != 1:
            raise FanError(f"ray {k} = {list(r)} is not primitive")
    if len(set(rays)) != len(rays):
        raise FanError("duplicate ray")

    cones = []
    for c in max_cones:
        c = tuple(sorted(int(i) for i in c))
        if len(c) != dim:
            raise FanError(f"cone {list(c)} has {len(c)} rays, expected {dim}")
        if len(set(c)) != dim:
            raise FanError(f"cone {list(c)} repeats a ray")
        if any(i < 0 or i >= len(rays) for i in c):
            raise FanError(f"cone {list(c)} has an index out of range")
        cones.append(c)
    if len(set(cones)) != len(cones):
        raise FanError("duplicate maximal cone")
    if not cones:
        raise FanError("fan needs at least one maximal cone")
    used = set().union(*cones)
    if len(used) != len(rays):
        missing = sorted(set(range(len(rays))) - used)
        raise FanError(f"rays {missing} lie in no maximal cone")

    fan = Fan(dim, tuple(rays), frozenset(cones))
    for c in fan.sorted_cones:
        if det([list(r) for r in zip(*(rays[i] for i in c))]) == 0:
            raise FanError(f"cone {list(c)} is not full-dimensional")
    fan._adjugates  # all cones are nonsingular now
    _check_intersections(fan)
    return fan


def _ridge_sides(fan: Fan) -> dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]]:
    """Map each ridge to the cones containing it and the side the cone lies on."""
    ridges: dict[tuple[int, ...], list] = {}
    for c in fan.sorted_cones:
        for k, apex in enumerate(c):
            ridge = c[:k] + c[k + 1:]
            m = [fan.rays[i] for i in ridge] + [fan.rays[apex]]
            s = 1 if det(m) > 0 else -1
            ridges.setdefault(ridge, []).append((c, s))
    return ridges


def _generic_point(fan: Fan, rng: random.Random) -> tuple[list[int], list]:
    """Random integer point off every cone's boundary hyperplanes.

    Returns the point and the list of maximal cones whose interior
    contains it.
    """
    while True:
        p = [rng.randint(-_POINT_RANGE, _POINT_RANGE) for _ in range(fan.dim)]
        inside = []
        for c in fan.sorted_cones:
            num, d = fan.cone_coordinates(c, p)
            if d < 0:
                num = [-x for x in num]
            if all(x >= 0 for x in num):
                if any(x == 0 for x in num):
                    break
                inside.append(c)
        else:
            return p, inside


def _check_intersections(fan: Fan) -> None:
    ridges = _ridge_sides(fan)
    closed = True
    for ridge, owners in ridges.items():
        if len(owners) > 2:
            raise FanError(f"ridge {list(ridge)} lies in {len(owners)} maximal cones")
        if len(owners) == 2:
            (c1, s1), (c2, s2) = owners
            if s1 == s2:
                raise FanError(f"cones {list(c1)} and {list(c2)} overlap across ridge {list(ridge)}")
        else:
            closed = False
    if closed:
        # Locally a complete fan; the cones cover R^d with constant
        # multiplicity, which must be one.
        _, inside = _generic_point(fan, random.Random(0))
        if len(inside) != 1:
            raise FanError(f"maximal cones cover space {len(inside)} times")
        return
    cones = fan.sorted_cones
    for c1, c2 in combinations(cones, 2):
        if not _meet_in_common_face(fan, c1, c2):
            raise FanError(f"cones {list(c1)} and {list(c2)} do not meet in a common face")


def _meet_in_common_face(fan: Fan, c1, c2) -> bool:
    shared = sorted(set(c1) & set(c2))
    only1 = [i for i in c1 if i not in shared]
    only2 = [i for i in c2 if i not in shared]
    # a point of c1 ∩ c2 outside cone(shared) has some positive c1-only coordinate
    cols = [fan.rays[i] for i in only1]
    cols += [[-x for x in fan.rays[i]] for i in only2]
    cols += [fan.rays[i] for i in shared]
    cols += [[-x for x in fan.rays[i]] for i in shared]
    a = [list(row) for row in zip(*cols)]
    a.append([1] * len(only1) + [0] * (len(cols) - len(only1)))
    b = [0] * fan.dim + [1]
    return nonnegative_solution(a, b) is None


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is generated by a lattice basis."""
    return fan.smooth


def is_complete(fan: Fan, guard_points: int = GUARD_POINTS, seed: int = 0) -> bool:
    """Decide whether the support of the fan is all of R^d.

    Ridge pairing plus connectivity of the cone adjacency graph; random
    points are then checked to be covered exactly once as a guard.
    """
    if guard_points == GUARD_POINTS and seed == 0:
        return fan.complete
    return _completeness(fan, guard_points, seed)


def _completeness(fan: Fan, guard_points: int, seed: int) -> bool:
    ridges = _ridge_sides(fan)
    if any(len(owners) != 2 for owners in ridges.values()):
        return False
    adjacent: dict[tuple, set] = {c: set() for c in fan.sorted_cones}
    for owners in ridges.values():
        (c1, _), (c2, _) = owners
        adjacent[c1].add(c2)
        adjacent[c2].add(c1)
    start = fan.sorted_cones[0]
    seen = {start}
    stack = [start]
    while stack:
        for nb in adjacent[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(adjacent):
        return False
    rng = random.Random(seed)
    for _ in range(guard_points):
        _, inside = _generic_point(fan, rng)
        if len(inside) != 1:
            raise InvariantError("ridge-paired fan does not cover a point exactly once")
    return True


def canonical_fan(fan: Fan) -> Fan:
    return fan.canonical()


def fan_to_json(fan: Fan, canonical: bool = True) -> str:
    """Serialize with fixed key order ``dim, rays, max_cones``."""
    if canonical:
        fan = fan.canonical()
    data = {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.sorted_cones],
    }
    return json.dumps(data)


def fan_from_json(text: str) -> Fan:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise FanError("fan JSON must be an object")
    try:
        return make_fan(data["dim"], data["rays"], data["max_cones"])
    except KeyError as exc:
        raise FanError(f"fan JSON is missing key {exc.args[0]!r}") from None
    except TypeError as exc:
        raise FanError(f"malformed fan JSON: {exc}") from None


def load_fan(path: str) -> Fan:
    with open(path) as fh:
        return fan_from_json(fh.read())


def require_smooth_complete(fan: Fan, what: str = "operation") -> None:
    if not fan.smooth:
        raise FanError(f"{what} needs a smooth fan")
    if not fan.complete:
        raise FanError(f"{what} needs a complete fan")
