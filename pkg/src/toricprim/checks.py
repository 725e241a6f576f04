"""The verification suite behind ``classify-check``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .catalog import (DEL_PEZZO_7_RELATIONS, SEVEN_FOLD_RELATIONS, CatalogEntry,
                      catalog_fano5_index2, del_pezzo_degree7, is_splitting_fan,
                      relation_strings, seven_fold_tower, split_bundle_relations)
from .constructions import prime_divisor, projective_space_fan, projectivize_split
from .isomorphism import find_isomorphism
from .mori import (NotFanoError, classify_relation_type, contraction_violations,
                   extremal_relations, fano_index, is_fano, picard_rank)
from .relations import all_primitive_relations


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


def corrupted_entry(entry: CatalogEntry) -> CatalogEntry:
    """Swap in P(O + O(2)) over P^4, a Fano 5-fold of index 1."""
    p4 = projective_space_fan(4)
    fan = projectivize_split(p4, [prime_divisor(p4, 4, 2)])
    return CatalogEntry(entry.id, entry.name, fan, entry.picard_rank, entry.relations,
                        labels=entry.labels)


def _entry_check(e: CatalogEntry) -> Check:
    f = e.fan
    problems = []
    if f.dim != 5:
        problems.append(f"dim {f.dim}")
    if not (f.smooth and f.complete):
        return Check(f"entry {e.id}: smooth complete Fano 5-fold of index 2", False,
                     "not smooth and complete")
    if not is_fano(f):
        problems.append("not Fano")
    else:
        try:
            idx = fano_index(f)
        except NotFanoError:
            idx = None
        if idx != 2:
            problems.append(f"index {idx}")
    if picard_rank(f) != e.picard_rank:
        problems.append(f"Picard rank {picard_rank(f)}")
    return Check(f"entry {e.id}: smooth complete Fano 5-fold of index 2 ({e.name})",
                 not problems, ", ".join(problems))


def run_checks(catalog: Optional[list[CatalogEntry]] = None) -> list[Check]:
    cat = catalog if catalog is not None else catalog_fano5_index2()
    out = [Check("catalog has 10 entries", len(cat) == 10, str(len(cat)))]
    out += [_entry_check(e) for e in cat]
    usable = [e for e in cat if e.fan.smooth and e.fan.complete]

    for e in cat:
        if e.relations is not None:
            got = relation_strings(e.fan, e.labels)
            out.append(Check(f"entry {e.id}: primitive relations as listed", got == set(e.relations),
                             "; ".join(sorted(got))))

    odd = [(e.id, r.degree) for e in usable for r in all_primitive_relations(e.fan) if r.degree % 2]
    out.append(Check("all relation degrees even", not odd, str(odd) if odd else ""))

    bad_types = [(e.id, classify_relation_type(e.fan, r).tag) for e in usable
                 for r in extremal_relations(e.fan)
                 if classify_relation_type(e.fan, r).tag in ("T1", "OTHER")]
    out.append(Check("extremal relations are of types T2-T8", not bad_types, str(bad_types) if bad_types else ""))

    too_long = [(e.id, r.collection) for e in usable for r in extremal_relations(e.fan)
                if r.order + len(r.sigma) > e.fan.dim + 1]
    out.append(Check("extremal relations satisfy m+n <= 6", not too_long, str(too_long) if too_long else ""))

    viol = [(e.id, v) for e in usable for literal in (False, True)
            for v in contraction_violations(e.fan, literal)]
    out.append(Check("contractibility condition for extremal collections", not viol, str(viol) if viol else ""))

    nonsplit = [e.id for e in usable if not is_splitting_fan(e.fan)]
    out.append(Check("every entry is a splitting fan", not nonsplit, str(nonsplit) if nonsplit else ""))

    iso = [(a.id, b.id) for a, b in combinations(usable, 2)
           if find_isomorphism(a.fan, b.fan) is not None]
    out.append(Check(f"pairwise non-isomorphic ({len(usable) * (len(usable) - 1) // 2} pairs)",
                     not iso and len(usable) == len(cat), str(iso) if iso else ""))

    dp7 = del_pezzo_degree7()
    got = relation_strings(dp7, [f"x{i}" for i in range(1, 6)])
    out.append(Check("del Pezzo surface of degree 7: relations as listed",
                     got == set(DEL_PEZZO_7_RELATIONS), "; ".join(sorted(got))))
    y, labels = seven_fold_tower()[-1]
    got = relation_strings(y, labels)
    out.append(Check("seven-fold Y: relations as listed", got == set(SEVEN_FOLD_RELATIONS),
                     "; ".join(sorted(got))))
    ok = y.dim == 7 and picard_rank(y) == 3 and is_fano(y) and fano_index(y) == 2
    out.append(Check("seven-fold Y: dim 7, Picard rank 3, Fano of index 2", ok))
    out.append(Check("seven-fold Y: no toric projective-space bundle structure",
                     split_bundle_relations(y) == []))
    return out
