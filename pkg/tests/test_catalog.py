from itertools import combinations

from toricprim import (all_primitive_relations, classify_relation_type, enumerate_smooth_fano_surfaces,
                       example_seven_fold, fano_index, find_isomorphism, is_fano, picard_rank,
                       product_fan, projective_space_fan, split_bundle_relations)
from toricprim.catalog import (DEL_PEZZO_7_RELATIONS, ENTRY_RELATIONS, SEVEN_FOLD_RELATIONS,
                               is_splitting_fan, relation_strings, seven_fold_tower)
from toricprim.checks import corrupted_entry, run_checks
from toricprim.mori import extremal_relations

from conftest import hirzebruch


def test_catalog_shape(catalog):
    assert [e.id for e in catalog] == list(range(1, 11))
    assert [e.picard_rank for e in catalog] == [2, 2, 2, 3, 3, 3, 3, 3, 4, 5]
    for e in catalog:
        assert e.fan.dim == 5 and e.fan.smooth and e.fan.complete
        assert is_fano(e.fan) and fano_index(e.fan) == 2
        assert picard_rank(e.fan) == e.picard_rank
        assert e.fan.n_rays == e.picard_rank + 5


def test_entry_relations(catalog):
    for k in (6, 7, 8):
        e = catalog[k - 1]
        assert relation_strings(e.fan, e.labels) == set(ENTRY_RELATIONS[k])


def test_entry_5_has_t5(catalog):
    fan = catalog[4].fan
    tags = {str(classify_relation_type(fan, r)) for r in extremal_relations(fan)}
    assert "T5" in tags


def test_entry_3_has_t3(catalog):
    fan = catalog[2].fan
    tags = {str(classify_relation_type(fan, r)) for r in extremal_relations(fan)}
    assert "T3" in tags


def test_all_splitting_and_distinct(catalog):
    assert all(is_splitting_fan(e.fan) for e in catalog)
    for a, b in combinations(catalog, 2):
        assert find_isomorphism(a.fan, b.fan) is None, (a.id, b.id)


def test_del_pezzo(dp7):
    labels = [f"x{i}" for i in range(1, 6)]
    assert relation_strings(dp7, labels) == set(DEL_PEZZO_7_RELATIONS)
    assert not is_splitting_fan(dp7)


def test_seven_fold():
    tower = seven_fold_tower()
    assert [f.dim for f, _ in tower] == [2, 3, 4, 5, 6, 7]
    y, labels = tower[-1]
    assert y == example_seven_fold()
    assert relation_strings(y, labels) == set(SEVEN_FOLD_RELATIONS)
    assert y.dim == 7 and picard_rank(y) == 3 and fano_index(y) == 2
    assert split_bundle_relations(y) == []
    assert not is_splitting_fan(y)


def test_bundle_detection():
    p1 = projective_space_fan(1)
    assert split_bundle_relations(product_fan(p1, p1)) == [(0, 1), (2, 3)]
    assert split_bundle_relations(projective_space_fan(3)) == [(0, 1, 2, 3)]
    assert split_bundle_relations(hirzebruch(1)) == [(1, 3)]


def test_enumerator():
    reps = enumerate_smooth_fano_surfaces(3)
    assert len(reps) == 5
    assert sorted(f.n_rays for f in reps) == [3, 4, 4, 5, 6]
    assert sorted(fano_index(f) for f in reps) == [1, 1, 1, 2, 3]
    assert len(enumerate_smooth_fano_surfaces(3, index=2)) == 1
    assert len(enumerate_smooth_fano_surfaces(1)) == 5


def test_enumerator_contains_known(dp7):
    reps = enumerate_smooth_fano_surfaces(2)
    for known in (projective_space_fan(2), hirzebruch(1), dp7,
                  product_fan(projective_space_fan(1), projective_space_fan(1))):
        assert sum(find_isomorphism(known, r) is not None for r in reps if r.n_rays == known.n_rays) == 1


def test_run_checks_pass(catalog):
    checks = run_checks(catalog)
    assert len(checks) >= 20
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_run_checks_corrupted(catalog):
    bad = list(catalog)
    bad[1] = corrupted_entry(bad[1])
    failed = [c.name for c in run_checks(bad) if not c.passed]
    assert failed
    assert any("2" in name for name in failed)
