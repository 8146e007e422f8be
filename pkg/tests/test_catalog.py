import json
import random
from fractions import Fraction

import pytest

from algvar.algebra import AlgebraStructure, check_identity
from algvar.catalog import (
    UnknownAlgebra, catalog_get, catalog_list, export_catalog, find_witness, iso_rules,
)
from algvar.scalars import RatFun

SAMPLES = (2, Fraction(3, 2), -5)


def products(A):
    return {(i + 1, j + 1): {k + 1: c for k, c in row.items()} for (i, j), row in A.constants.items()}


def test_get_examples():
    assert products(catalog_get("C5_02", {"alpha": 0})) == {
        (1, 1): {2: 1}, (1, 2): {3: 1}, (2, 2): {4: 1}}
    assert products(catalog_get("J21")) == {
        (1, 1): {5: 1}, (1, 2): {4: 1}, (2, 2): {5: 1}, (3, 3): {4: 1}, (3, 4): {5: 1}}
    C13 = catalog_get("C5_13")
    assert C13.parameters == ("alpha", "beta")
    assert C13.product(1, 3) == {4: RatFun.var("beta")}
    assert C13.product(3, 3) == {4: 1}


def test_get_accepts_strings():
    assert catalog_get("C5_02", {"alpha": "1/2"}).product(0, 2) == {3: Fraction(1, 2)}


def test_get_errors():
    with pytest.raises(UnknownAlgebra):
        catalog_get("C5_99")
    with pytest.raises(ValueError):
        catalog_get("C5_02", {"beta": 1})


def test_list_counts():
    assert len(catalog_list("non_jordan")) == 81
    assert [e.name for e in catalog_list("jordan_reps")] == ["eps1", "J21", "J22", "J27", "J40"]
    comps = [e.name for e in catalog_list("components")]
    assert len(comps) == 10 and "J21" in comps and "C5_49" in comps
    assert catalog_list("all")[-1].name == "abelian"
    with pytest.raises(ValueError):
        catalog_list("odd")


def test_round_trip():
    for entry in catalog_list("all"):
        again = AlgebraStructure.from_dict(json.loads(entry.algebra.dumps()))
        assert again == entry.algebra, entry.name


def test_export_is_parseable():
    data = json.loads(export_catalog())
    assert len(data) == len(catalog_list("all"))


def test_stored_as_printed():
    # the redundant-looking e1e3 = e4 + e5 term is kept
    assert catalog_get("C5_26").product(0, 2) == {3: 1, 4: 1}


@pytest.mark.parametrize("entry", catalog_list("all"), ids=lambda e: e.name)
def test_symbolic_identities(entry):
    A = entry.algebra
    assert check_identity(A, "commutative")
    assert check_identity(A, "cd")
    if entry.jordan_member or entry.name == "abelian":
        assert check_identity(A, "jordan")
    else:
        for k, a in enumerate(SAMPLES):
            point = {p: SAMPLES[(k + i) % 3] for i, p in enumerate(A.parameters)}
            assert not check_identity(A.specialize(point), "jordan")


def test_identities_at_random_points():
    rng = random.Random(7)
    from algvar.algebra import is_nilpotent

    for entry in catalog_list("non_jordan"):
        if not entry.parameters:
            continue
        for _ in range(5):
            A = entry.algebra.specialize(
                {p: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for p in entry.parameters})
            assert check_identity(A, "cd") and check_identity(A, "commutative")
            assert is_nilpotent(A)[0]


def test_iso_rules_symbolic():
    rules = iso_rules()
    assert [r.family for r in rules] == ["C5_13", "C5_26", "C5_27", "C5_69"]
    assert all(r.verify_symbolic() for r in rules)


def test_iso_rules_sampled():
    rng = random.Random(17)
    for rule in iso_rules(verify=False):
        for _ in range(5):
            point = {v: Fraction(rng.choice([-7, -3, -2, 2, 3, 5]), rng.randint(1, 3))
                     for v in rule.sample_vars}
            assert rule.verify_at(point), (rule.family, point)


def test_c13_witness_is_sign_flip():
    rule = iso_rules(verify=False)[0]
    want = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    want[3][3] = -1
    assert rule.witness_matrix() == want


def test_find_witness_c27():
    A = catalog_get("C5_27", {"alpha": 4})
    B = catalog_get("C5_27", {"alpha": Fraction(1, 4)})
    from algvar.degeneration import verify_isomorphism

    M = find_witness(A, B, max_perms=11)
    assert M is not None and verify_isomorphism(A, B, M)


def test_find_witness_none_for_distinct():
    A = catalog_get("C5_01")
    B = catalog_get("abelian")
    assert find_witness(A, B, max_perms=2) is None
