import random
from fractions import Fraction

import pytest

from algvar import paperdata
from algvar.algebra import AlgebraStructure
from algvar.catalog import catalog_get, catalog_list
from algvar.degeneration import base_change, load_certificate, resolve_algebra, verify_certificate
from algvar.invariants import annihilator_dim, left_power_dims, power_dims
from algvar.nondegeneration import (
    ArgumentFormatError, Bound, ClosedSetSpec, NonDegenerationArgument, abstract_bounds,
    check_in_basis, load_argument, refute_membership, schubert_cells, verify_argument,
)

R26 = ClosedSetSpec.flag((1, 4, 6))
R49 = ClosedSetSpec.flag((1, 1, 3), (1, 2, 4), (1, 3, 5), (1, 5, 6))
R16 = ClosedSetSpec.flag((1, 1, 3), (1, 2, 4), (1, 3, 5))
R80 = ClosedSetSpec.flag((3, 3, 6))
R72 = ClosedSetSpec.flag((1, 1, 4))
RJ = ClosedSetSpec.from_identity("jordan")
FLAG_SETS = [R26, R49, R16, R80, R72]

ARG_DIR = paperdata.path("arguments")
CERT_DIR = paperdata.path("certificates")


def sampled(name, value=2):
    A = catalog_get(name)
    return A.specialize({p: value + i for i, p in enumerate(A.parameters)})


def test_closed_set_normalizes():
    assert ClosedSetSpec.flag((4, 1, 6)).conditions == ((1, 4, 6),)
    with pytest.raises(ValueError):
        ClosedSetSpec.flag((1, 1, 1))
    with pytest.raises(ValueError):
        ClosedSetSpec.from_identity("lie")


def test_closed_set_round_trip():
    for R in FLAG_SETS + [RJ]:
        assert ClosedSetSpec.from_dict(R.to_dict()) == R
    assert R26.describe() == "{A_1A_4 ⊆ 0}"


@pytest.mark.parametrize("data", [
    {"conditions": []},
    {"type": "flag", "conditions": [{"i": 1, "j": 2}]},
    {"type": "flag", "conditions": [], "x": 1},
    {"type": "ring"},
])
def test_closed_set_format_errors(data):
    with pytest.raises(ArgumentFormatError):
        ClosedSetSpec.from_dict(data)


def test_check_in_basis_examples():
    assert check_in_basis(catalog_get("C5_26"), R26)
    assert check_in_basis(catalog_get("C5_49"), R49)
    assert not check_in_basis(catalog_get("C5_81"), ClosedSetSpec.flag((1, 2, 4)))
    assert check_in_basis(catalog_get("J21"), RJ)


def test_bounds_examples():
    assert [b.describe() for b in abstract_bounds(R26)] == ["dim Ann ≥ 2"]
    assert [b.describe() for b in abstract_bounds(ClosedSetSpec.flag((1, 1, 3)))] == ["dim A^2 ≤ 3"]
    got = [b.describe() for b in abstract_bounds(R49)]
    assert "dim A^2 ≤ 3" in got and "A*(A*A^2) = 0" in got
    assert Bound("left", 3, 1).describe() == "dim A*A^2 ≤ 1"
    assert "null subspace of dim ≥ 3" in [b.describe() for b in abstract_bounds(R80)]


def _actual(A, b):
    if b.kind == "power":
        d = power_dims(A)
        return d[b.degree - 1] if b.degree <= len(d) else 0
    if b.kind == "left":
        d = left_power_dims(A)
        return d[b.degree - 1] if b.degree <= len(d) else 0
    if b.kind == "ann":
        return annihilator_dim(A)
    return None


def test_bounds_sound_over_catalog():
    members = 0
    for entry in catalog_list("all"):
        A = entry.algebra.specialize({p: Fraction(7, 3) for p in entry.parameters})
        for R in FLAG_SETS:
            if not check_in_basis(A, R):
                continue
            members += 1
            for b in abstract_bounds(R):
                got = _actual(A, b)
                if got is not None:
                    assert b.holds_for(got), (entry.name, R, b, got)
    assert members > 20


def test_borel_stability():
    rng = random.Random(31)
    cases = [("C5_26", R26), ("C5_49", R49), ("C5_80", R80), ("C5_72", R72), ("C5_81", R80)]
    for name, R in cases:
        A = sampled(name)
        assert check_in_basis(A, R)
        for _ in range(20):
            U = [[1 if i == j else (rng.randint(-3, 3) if j > i else 0) for j in range(5)]
                 for i in range(5)]
            # rows of an upper unitriangular U keep every flag member A_p fixed
            assert check_in_basis(base_change(A, U), R), name


def test_schubert_cells():
    cells = schubert_cells(5)
    assert len(cells) == 120
    assert len({w for w, _ in cells}) == 120


def test_refute_examples():
    res = refute_membership(catalog_get("C5_16", {"alpha": 0}), R26)
    assert res.refuted and res.method == "bounds" and "Ann" in res.reason
    res = refute_membership(catalog_get("C5_81"), R49)
    assert res.refuted and "A^2" in res.reason
    res = refute_membership(catalog_get("C5_76"), RJ)
    assert res.refuted and res.method == "identity"


def test_refute_null_subspace():
    res = refute_membership(catalog_get("C5_76"), R80)
    assert res.refuted and res.method == "null_subspace"


def test_member_in_own_basis():
    res = refute_membership(sampled("C5_26"), R26)
    assert res.verdict == "Member" and res.method == "printed_basis"


def test_flag_search_finds_hidden_member():
    rng = random.Random(5)
    A = sampled("C5_49")
    M = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(5)]
    for i in range(5):
        M[i][i] = 3 + i
    B = base_change(A, M)
    assert not check_in_basis(B, R49)
    res = refute_membership(B, R49, budget_ms=60000)
    assert res.verdict == "Member" and res.witness is not None
    assert check_in_basis(base_change(B, res.witness), R49)


def test_flag_search_refutes():
    res = refute_membership(catalog_get("J21"), R49, budget_ms=60000)
    assert res.refuted and res.method == "flag_search"


def test_budget_exhaustion_is_inconclusive():
    res = refute_membership(catalog_get("J21"), R49, budget_ms=0.001)
    assert res.verdict == "Inconclusive"


def test_c77_has_a_null_three_space():
    # C5_77 contains span(e2, e4, e5) with zero products, so it lies in A_3^2 = 0
    res = refute_membership(catalog_get("C5_77"), R80, budget_ms=60000)
    assert res.verdict == "Member"
    assert check_in_basis(base_change(catalog_get("C5_77"), res.witness), R80)


@pytest.mark.parametrize("fname", sorted(p.name for p in CERT_DIR.iterdir() if p.name.endswith(".json")))
def test_consistent_with_certificates(fname):
    c = load_certificate(CERT_DIR / fname)
    assert verify_certificate(c).verified
    src = resolve_algebra(c.source)
    src = src.specialize({p: 2 for p in src.parameters}) if src.parameters else src
    tgt = resolve_algebra(c.target, c.target_params)
    tgt = tgt.specialize({p: 2 for p in tgt.parameters}) if tgt.parameters else tgt
    for R in FLAG_SETS + [RJ]:
        if check_in_basis(src, R):
            assert not refute_membership(tgt, R, budget_ms=60000).refuted, (fname, R)


def test_argument_round_trip():
    arg = load_argument(ARG_DIR / "row2-C5_49.json")
    assert arg.closed_set == R49 and arg.budget_ms == 120000
    again = NonDegenerationArgument.from_dict(arg.to_dict())
    assert again.closed_set == arg.closed_set and again.targets == arg.targets


@pytest.mark.parametrize("data", [
    {"source": "C5_26", "targets": []},
    {"source": "C5_26", "targets": [], "closed_set": {"type": "flag", "conditions": []}, "x": 0},
    {"source": 5, "targets": [], "closed_set": {"type": "flag", "conditions": []}},
    {"source": "C5_26", "targets": [], "closed_set": {"type": "flag", "conditions": []},
     "budget_ms": -1},
])
def test_argument_format_errors(data):
    with pytest.raises(ArgumentFormatError):
        NonDegenerationArgument.from_dict(data)


def test_verify_row1():
    rep = verify_argument(load_argument(ARG_DIR / "row1-C5_26.json"))
    assert rep.status == "Verified"
    for v in rep.verdicts:
        if v.result is not None:
            assert v.result.method == "bounds"


def test_verify_row5():
    for name in ("row5-C5_72.json", "row5-C5_69.json"):
        rep = verify_argument(load_argument(ARG_DIR / name))
        assert rep.status == "Verified", rep.lines()


def test_row3_source_not_member():
    # the printed basis of C5_16 has e3e3 = e4, outside A_5
    rep = verify_argument(load_argument(ARG_DIR / "row3-C5_16.json"))
    assert rep.status == "SourceNotMember"
    assert rep.source_evidence.refuted


def test_report_lines():
    rep = verify_argument(load_argument(ARG_DIR / "row6-J21.json"))
    assert rep.status == "Verified"
    assert rep.lines()[-1] == "status: Verified"
    assert rep.to_dict()["status"] == "Verified"
