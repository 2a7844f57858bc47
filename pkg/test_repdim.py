import pytest

from algebra.errors import HypothesisError
from algebra.homological import DimBound
from algebra.modules import regular_module, stack_name
from algebra.repdim import (auslander_generator, generator_cogenerators, hereditary_type, is_rep_finite, rep_dim,
                            scan, verify_hereditary_corollary, verify_main_theorem, verify_quotient_rep_dim,
                            verify_tilting_corollary)
from algebra.silting import analysis
from algebra.verdicts import Verdict
from utils.fixtures import load_algebra


def test_hereditary_types(a3, her4, ss2):
    assert hereditary_type(a3) == ["A3"]
    assert hereditary_type(her4) == ["~A3"]
    assert hereditary_type(ss2) == ["A1", "A1"]


def test_finiteness(a3, her4):
    assert not is_rep_finite(her4).finite
    assert is_rep_finite(her4).kind == "infinite"
    finite = is_rep_finite(a3)
    assert finite.finite
    assert finite.count == 6
    assert str(finite) == "finite(6)"


def test_generator_cogenerators_of_a3(a3_catalog):
    candidates = generator_cogenerators(a3_catalog)
    assert len(candidates) == 2
    assert [len(c) for c in candidates] == [5, 6]


def test_auslander_generator_needs_every_module(a3, a3_catalog):
    mods, value, table = auslander_generator(a3, a3_catalog)
    assert value == DimBound(2)
    assert "2" in [stack_name(m) for m in mods]
    assert len(table) == 2


def test_auslander_generator_refuses_infinite_type(her4, her4_catalog):
    with pytest.raises(HypothesisError):
        auslander_generator(her4, her4_catalog)


@pytest.mark.parametrize("name, expected", [
    ("ALG-A3", 2),
    ("ALG-GEN4", 2),
    ("ALG-HER4", 3),
    ("ALG-SS2", 0),
    ("ALG-AT3", 2),
])
def test_rep_dim_values(name, expected):
    report = rep_dim(load_algebra(name))
    assert report.value == expected
    assert str(report) == str(expected)


def test_rep_dim_report_as_dict(her4):
    out = rep_dim(her4).to_dict()
    assert out["rep_dim"] == 3
    assert out["finiteness"].startswith("infinite")


def test_comparison_holds_for_p43(p43, a3_catalog):
    result = verify_main_theorem(p43, a3_catalog)
    assert result.verdict == Verdict.PASS
    assert result.data == {"rep_dim_A": "2", "rep_dim_B": "2"}


def test_comparison_needs_id_restriction(p42, gen4_catalog):
    result = verify_main_theorem(p42, gen4_catalog)
    assert result.verdict == Verdict.INAPPLICABLE
    assert result.data == {"rep_dim_A": "2", "rep_dim_B": "3"}
    assert "id-restriction" in result.detail


def test_end_of_p42_is_representation_infinite(p42):
    b = analysis(p42).b_algebra
    assert is_rep_finite(b).kind == "infinite"
    assert rep_dim(b).value == 3


def test_comparison_needs_separating(p41, her4_catalog):
    result = verify_main_theorem(p41, her4_catalog)
    assert result.verdict == Verdict.INAPPLICABLE
    assert result.data == {"rep_dim_A": "3", "rep_dim_B": "2"}


def test_hereditary_bound(p42, p43, a3_catalog, gen4_catalog):
    assert verify_hereditary_corollary(p43, a3_catalog).verdict == Verdict.PASS
    assert verify_hereditary_corollary(p42, gen4_catalog).verdict == Verdict.INAPPLICABLE


def test_rep_dim_of_end_of_h0(p43, a3_catalog):
    assert verify_quotient_rep_dim(p43, a3_catalog).verdict == Verdict.PASS


def test_tilting_corollary_on_regular_module(a3, a3_catalog):
    assert verify_tilting_corollary(regular_module(a3), a3_catalog).verdict == Verdict.PASS


def test_scan_of_a3(a3, a3_catalog):
    frame, results = scan(a3, a3_catalog)
    assert len(frame) == 14
    assert len(results) == 14
    assert not [r for r in results if r.verdict == Verdict.FAIL]
    assert frame["silting"].all()


@pytest.mark.parametrize("name, count", [
    ("ALG-A3-SRC", 14),
    ("ALG-A3-SNK", 14),
    ("ALG-GEN4", 42),
])
def test_scan_of_other_orientations(name, count):
    frame, results = scan(load_algebra(name))
    assert len(frame) == count
    assert frame["silting"].all()
    assert not [r.check for r in results if r.verdict == Verdict.FAIL]
