import pytest

from algebra.catalog import cached_catalog
from algebra.complexes import proj_presentation
from algebra.homological import DimBound
from algebra.modules import regular_module, simple, stack_name
from algebra.silting import (E_module, H_module, annihilator, check_id_restriction, check_pd_restriction, dbhom,
                             is_separating, is_splitting, is_tilting_module, quotient_by_annihilator,
                             run_silting_checks, splitting_routes, tilting_flags, tilting_modules, torsion_pair,
                             verify_h0_tilting_over_quotient, verify_separating_criterion, x_and_y_classes)
from algebra.verdicts import Verdict


def test_derived_hom_into_simples(a3, p43):
    assert dbhom(p43, simple(a3, "1"), 0).dim == 0
    assert dbhom(p43, simple(a3, "1"), 1).dim == 3
    assert dbhom(p43, simple(a3, "2"), 1).dim == 0
    assert dbhom(p43, simple(a3, "2"), 2).dim == 0


def test_torsion_pair_of_p43(p43, a3_catalog):
    report = torsion_pair(p43, a3_catalog)
    names = report.names()
    assert sorted(names["T"]) == ["2", "3", "3/2"]
    assert sorted(names["F"]) == ["1", "2/1", "3/2/1"]
    assert names["neither"] == []
    assert report.split is True
    assert len(report.to_frame()) == 6


def test_p43_is_separating_and_splitting(p43, a3_catalog):
    assert is_separating(p43, a3_catalog)
    assert is_splitting(p43, a3_catalog)
    assert splitting_routes(p43, a3_catalog)[1] is True


def test_images_over_end_algebra(a3, p43):
    assert H_module(p43, simple(a3, "2")).dim == 1
    assert E_module(p43, simple(a3, "1")).dim == 3
    with pytest.raises(ValueError):
        H_module(p43, simple(a3, "1"))


def test_induced_classes_of_p43(p43, a3_catalog):
    classes = x_and_y_classes(p43, a3_catalog)
    assert len(classes.x_class) == 3
    assert len(classes.y_class) == 3


def test_torsion_pair_of_p42(p42, gen4_catalog):
    report = torsion_pair(p42, gen4_catalog)
    assert sorted(report.names()["T"]) == ["4", "4/2", "4/2 3", "4/3"]
    assert len(report.torsion_free) == 6
    assert is_separating(p42, gen4_catalog)


def test_p42_does_not_split(p42, gen4_catalog):
    assert not is_splitting(p42, gen4_catalog)
    ok, offenders = check_id_restriction(p42, gen4_catalog)
    assert not ok
    worst = {stack_name(x): d for x, d in offenders}
    assert worst["1"] == DimBound(2)


def test_p41_is_splitting_not_separating(p41, her4_catalog):
    assert not her4_catalog.complete
    assert not is_separating(p41, her4_catalog)
    assert is_splitting(p41, her4_catalog)


def test_annihilator_and_quotient(p43):
    assert annihilator(p43.h0()).shape[1] == 3
    quot, _, t = quotient_by_annihilator(p43)
    assert quot.dim == 3
    assert len(quot.vertices) == 2
    assert t.dim == 3
    assert is_tilting_module(t)


def test_h0_of_p43_is_tilting_over_its_quotient(p43, a3_catalog):
    assert verify_h0_tilting_over_quotient(p43, a3_catalog).verdict == Verdict.PASS


def test_tilting_modules(a3, ss2, t41):
    assert is_tilting_module(t41)
    assert is_tilting_module(regular_module(a3))
    assert not is_tilting_module(simple(a3, "2"))
    assert len(tilting_modules(a3, cached_catalog(a3))) == 5
    assert len(tilting_modules(ss2, cached_catalog(ss2))) == 1


def test_flags_of_regular_module(a3, a3_catalog):
    flags = tilting_flags(regular_module(a3), a3_catalog)
    assert flags.tilting
    assert len(flags.torsion) == 6
    assert flags.torsion_free == []
    assert flags.separating is True
    assert flags.splitting is True


def test_flags_of_non_tilting_module(a3, a3_catalog):
    flags = tilting_flags(simple(a3, "2"), a3_catalog)
    assert not flags.tilting
    assert flags.separating is None


def test_every_check_holds_on_p43(p43, a3_catalog):
    results = run_silting_checks(p43, a3_catalog)
    assert not [r.check for r in results if r.verdict == Verdict.FAIL]
    assert any(r.verdict == Verdict.PASS for r in results)


def test_checks_skip_non_silting(a3, a3_catalog):
    results = run_silting_checks(proj_presentation(simple(a3, "2")), a3_catalog)
    assert all(r.verdict == Verdict.INAPPLICABLE for r in results)


def test_restrictions_hold_over_hereditary_algebras(p41, her4_catalog):
    assert check_id_restriction(p41, her4_catalog) == (True, [])
    assert check_pd_restriction(p41, her4_catalog) == (True, [])


def test_induced_classes_of_p41(p41, her4_catalog):
    classes = x_and_y_classes(p41, her4_catalog)
    assert sorted(stack_name(m) for m in classes.x_class) == ["4", "4/2", "4/3"]
    assert sorted(stack_name(m) for m in classes.y_class) == ["1", "2", "2 3/1", "2/1", "3", "3/1", "4/2 3"]


def test_p41_fails_separation_at_top_simple(p41, her4_catalog):
    result = verify_separating_criterion(p41, her4_catalog)
    assert result.verdict == Verdict.PASS
    assert result.data["separating"] is False
    assert result.data["witnesses"]["4"] == DimBound(2)
