import pytest

from algebra.catalog import brute_force_indecomposables, cached_catalog, enumerate_indecomposables, same_catalog
from utils.fixtures import load_algebra


def test_a3_has_six_indecomposables(a3_catalog):
    assert a3_catalog.complete
    assert len(a3_catalog) == 6
    assert set(a3_catalog.names()) == {"1", "2", "3", "2/1", "3/2", "3/2/1"}


def test_gen4_catalog_and_orbits(gen4_catalog):
    assert gen4_catalog.complete
    assert len(gen4_catalog) == 10
    orbits = gen4_catalog.tau_orbits()
    assert len(orbits) == 4
    assert sorted(len(o) for o in orbits) == [2, 2, 3, 3]
    assert any(set(o) == {"2/1", "3", "4/2"} for o in orbits)


def test_projective_and_injective_flags(a3_catalog):
    frame = a3_catalog.to_frame().set_index("module")
    assert frame.loc["3/2/1", "projective"] and frame.loc["3/2/1", "injective"]
    assert not frame.loc["2", "projective"] and not frame.loc["2", "injective"]


def test_tame_hereditary_catalog_is_incomplete(her4_catalog):
    assert not her4_catalog.complete


def test_small_bound_marks_catalog_incomplete(her4):
    catalog = enumerate_indecomposables(her4, 1)
    assert not catalog.complete
    assert "1" in catalog.names()


def test_brute_force_agrees_with_knitting(a3, a3_catalog):
    oracle = brute_force_indecomposables(a3, 3)
    assert oracle.complete
    assert same_catalog(a3_catalog, oracle)


def test_lookup_by_stack_name(a3_catalog):
    assert a3_catalog.by_name("3/2").dim_vector == (0, 1, 1)
    with pytest.raises(KeyError):
        a3_catalog.by_name("4")


@pytest.mark.parametrize("name", ["ALG-A3-SRC", "ALG-A3-SNK", "ALG-SS2"])
def test_brute_force_on_small_algebras(name):
    alg = load_algebra(name)
    oracle = brute_force_indecomposables(alg, 2)
    assert oracle.complete
    assert same_catalog(cached_catalog(alg), oracle)


def test_candidate_cap_marks_search_incomplete(a3):
    assert not brute_force_indecomposables(a3, 3, max_candidates=10).complete
