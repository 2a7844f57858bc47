from algebra.homological import (DimBound, addM_resolution_length, basic_summands, endomorphism_algebra, ext_dim,
                                 gldim_end, global_dim, inj_dim, min_proj_resolution, proj_dim,
                                 right_add_approximation)
from algebra.modules import dual_module, projective, regular_module, simple
from algebra.repdim import verify_add_resolutions


def test_minimal_resolution_of_top_simple(gen4):
    res = min_proj_resolution(simple(gen4, "4"))
    assert [sorted(t) for t in res.terms] == [["4"], ["2", "3"], ["1", "1"]]
    assert res.length == 2
    assert not res.truncated


def test_projective_and_injective_dimensions(a3, gen4):
    assert proj_dim(simple(a3, "2")) == DimBound(1)
    assert proj_dim(projective(a3, "3")) == DimBound(0)
    assert proj_dim(simple(gen4, "4")) == DimBound(2)
    assert inj_dim(simple(gen4, "1")) == DimBound(2)


def test_ext_groups(a3, gen4):
    assert ext_dim(simple(a3, "2"), simple(a3, "1"), 1) == 1
    assert ext_dim(simple(a3, "1"), simple(a3, "2"), 1) == 0
    assert ext_dim(simple(gen4, "4"), simple(gen4, "1"), 2) == 2


def test_global_dimensions(a3, her4, gen4, ss2):
    assert global_dim(ss2) == DimBound(0)
    assert global_dim(a3) == DimBound(1)
    assert global_dim(her4) == DimBound(1)
    assert global_dim(gen4) == DimBound(2)


def test_dim_bound_rendering():
    assert str(DimBound(8, exact=False)) == ">= 8"
    assert not DimBound(8, exact=False).at_most(9)
    assert DimBound(1).at_most(1)


def test_endomorphism_ring_of_regular_module(a3):
    end = endomorphism_algebra([projective(a3, v) for v in a3.vertices])
    assert end.dim == a3.dim


def test_add_approximation_of_middle_simple(a3):
    gens = basic_summands([regular_module(a3), dual_module(a3)])
    assert len(gens) == 5
    approx = right_add_approximation(gens, simple(a3, "2"))
    assert approx.map.is_surjective()
    assert approx.source.dim == 2
    length, res = addM_resolution_length(gens, simple(a3, "2"))
    assert length == DimBound(1)
    assert res.is_hom_exact()
    assert gldim_end(gens) == DimBound(3)


def test_full_catalog_has_global_dimension_two(a3_catalog, gen4_catalog):
    assert gldim_end(a3_catalog.modules) == DimBound(2)
    assert gldim_end(gen4_catalog.modules) == DimBound(2)


def test_resolution_lengths_match_global_dimension(a3, a3_catalog):
    gens = basic_summands([regular_module(a3), dual_module(a3)])
    assert verify_add_resolutions(gens, a3_catalog).passed
    assert verify_add_resolutions(a3_catalog.modules, a3_catalog).passed
