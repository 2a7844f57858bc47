import numpy as np
import pytest

from algebra.complexes import same_presentation
from algebra.errors import NotAnIdealError
from algebra.silting import annihilator, quotient_by_annihilator
from algebra.structure import jacobson_radical, quiverize, quotient_algebra


def test_radical_of_path_algebra_is_arrow_ideal(a3, gen4):
    assert jacobson_radical(a3).shape[1] == 3
    assert jacobson_radical(gen4).shape[1] == 4


def test_quiverize_recovers_the_quiver(a3, gen4):
    presented, witness = quiverize(a3)
    assert presented.dim == a3.dim
    assert same_presentation(presented, a3)
    assert len(witness.idempotents) == 3
    assert same_presentation(quiverize(gen4)[0], gen4)


def test_quiverize_of_opposite_matches_opposite(a3):
    assert same_presentation(quiverize(a3.opposite())[0], a3.opposite())


def test_quotient_by_annihilator_is_a2(p43):
    assert annihilator(p43.h0()).shape[1] == 3
    quot, witness, t = quotient_by_annihilator(p43)
    assert quot.dim == 3
    assert len(quot.vertices) == 2
    assert len(quot.quiver.arrows) == 1
    assert t.dim == p43.h0().dim


def test_quotient_by_whole_radical_is_semisimple(gen4):
    quot, _ = quotient_algebra(gen4, gen4.radical_basis())
    assert quot.is_semisimple()
    assert len(quot.vertices) == 4


def test_non_ideal_is_rejected(a3):
    with pytest.raises(NotAnIdealError):
        quotient_algebra(a3, a3.idempotent("1").reshape(-1, 1))


def test_structure_constants_are_associative_and_unital(gen4):
    a = gen4.to_abstract()
    assert a.is_associative()
    assert a.is_unit()


def test_witness_moves_elements_both_ways(a3):
    presented, witness = quiverize(a3)
    for arrow in presented.quiver.arrows:
        z = presented.arrow_element(arrow)
        assert np.array_equal(witness.pull_element(witness.map_element(z)), z % a3.p)
    assert np.array_equal(witness.map_element(presented.to_abstract().unit), a3.to_abstract().unit)
