import numpy as np
import pytest

from algebra.errors import NonAdmissibleError, ParseError
from algebra.quiver import Path, parse_algebra


def test_fixture_dimensions(a3, her4, gen4, ss2):
    assert a3.dim == 6
    assert her4.dim == 10
    assert gen4.dim == 8
    assert ss2.dim == 2 and ss2.is_semisimple()


def test_multiplication_follows_relations(her4, gen4):
    ab = her4.multiply(her4.arrow_element("a"), her4.arrow_element("b"))
    assert np.array_equal(ab, her4.element(Path("4", "1", ("a", "b"))))
    assert not gen4.multiply(gen4.arrow_element("a"), gen4.arrow_element("b")).any()


def test_radical_dimensions(a3, gen4):
    assert a3.radical_basis().shape[1] == 3
    assert gen4.radical_basis().shape[1] == 4


def test_hereditary_flags(a3, her4, gen4):
    assert a3.is_hereditary() and her4.is_hereditary()
    assert not gen4.is_hereditary()


def test_opposite_reverses_arrows(a3):
    op = a3.opposite()
    assert op.quiver.arrows["a"] == ("2", "3")
    assert op.dim == a3.dim
    assert op.opposite() is a3


def test_parse_error_carries_location():
    text = "vertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 3\n"
    with pytest.raises(ParseError) as err:
        parse_algebra(text)
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_field_must_be_prime():
    with pytest.raises(ParseError):
        parse_algebra("field 4\nvertices 1")


def test_unbounded_loop_is_rejected():
    with pytest.raises(NonAdmissibleError):
        parse_algebra("vertices 1\narrow x : 1 -> 1")


def test_loop_with_nilpotency_relation():
    alg = parse_algebra("vertices 1\narrow x : 1 -> 1\nrelation x*x")
    assert alg.dim == 2
    assert not alg.is_hereditary()
