import json
from fractions import Fraction

import pytest
from hypothesis import given

from superhyp.errors import ParseError
from superhyp.grassmann import Algebra
from superhyp.textio import (
    format_supernumber,
    parse_supernumber,
    supernumber_from_json,
    supernumber_to_json,
)

from strategies import supernumbers

Q5 = Algebra(5, "rational")
F5 = Algebra(5, "float")


def test_parse_example():
    x = parse_supernumber("2.5 + 1*e[1,2]", F5)
    assert x.body == 2.5 and x.coeff(1, 2) == 1.0 and len(x.terms) == 2


def test_parse_rejects_unsorted_indices():
    with pytest.raises(ParseError):
        parse_supernumber("1*e[2,1]", F5)


def test_parse_rejects_repeats_and_range():
    with pytest.raises(ParseError):
        parse_supernumber("1*e[1,1]", F5)
    with pytest.raises(ParseError):
        parse_supernumber("1*e[6]", F5)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_supernumber("1 + 2*e[3,1]", F5)
    assert info.value.position is not None


def test_rational_coefficients():
    x = parse_supernumber("1/2 - 3/4*e[1,3]", Q5)
    assert x.body == Fraction(1, 2) and x.coeff(1, 3) == Fraction(-3, 4)


def test_canonical_json_layout():
    x = parse_supernumber("3*e[2] + 1 - 1*e[1,2]", F5)
    obj = supernumber_to_json(x)
    assert [t["idx"] for t in obj["terms"]] == [[], [1, 2], [2]]
    assert json.loads(json.dumps(obj)) == obj


def test_json_rejects_repeated_indices():
    with pytest.raises(ParseError):
        supernumber_from_json({"terms": [{"idx": [2, 2], "c": 1}]}, F5)


@given(supernumbers(Q5))
def test_text_round_trip_rational(x):
    assert parse_supernumber(format_supernumber(x), Q5) == x


@given(supernumbers(F5))
def test_text_round_trip_float(x):
    s = format_supernumber(x)
    assert parse_supernumber(s, F5) == x
    assert format_supernumber(parse_supernumber(s, F5)) == s


@given(supernumbers(Q5))
def test_json_round_trip(x):
    assert supernumber_from_json(json.loads(json.dumps(supernumber_to_json(x))), Q5) == x
