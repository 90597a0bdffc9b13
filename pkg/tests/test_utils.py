from fractions import Fraction

import numpy as np
import pytest

from bunkbed_lab.utils import (
    canonical_json,
    format_rational,
    get_project_root,
    instance_digest,
    make_rng,
    parse_rational,
)


def test_utils():
    assert (get_project_root() / "bunkbed_lab").is_dir()


def test_make_rng_streams_are_reproducible():
    first = make_rng(7, 3).random(5)
    second = make_rng(7, 3).random(5)
    np.testing.assert_array_equal(first, second)
    assert not np.array_equal(first, make_rng(7, 4).random(5))
    assert isinstance(make_rng(0).bit_generator, np.random.Philox)


def test_make_rng_rejects_negative_keys():
    with pytest.raises(ValueError):
        make_rng(-1)
    with pytest.raises(ValueError):
        make_rng(1, -2)


@pytest.mark.parametrize(
    "token, expected",
    [
        ("3", Fraction(3)),
        ("-2/7", Fraction(-2, 7)),
        (" 4/6 ", Fraction(2, 3)),
        (5, Fraction(5)),
        (Fraction(1, 3), Fraction(1, 3)),
    ],
)
def test_parse_rational(token, expected):
    assert parse_rational(token) == expected


@pytest.mark.parametrize("token", [0.5, "0.5", "1e3", True, "abc"])
def test_parse_rational_refuses_inexact_tokens(token):
    with pytest.raises(ValueError):
        parse_rational(token)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    assert parse_rational(format_rational(Fraction(22, 7))) == Fraction(22, 7)


def test_canonical_json_and_digest():
    a = {"b": [Fraction(1, 2), np.int64(3)], "a": 1}
    b = {"a": 1, "b": ["1/2", 3]}
    assert canonical_json(a) == '{"a":1,"b":["1/2",3]}'
    assert instance_digest(a) == instance_digest(b)
    assert len(instance_digest(a)) == 64
    with pytest.raises(TypeError):
        canonical_json({"x": object()})
