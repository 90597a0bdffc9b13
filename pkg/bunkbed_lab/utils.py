"""
This module contains a few utility functions.
"""
import hashlib
import json
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Any, Union

import numpy as np

RationalLike = Union[int, str, Fraction]


def get_project_root() -> Path:
    """
    Returns:
        Path: Path to the root of the project.

    """
    return Path(__file__).parent.parent


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """
    Counter-based random generator (Philox-4x64) keyed by a seed and an optional stream key, e.g. a trial index.

    The same `(seed, *key)` always yields the same stream, independently of any other stream that was drawn before.

    Args:
        seed: experiment seed.
        *key: further non-negative integers selecting an independent stream.

    Returns:
        np.random.Generator
    """
    entropy = [int(seed)] + [int(k) for k in key]
    if any(k < 0 for k in entropy):
        raise ValueError("Seeds and stream keys must be non-negative, got {}".format(entropy))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


########################################################################################################################
# Rationals
########################################################################################################################


def parse_rational(token: RationalLike) -> Fraction:
    """
    Parses an integer or a `p/q` string into an exact rational.

    Floats are refused since they would silently lose exactness.

    Args:
        token: integer, `Fraction` or string such as "3", "-2/7".

    Returns:
        Fraction
    """
    if isinstance(token, bool) or isinstance(token, float):
        raise ValueError("Expected an integer or a p/q rational, got {!r}".format(token))
    if isinstance(token, Rational):
        return Fraction(token)
    token = str(token).strip()
    if "." in token or "e" in token.lower():
        raise ValueError("Expected an integer or a p/q rational, got {!r}".format(token))
    return Fraction(token)


def format_rational(value: Fraction) -> str:
    """Formats a rational as "p" or "p/q" (lowest terms)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


########################################################################################################################
# Serialization
########################################################################################################################


def canonical_json(obj: Any) -> str:
    """Compact JSON with sorted keys, the serialization used for digests and records."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_json_default)


def instance_digest(obj: Any) -> str:
    """
    Returns:
        str: sha256 hex digest of the canonical JSON serialization of `obj`.
    """
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def _json_default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("Object of type {} is not JSON serializable".format(type(obj).__name__))
