"""Shared generators for the test suite.  Deterministic: every test seeds
its own random.Random, so reruns produce identical values."""

from __future__ import annotations

import random
from fractions import Fraction

from mgnef import as_context, from_coeffs


def rand_fraction(rng: random.Random, lo=-6, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_nonneg_fraction(rng: random.Random, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(0, hi), rng.randint(1, max_den))


def rand_divisor(rng: random.Random, g, lo=-6, hi=6):
    ctx = as_context(g)
    return from_coeffs(ctx, [rand_fraction(rng, lo, hi) for _ in range(ctx.dim)])


def rand_matrix_rows(rng: random.Random, nrows, ncols, lo=-5, hi=5):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(ncols)] for _ in range(nrows)]


def assert_no_floats(obj) -> None:
    """Walk a decoded JSON payload and fail on any float."""
    assert not isinstance(obj, float), f"float {obj!r} in JSON payload"
    if isinstance(obj, dict):
        for k, v in obj.items():
            assert_no_floats(k)
            assert_no_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            assert_no_floats(v)


def assert_rational_strings_canonical(obj) -> None:
    """Every string that looks like p/q must be in lowest terms."""
    if isinstance(obj, str):
        import re

        if re.fullmatch(r"-?\d+(/\d+)?", obj):
            assert str(Fraction(obj)) == obj, f"{obj!r} not in lowest terms"
    elif isinstance(obj, dict):
        for v in obj.values():
            assert_rational_strings_canonical(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            assert_rational_strings_canonical(v)
