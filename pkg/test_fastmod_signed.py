import numpy as np
import pytest
from hypothesis import given, strategies as st

from fastmod_signed import (TRIVIAL_MIN, TRIVIAL_UNIT, compute_signed_reciprocal,
                            fastmod_signed, fastmod_signed_array, is_divisible_signed,
                            is_divisible_signed_array)

I32 = st.integers(-2**31, 2**31 - 1)
NONZERO_I32 = I32.filter(lambda d: d != 0)


def truncated_mod(n, d):
    r = abs(n) % abs(d)
    return -r if n < 0 else r


def test_reciprocal_golden_values():
    assert compute_signed_reciprocal(-3).c == 6148914691236517206
    assert compute_signed_reciprocal(3).c == 6148914691236517206
    # powers of two get the extra +1 so the bound stays strict
    assert compute_signed_reciprocal(4).c == 2**62 + 1


def test_reciprocal_rejects_bad_divisors():
    with pytest.raises(ValueError):
        compute_signed_reciprocal(0)
    with pytest.raises(ValueError):
        compute_signed_reciprocal(2**31)
    with pytest.raises(ValueError):
        compute_signed_reciprocal(-2**31 - 1)


def test_trivial_divisors():
    assert compute_signed_reciprocal(1).trivial == TRIVIAL_UNIT
    assert compute_signed_reciprocal(-1).trivial == TRIVIAL_UNIT
    assert compute_signed_reciprocal(-2**31).trivial == TRIVIAL_MIN
    assert compute_signed_reciprocal(7).trivial is None


@pytest.mark.parametrize("n, d, expected", [
    (-7, 3, -1),
    (23, 6, 5),
    (7, -3, 1),
    (-7, -3, -1),
    (-2**31, 2, 0),
    (-2**31, 3, -2),
    (2**31 - 1, -2**31 + 1, 0),
    (123, -1, 0),
    (-2**31, -1, 0),
])
def test_worked_examples(n, d, expected):
    assert fastmod_signed(n, compute_signed_reciprocal(d)) == expected


@pytest.mark.parametrize("n, expected", [
    (-2**31, 0),
    (-2**31 + 1, -2**31 + 1),
    (-5, -5),
    (0, 0),
    (5, 5),
    (2**31 - 1, 2**31 - 1),
])
def test_most_negative_divisor(n, expected):
    assert fastmod_signed(n, compute_signed_reciprocal(-2**31)) == expected


@pytest.mark.parametrize("n, d, expected", [
    (-42, 6, True),
    (42, -6, True),
    (-7, 3, False),
    (-2**31, -2, True),
    (-2**31, -2**31, True),
    (2**31 - 1, -2**31, False),
    (0, -5, True),
])
def test_divisibility_examples(n, d, expected):
    assert is_divisible_signed(n, compute_signed_reciprocal(d)) is expected


@given(NONZERO_I32)
def test_strict_bound(d):
    div = compute_signed_reciprocal(d)
    if div.trivial:
        return
    assert 2**64 < div.c * div.pd < 2**64 + 2**33


@given(I32, NONZERO_I32)
def test_matches_truncated_remainder(n, d):
    div = compute_signed_reciprocal(d)
    r = fastmod_signed(n, div)
    assert r == truncated_mod(n, d)
    assert abs(r) < abs(d)
    assert r == 0 or (r < 0) == (n < 0)
    assert is_divisible_signed(n, div) == (n % d == 0)


@given(I32.filter(lambda n: n != -2**31), NONZERO_I32)
def test_sign_symmetry(n, d):
    div = compute_signed_reciprocal(d)
    assert fastmod_signed(-n, div) == -fastmod_signed(n, div)
    if d != -2**31:
        assert fastmod_signed(n, compute_signed_reciprocal(-d)) == fastmod_signed(n, div)


@pytest.mark.parametrize("d", [1, -1, 2, 3, -3, 7, 16, -16, 255, -1000, 32767, -32767, -32768])
def test_sixteen_bit_mirror_exhaustive_over_n(d):
    n = np.arange(-2**15, 2**15, dtype=np.int64)
    div = compute_signed_reciprocal(d, n_bits=16)
    np.testing.assert_array_equal(fastmod_signed_array(n, div), np.fmod(n, d))
    np.testing.assert_array_equal(is_divisible_signed_array(n, div), np.fmod(n, d) == 0)


@pytest.mark.parametrize("d", [3, -7, 95, 4096, -2**31, 2**31 - 1])
def test_array_twins_match_scalar(d):
    rng = np.random.default_rng(abs(d))
    n = np.concatenate([
        np.array([-2**31, -2**31 + 1, -1, 0, 1, 2**31 - 1], dtype=np.int64),
        rng.integers(-2**31, 2**31, size=5000, dtype=np.int64),
    ])
    div = compute_signed_reciprocal(d)
    expected = [fastmod_signed(int(x), div) for x in n]
    np.testing.assert_array_equal(fastmod_signed_array(n, div), expected)
    np.testing.assert_array_equal(is_divisible_signed_array(n, div),
                                  [is_divisible_signed(int(x), div) for x in n])
