import numpy as np
import pytest

from strategies import SIGNED_STRATEGIES, STRATEGIES, get_strategy
from strategies.hardware import truncated_divmod, truncated_divmod_array


@pytest.mark.parametrize("n, d, expected", [
    (23, 4, (5, 3)),
    (-7, 3, (-2, -1)),
    (7, -3, (-2, 1)),
    (-7, -3, (2, -1)),
    (-2**31, -1, (2**31, 0)),
])
def test_truncated_divmod(n, d, expected):
    assert truncated_divmod(n, d) == expected
    q, r = truncated_divmod_array(np.array([n]), d)
    assert (int(q[0]), int(r[0])) == expected


def test_truncated_divmod_rejects_zero():
    with pytest.raises(ValueError):
        truncated_divmod(5, 0)


def test_unknown_strategy():
    with pytest.raises(ValueError, match="unknown strategy"):
        get_strategy("libdivide", 7)


@pytest.mark.parametrize("name", sorted(set(STRATEGIES) - SIGNED_STRATEGIES))
def test_unsigned_only_strategies_refuse_signed(name):
    with pytest.raises(ValueError):
        get_strategy(name, 7, signed=True)


def test_divisibility_alias():
    assert get_strategy("gm-divisibility", 7).operations == {"divisible"}


@pytest.mark.parametrize("name, signed, ops", [
    ("lkk", False, {"mod", "div", "divisible"}),
    ("lkk", True, {"mod", "divisible"}),
    ("lkk-minimal", False, {"mod", "div", "divisible"}),
    ("gmw", False, {"mod", "div"}),
    ("gm", False, {"divisible"}),
    ("hardware", True, {"mod", "div", "divisible"}),
])
def test_operations(name, signed, ops):
    assert get_strategy(name, 7, signed=signed).operations == ops


def test_signed_lkk_has_no_quotient():
    s = get_strategy("lkk", -7, signed=True)
    with pytest.raises(ValueError):
        s.div(10)
    with pytest.raises(ValueError):
        s.div_array(np.array([10]))


def test_storage_bits():
    assert get_strategy("lkk", 7).storage_bits == 64
    assert get_strategy("hardware", 7).storage_bits == 32
    assert get_strategy("lkk-minimal", 6, n_bits=6).storage_bits == 8


def test_minimal_offset():
    below = get_strategy("lkk-minimal", 6, n_bits=12, l_offset=-1)
    assert not below.params.valid
    # n = 4095 is the classic wrong answer for one bit too few
    assert below.mod(4095) == 4 and 4095 % 6 == 3
    with pytest.raises(ValueError):
        get_strategy("lkk-minimal", 8, n_bits=12, l_offset=-1)


def test_minimal_positive_offset():
    above = get_strategy("lkk-minimal", 7, l_offset=29)
    assert above.params.f_bits == 64 and above.params.valid
    assert above.mod(2**32 - 1) == (2**32 - 1) % 7
    with pytest.raises(ValueError):
        get_strategy("lkk-minimal", 7, l_offset=30)


@pytest.mark.parametrize("d, signed", [(2**32, False), (-1, False), (2**31, True), (-2**31 - 1, True)])
def test_hardware_checks_divisor_range(d, signed):
    with pytest.raises(ValueError, match="outside"):
        get_strategy("hardware", d, signed=signed)
    with pytest.raises(ValueError, match="outside"):
        get_strategy("lkk", d, signed=signed)


@pytest.mark.parametrize("name", sorted(STRATEGIES))
@pytest.mark.parametrize("d", [1, 3, 6, 95, 256, 65521])
def test_scalar_and_array_agree_unsigned(name, d):
    s = get_strategy(name, d)
    rng = np.random.default_rng(d)
    n = np.concatenate([np.array([0, 1, d, 2**32 - 1], dtype=np.uint64),
                        rng.integers(0, 2**32, size=300, dtype=np.uint64)])
    for op in s.operations:
        scalar = [getattr(s, op)(int(x)) for x in n]
        np.testing.assert_array_equal(getattr(s, f"{op}_array")(n), scalar)
    if "mod" in s.operations:
        assert all(s.mod(int(x)) == int(x) % d for x in n)


@pytest.mark.parametrize("name", sorted(SIGNED_STRATEGIES))
@pytest.mark.parametrize("d", [1, -1, 3, -7, 4096, -2**31, 2**31 - 1])
def test_scalar_and_array_agree_signed(name, d):
    s = get_strategy(name, d, signed=True)
    rng = np.random.default_rng(abs(d))
    n = np.concatenate([np.array([-2**31, -1, 0, 1, 2**31 - 1], dtype=np.int64),
                        rng.integers(-2**31, 2**31, size=300, dtype=np.int64)])
    for op in s.operations:
        scalar = [getattr(s, op)(int(x)) for x in n]
        np.testing.assert_array_equal(getattr(s, f"{op}_array")(n), scalar)
    assert all(s.mod(int(x)) == truncated_divmod(int(x), d)[1] for x in n)
