import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from ccdist.errors import DomainError, ResourceError, UnsupportedError
from ccdist.series import (SeriesSum, brute_force_sum, cosh_ratio, direct_zeta,
                           magnitude, sum_inverse_power, tail_integral, zeta_even)

from conftest import PI0, S2, S3_1, S4_1, SECH_PI


def test_cosh_ratio_examples():
    assert cosh_ratio(0.0, 0.0) == 1.0
    assert cosh_ratio(math.pi, math.pi) == 1.0
    assert cosh_ratio(0.0, math.pi) == pytest.approx(SECH_PI, rel=1e-13)


def test_cosh_ratio_large_arguments():
    # would overflow if either cosh were formed
    assert cosh_ratio(700.0, 699.0) == pytest.approx(math.e, rel=1e-13)
    assert cosh_ratio(-705.0, 705.0) == pytest.approx(1.0, rel=1e-13)
    assert cosh_ratio(0.0, 800.0) == pytest.approx(2.0 * math.exp(-800.0), rel=1e-12)


@pytest.mark.parametrize("a,b", [(math.inf, 0.0), (0.0, math.nan), (1.0, -1.0)])
def test_cosh_ratio_rejects(a, b):
    with pytest.raises(DomainError):
        cosh_ratio(a, b)


@given(st.floats(0, 700), st.floats(0, 700))
def test_cosh_ratio_reciprocal(a, b):
    assert cosh_ratio(a, b) * cosh_ratio(b, a) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(-30, 30), st.floats(0, 30))
def test_cosh_ratio_matches_direct(a, b):
    assert cosh_ratio(a, b) == pytest.approx(math.cosh(a) / math.cosh(b), rel=1e-13)


def test_sum_inverse_power_golden():
    assert sum_inverse_power(1.0, 1) == pytest.approx(PI0, abs=1e-13)
    for lam, val in S2.items():
        assert sum_inverse_power(lam, 2) == pytest.approx(val, rel=1e-13)


def test_sum_inverse_power_lambda2_vs_oracle():
    s = brute_force_sum(2.0, 1, 0.0, 1e-11)
    assert abs(sum_inverse_power(2.0, 1) - s.estimate) <= 1e-10
    assert sum_inverse_power(2.0, 1) == pytest.approx(math.pi / (2 * math.tanh(2 * math.pi)))


def test_sum_inverse_power_errors():
    with pytest.raises(DomainError):
        sum_inverse_power(0.0, 1)
    with pytest.raises(DomainError):
        sum_inverse_power(-1.0, 2)
    with pytest.raises(UnsupportedError):
        sum_inverse_power(1.0, 3)


def test_sum_inverse_power_large_scale():
    # csch^2 underflows to zero instead of overflowing
    assert sum_inverse_power(300.0, 2) == pytest.approx(math.pi / (2 * 300.0**3))


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("m", [1, 2])
def test_closed_form_agrees_with_oracle(lam, m):
    s = brute_force_sum(lam, m, 0.0, 1e-10)
    assert abs(sum_inverse_power(lam, m) - s.value) <= 1e-10 + s.tail_hi
    assert abs(sum_inverse_power(lam, m) - s.estimate) <= s.radius + 1e-13


def test_sum_inverse_power_decreasing():
    grid = np.linspace(0.05, 8.0, 200)
    vals = [sum_inverse_power(x, 1) for x in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_brute_force_examples():
    s = brute_force_sum(1.0, 1, 0.0, 1e-10)
    assert abs(s.estimate - PI0) <= 1e-10
    assert s.lower <= PI0 <= s.upper
    s = brute_force_sum(1.0, 1, math.pi, 1e-10)
    assert s.lower <= math.pi / math.sinh(math.pi) <= s.upper
    assert brute_force_sum(0.3, 1, 0.0, 1e-6).value > 0


def test_brute_force_higher_powers():
    assert brute_force_sum(1.0, 3, 0.0, 1e-13).estimate == pytest.approx(S3_1, abs=1e-13)
    assert brute_force_sum(1.0, 4, 0.0, 1e-13).estimate == pytest.approx(S4_1, abs=1e-13)


def test_series_sum_invariants():
    for t in (0.0, 1.0, -2.5):
        s = brute_force_sum(0.7, 2, t, 1e-8)
        assert isinstance(s, SeriesSum)
        assert s.tail_lo <= s.tail_hi
        assert s.terms_used >= 0
        assert s.width <= 1e-8
        assert s.value - s.tail_hi <= s.lower <= s.upper <= s.value + s.tail_hi


def _cos_series_m1(lam, t):
    # independent closed form of sum_k cos(kt)/(lam^2+k^2), t reduced to [0, 2pi)
    r = t % (2 * math.pi)
    return math.pi * math.cosh(lam * (r - math.pi)) / (lam * math.sinh(lam * math.pi))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.sampled_from([1, 2, 3]),
       st.one_of(st.just(0.0), st.floats(-2 * math.pi, 2 * math.pi)),
       st.floats(1e-10, 1e-5))
def test_bracket_soundness(lam, m, t, rel):
    # near (but off) the lattice no cheap rigorous bracket exists
    assume(t == 0.0 or abs(math.sin(t / 2)) > 0.05)
    tol = rel * magnitude(lam, m)
    a = brute_force_sum(lam, m, t, tol)
    b = brute_force_sum(lam, m, t, tol / 100)
    assert abs(a.estimate - b.estimate) <= a.radius + b.radius + 1e-15
    if a.tail_lo >= 0:
        assert abs(a.value - b.value) <= max(a.tail_hi, b.tail_hi)
    if m == 1:
        truth = _cos_series_m1(lam, t)
        assert a.lower - 1e-13 * truth <= truth <= a.upper + 1e-13 * truth


@pytest.mark.parametrize("lam", [0.5, 1.0, 3.0])
def test_cosine_expansion_of_cosh(lam):
    # (-1)^n cos(nt) = cos(n (t + pi)), so the alternating series is a shifted one
    scale = lam * math.sinh(lam * math.pi) / math.pi
    for t in np.linspace(-math.pi, math.pi, 9):
        s = brute_force_sum(lam, 1, t + math.pi, 1e-9 / scale)
        assert abs(scale * s.estimate - math.cosh(lam * t)) <= 1e-8


def test_tail_integral_matches_quadrature():
    from scipy.integrate import quad
    for lam, m, a in [(1.0, 1, 3.0), (0.5, 2, 10.0), (2.0, 3, 1.0), (1.5, 4, 0.0)]:
        ref, _ = quad(lambda x: (lam * lam + x * x) ** (-m), a, np.inf, epsabs=1e-14)
        assert tail_integral(lam, m, a) == pytest.approx(ref, rel=1e-10)


def test_brute_force_resource_error():
    with pytest.raises(ResourceError) as info:
        brute_force_sum(1.0, 1, 1e-9, 1e-9)
    assert info.value.achievable > 1e-9
    with pytest.raises(ResourceError):
        brute_force_sum(1.0, 1, 0.0, 1e-30)


def test_brute_force_argument_errors():
    with pytest.raises(DomainError):
        brute_force_sum(0.0, 1, 0.0, 1e-6)
    with pytest.raises(DomainError):
        brute_force_sum(1.0, 0, 0.0, 1e-6)
    with pytest.raises(DomainError):
        brute_force_sum(1.0, 1, 0.0, -1.0)


def test_zeta_even_values():
    assert abs(zeta_even(1) - math.pi**2 / 6) <= 1e-8
    assert abs(zeta_even(2) - math.pi**4 / 90) <= 1e-8
    with pytest.raises(UnsupportedError):
        zeta_even(3)


def test_zeta_even_vs_direct_sum():
    k = np.arange(1, 10**6 + 1, dtype=np.float64)
    K = 10**6
    # midpoint-rule tail estimate; error ~ K^-4
    direct = math.fsum((1.0 / k**2)[::-1]) + 1.0 / (K + 0.5)
    assert abs(zeta_even(1) - direct) <= 1e-8
    z = direct_zeta(1, 1e-12)
    assert z.lower <= math.pi**2 / 6 <= z.upper
