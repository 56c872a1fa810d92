from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from digitalsums import digits
from digitalsums.dgf import PolyQ, RatFunc2s
from digitalsums.fourier import FourierSeries1, split_lg
from digitalsums.laurent import LaurentSeries
from digitalsums.specfun import zeta

big = st.integers(min_value=1, max_value=2**64)
M_s = st.integers(min_value=1, max_value=4)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@given(big)
def test_v_v2_identities(n):
    assert digits.v(2 * n) == digits.v(n)
    assert digits.v(2 * n + 1) == digits.v(n) + 1
    assert digits.v2(2 * n) == digits.v2(n) + 1
    assert digits.v(n) - digits.v(n - 1) == 1 - digits.v2(n)


@given(st.integers(min_value=0, max_value=2**64))
def test_bits_reconstruct(n):
    b = digits.Bits.of(n)
    assert b.value == n
    assert n == 0 or b.bits[-1] == 1


@given(big, M_s)
def test_s_m_two_scale(n, M):
    assert digits.s_m(2 * n + 1, M) == digits.s_m(2 * n, M)
    assert digits.s_m(2 * n, M) == 2 * digits.s_m(n, M) + M * digits.s_m(2 * n, M - 1)


@given(big, M_s)
def test_w_m_two_scale(n, M):
    assert digits.w_m(2 * n, M) == 2 * digits.w_m(n, M)
    assert digits.w_m(2 * n + 1, M) == 2 * digits.w_m(n, M) + (digits.v(n) + 1) ** M


@given(big)
def test_cw_decomposition(n):
    assert digits.cw(n) == digits.s_m(n, 1) + digits.w_m(n, 1) - (1 << digits.v2(n))


@settings(max_examples=40)
@given(st.integers(min_value=1, max_value=10**5))
def test_s1_bounds(n):
    S = digits.s_m(n, 1)
    assert 2**S <= n**n <= 2 ** (S + 2 * n)


@settings(max_examples=50)
@given(st.integers(min_value=2, max_value=10**9), st.integers(min_value=2, max_value=5))
def test_mdc_recurrence(n, k):
    e = n - 1 if k == 2 else digits.mdc_f(n, k - 1) + n - 1
    assert digits.mdc_f(n, k) == digits.mdc_f(n // 2, k) + digits.mdc_f((n + 1) // 2, k) + e


@given(st.integers(min_value=1, max_value=2**62))
def test_split_lg_doubling(n):
    e, f = split_lg(n)
    assert split_lg(2 * n) == (e + 1, f)


@st.composite
def ratfuncs(draw):
    coeff = draw(fractions.filter(lambda q: q != 0))
    return RatFunc2s.monomial(coeff, draw(st.integers(-3, 3)), draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))


rational_x = fractions.filter(lambda q: q not in (0, 1, 2))


@given(ratfuncs(), ratfuncs(), ratfuncs(), rational_x)
def test_ratfunc_ring_laws_and_evaluation(a, b, c, x):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert (a + b).at_x(x) == a.at_x(x) + b.at_x(x)
    assert (a * b).at_x(x) == a.at_x(x) * b.at_x(x)


@given(st.lists(fractions, min_size=1, max_size=6), st.sampled_from([0, 1, 2, Fraction(1, 2)]))
def test_polyq_div_linear_roundtrip(coeffs, root):
    p = PolyQ(coeffs)
    q = p * (PolyQ.x() - root)
    assert q.div_linear(root) == p


@st.composite
def series(draw, order, T=6):
    vals = draw(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=T, max_size=T))
    vals[0] = vals[0] if abs(vals[0]) > 0.5 else 1.0
    return LaurentSeries.from_scalars(0.25, order, vals)


@given(series(-1), series(0), series(2))
def test_laurent_ring(a, b, c):
    lhs, rhs = (a * b) * c, a * (b * c)
    scale = max(1.0, np.abs(lhs.coeffs).max())
    assert np.abs(lhs.coeffs - rhs.coeffs).max() <= 1e-12 * scale
    one = a * a.inverse()
    assert one.order == 0
    assert abs(one.coefficient(0)[0] - 1) <= 1e-12
    assert np.abs(one.coeffs[1:]).max(initial=0) <= 1e-9 * max(1.0, np.abs(a.inverse().coeffs).max()) ** 2


@given(st.floats(-2, 4), st.floats(0.1, 500))
def test_zeta_reflection(sigma, t):
    s = complex(sigma, t)
    assert abs(zeta(s.conjugate()) - zeta(s).conjugate()) <= 1e-12 * max(1.0, abs(zeta(s)))


@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False), min_size=1, max_size=20),
       st.floats(0, 1, exclude_max=True), st.integers(-5, 5))
def test_fourier_real_and_periodic(coeffs, u, shift):
    F = FourierSeries1(0.3, np.array(coeffs, dtype=complex))
    a = F.at_fraction(u)
    assert np.isrealobj(a)
    assert abs(F(u + shift)[0] - a[0]) <= 1e-9
