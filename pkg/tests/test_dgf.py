from fractions import Fraction

import numpy as np
import pytest

from digitalsums.config import RunConfig
from digitalsums.dgf import (
    PolyQ,
    RatFunc2s,
    b1_form,
    build_bm,
    dgf_am,
    dgf_mdc,
    dirichlet_partial,
    ir_numeric,
    ir_values,
    p_m1,
    p_m1_at_1_recurrence,
    p_m2k,
    stirling,
)
from digitalsums.errors import AccuracyError, CapabilityError, DomainError
from digitalsums.residues import OMEGA
from digitalsums.specfun import zeta
from digitalsums.verify import suite_dgf

X = PolyQ.x()


def test_polyq_arithmetic():
    p = (X - 1) * (X - 2)
    assert p.degree == 2
    assert p(2) == 0 and p(Fraction(1, 2)) == Fraction(3, 4)
    assert p.div_linear(1) == X - 2
    with pytest.raises(ArithmeticError):
        p.div_linear(3)
    assert (X**2 - X).c[-1] != 0


def test_ratfunc_normal_form():
    r = RatFunc2s((X - 1) * X, a=1, b=2)
    assert r.exponents == (0, 1, 0) and r.num == PolyQ([1])
    assert RatFunc2s.monomial(1, pm1=1, pm2=-1) - RatFunc2s.monomial(1, pm1=1, pm2=-1) == RatFunc2s.const(0)
    assert RatFunc2s.monomial(1, x_pow=-1).at_x(Fraction(8)) == Fraction(1, 8)
    with pytest.raises(DomainError):
        RatFunc2s(PolyQ([1]), a=-1)


def test_ratfunc_exact_equality_by_construction():
    lhs = RatFunc2s.monomial(1, pm1=-1) + RatFunc2s.monomial(1, pm1=-1, x_pow=-1)
    rhs = RatFunc2s(X + 1, a=1, b=1)
    assert lhs == rhs


def test_dgf_mdc_examples():
    s = 2.7
    assert dgf_mdc(2).evaluate(s) == pytest.approx(1 / (1 - 2**-s), rel=1e-14)
    assert dgf_mdc(3).terms["one"].at_x(Fraction(8)) == Fraction(8, 7) + Fraction(64, 49)


def test_dgf_am_examples():
    s = 2.3
    assert dgf_am(1).evaluate(s) == pytest.approx(zeta(s) / (2 ** (s - 1) - 1), rel=1e-13)
    assert dgf_am(2).terms["zeta"].at_x(Fraction(8)) == Fraction(8, 9)


def test_build_bm_m1_form():
    bm = build_bm(1)
    assert bm == b1_form()
    assert bm.coeff("zeta") == RatFunc2s(2 * X - 1, b=1) * Fraction(1, 2)
    assert bm.coeff("I1") == RatFunc2s.monomial(1, x_pow=1, pm2=-1)


def test_build_bm_caps():
    with pytest.raises(CapabilityError):
        build_bm(4)
    assert build_bm(4, cap=4).max_i() == 4


def test_p_values():
    assert p_m1(1)(1) == Fraction(1, 2)
    assert p_m1(2)(1) == Fraction(1, 2)
    for M in (2, 3, 4):
        assert p_m1(M)(1) == p_m1_at_1_recurrence(M)
        assert p_m1(M)(1) > 0
    for M in (2, 3):
        for k in range(1, M):
            assert p_m2k(M, k)(0) == 0


def test_stirling():
    assert stirling(5, 5) == 1 and stirling(6, 1) == 1
    assert stirling(3, 2) == 3 and stirling(4, 2) == 7
    with pytest.raises(DomainError):
        stirling(40, 2)


def test_ir_self_consistency_and_acceleration():
    a = ir_numeric(1, 3, N=10**5, method="direct")
    b = ir_numeric(1, 3, N=2 * 10**5, method="direct")
    assert abs(a.value - b.value) <= 1e-10
    assert abs(a.value - b.value) <= a.tail_bound + b.tail_bound
    acc = ir_numeric(1, 3)
    assert abs(acc.value - b.value) <= 1e-12


def test_ir_conjugate_symmetry():
    s = 1j * OMEGA
    v = ir_values(3, [s, np.conj(s)])
    assert np.max(np.abs(v[1] - np.conj(v[0]))) <= 1e-13


def test_ir_derivative_vs_difference():
    s, h = 1.0 + 9j, 1e-4
    d = ir_numeric(2, s, q=1).value
    fd = (ir_numeric(2, s + h).value - ir_numeric(2, s - h).value) / (2 * h)
    assert abs(d - fd) <= 1e-6


def test_ir_accuracy_error_carries_partial():
    with pytest.raises(AccuracyError) as info:
        ir_numeric(2, 0.3, N=1000, method="direct", tol=1e-12)
    assert info.value.partial is not None and info.value.bound > 1e-12


def test_ir_domain():
    with pytest.raises(DomainError):
        ir_values(1, [-1.0])


def test_reference_partial_sums():
    z3 = zeta(3)
    assert abs(dirichlet_partial("v2", 3, 10**5) - z3 / 7) <= 1e-6
    assert abs(dirichlet_partial("nabla_v", 3, 10**5) - 6 * z3 / 7) <= 1e-6
    assert abs(dirichlet_partial("v^M_odd", 3, 10**5) - 7 / 8 * dirichlet_partial("v^M", 3, 10**5)) <= 1e-6


def test_recombination_b1():
    B = build_bm(1).evaluate(3, ir_values(1, [3.0])[0])
    assert abs(B - dirichlet_partial("nabla_W_M", 3, 10**5, M=1)) <= 1e-6


# at s = 2.5 the partial-sum tails decay like N^-1.5, so the second point uses a longer sum
@pytest.mark.parametrize("s,N,tol", [(3.0, 10**5, 1e-6), (2.5, 10**6, 1e-5)])
def test_identity_suite(s, N, tol):
    results = suite_dgf(RunConfig(), s=s, N=N, tol=tol)
    bad = [(r.name, r.measured) for r in results if not r.passed]
    assert not bad
