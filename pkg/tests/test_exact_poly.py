from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy import special

from swkblab.errors import DimensionMismatch, DomainError
from swkblab.exact_poly import (ExactPolynomial, PrefactoredFunction, bareiss_det, classical_poly,
                                differentiate, evaluate, wronskian)
from swkblab.systems import SystemSpec, VirtualStateLabel, eigenfunction, virtual_state

F = Fraction
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(rationals, min_size=0, max_size=6).map(lambda cs: ExactPolynomial(tuple(cs), "z"))


def P(*cs, var="xi"):
    return ExactPolynomial(tuple(F(c) for c in cs), var)


# ---------------------------------------------------------------------------
# classical families
# ---------------------------------------------------------------------------

def test_hermite_low_orders():
    assert classical_poly("hermite", 0) == P(1)
    assert classical_poly("hermite", 3) == P(0, -12, 0, 8)


def test_laguerre_first_order():
    a = F(7, 3)
    assert classical_poly("laguerre", 1, a) == P(1 + a, -1, var="z")


@pytest.mark.parametrize("n", range(1, 31))
def test_hermite_derivative_identity(n):
    H = classical_poly("hermite", n)
    assert H.derivative() == 2 * n * classical_poly("hermite", n - 1)


@pytest.mark.parametrize("n", range(1, 31, 3))
def test_laguerre_derivative_identity(n):
    a = F(5, 2)
    assert classical_poly("laguerre", n, a).derivative() == -classical_poly("laguerre", n - 1, a + 1)


@pytest.mark.parametrize("n", range(2, 31, 4))
def test_jacobi_sum_obeys_three_term_recurrence(n):
    # the binomial-sum construction checked against the standard recurrence
    a, b = F(9, 2), F(11, 2)
    y = ExactPolynomial.monomial(1, "y")
    p0, p1, p2 = (classical_poly("jacobi", k, a, b) for k in (n - 2, n - 1, n))
    c = 2 * n + a + b
    lhs = 2 * n * (n + a + b) * (c - 2) * p2
    rhs = ((c - 1) * (c * (c - 2) * y + a * a - b * b) * p1
           - 2 * (n + a - 1) * (n + b - 1) * c * p0)
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 5, 12])
def test_jacobi_derivative_identity(n):
    a, b = F(-9, 2), F(11, 2)
    lhs = classical_poly("jacobi", n, a, b).derivative()
    assert lhs == F(n + a + b + 1, 2) * classical_poly("jacobi", n - 1, a + 1, b + 1)


@pytest.mark.parametrize("kind,n,a,b", [("hermite", 17, 0, 0), ("laguerre", 20, 2.5, 0),
                                         ("jacobi", 15, 4.5, -3.5)])
def test_matches_scipy_values(kind, n, a, b):
    u = np.linspace(-0.9, 0.9, 11) if kind != "laguerre" else np.linspace(0.1, 30, 11)
    p = classical_poly(kind, n, F(a), F(b))
    ref = {"hermite": lambda: special.eval_hermite(n, u),
           "laguerre": lambda: special.eval_genlaguerre(n, a, u),
           "jacobi": lambda: special.eval_jacobi(n, a, b, u)}[kind]()
    np.testing.assert_allclose(p.evaluate(u, "dd"), ref, rtol=1e-11, atol=1e-11 * np.max(np.abs(ref)))


def test_rejects_unknown_family_and_negative_degree():
    with pytest.raises(ValueError):
        classical_poly("chebyshev", 2)
    with pytest.raises(ValueError):
        classical_poly("hermite", -1)


# ---------------------------------------------------------------------------
# ring properties
# ---------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_division_reconstructs(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


def test_mixed_variables_rejected():
    with pytest.raises(DimensionMismatch):
        P(1, 2, var="xi") + P(1, var="z")


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        P(1, 0, 1).exact_div(P(1, 1))


# ---------------------------------------------------------------------------
# differentiation of prefactored functions
# ---------------------------------------------------------------------------

def test_power_rule():
    rho = F(7, 3)
    d = differentiate(PrefactoredFunction(P(1, var="z"), pow1=rho))
    assert d.pow1 == rho - 1 and d.poly == P(rho, var="z")


def test_exponential_rule():
    d = differentiate(PrefactoredFunction(P(1, var="z"), exp_rate=F(1, 2)))
    assert d.exp_rate == F(1, 2) and d.poly == P(F(1, 2), var="z")


def test_product_rule_against_symbolic_oracle(sym):
    f = PrefactoredFunction(P(1, -1, var="z"), exp_rate=F(-1, 2), pow1=F(1, 2))
    d = differentiate(f)
    assert d.pow1 == F(-1, 2)
    u = sym["U"]
    expected = sp.diff(sym["function"](f), u)
    assert sp.simplify(sym["function"](d) - expected) == 0
    assert d.poly == P(F(1, 2), F(-2), F(1, 2), var="z")


@pytest.mark.parametrize("f", [
    PrefactoredFunction(P(0, -12, 0, 8), exp_rate=F(-1, 2), gaussian=True),
    PrefactoredFunction(P(3, 1, 2, var="y"), pow1=F(5, 2), pow2=F(-3, 2)),
    PrefactoredFunction(P(2, -1, var="z"), exp_rate=F(1, 2), pow1=F(9, 4)),
])
def test_derivative_matches_finite_difference(f):
    lo, hi = (-0.6, 0.6) if f.var == "y" else (0.3, 2.0)
    u = np.linspace(lo, hi, 9)
    h = 1e-5
    fd = (evaluate(f, u + h) - evaluate(f, u - h)) / (2 * h)
    np.testing.assert_allclose(evaluate(differentiate(f), u), fd, rtol=1e-8, atol=1e-9)


# ---------------------------------------------------------------------------
# Wronskians
# ---------------------------------------------------------------------------

def test_single_function_wronskian_is_itself():
    f = PrefactoredFunction(P(1, 2, 3, var="z"), exp_rate=F(-1, 2), pow1=F(3, 2))
    w = wronskian([f])
    np.testing.assert_allclose(evaluate(w, [0.4, 1.7]), evaluate(f, [0.4, 1.7]), rtol=1e-14)


def test_hermite_pair_wronskian_is_two():
    h0, h1 = (PrefactoredFunction(classical_poly("hermite", k)) for k in (0, 1))
    w = wronskian([h0, h1])
    assert w.poly == P(2) and w.exp_rate == 0
    assert evaluate(w, 0.37) == 2.0


def test_repeated_column_gives_zero():
    f = PrefactoredFunction(classical_poly("laguerre", 3, F(5, 2)), exp_rate=F(-1, 2), pow1=F(5, 2))
    assert wronskian([f, f]).is_zero()


def test_antisymmetry():
    spec = SystemSpec("L", 5)
    a, b = eigenfunction(spec, 2), virtual_state(spec, VirtualStateLabel("II", 1))
    wab, wba = wronskian([a, b]), wronskian([b, a])
    assert wab.poly == -wba.poly and wab.pow1 == wba.pow1


def test_mixed_exponential_kinds_rejected():
    f = PrefactoredFunction(P(1, var="z"), exp_rate=F(1, 2))
    g = PrefactoredFunction(P(1, var="z"), exp_rate=F(1, 2), gaussian=True)
    with pytest.raises(DimensionMismatch):
        wronskian([f, g])


def test_bareiss_matches_sympy_determinant():
    rng = np.random.default_rng(4)
    m = [[P(*rng.integers(-4, 5, size=3), var="z") for _ in range(4)] for _ in range(4)]
    u = sp.Symbol("u")
    sm = sp.Matrix(4, 4, lambda i, j: sum(int(c) * u ** k for k, c in enumerate(m[i][j].coeffs)))
    ours = bareiss_det(m)
    assert sp.expand(sm.det() - sum(sp.Rational(str(c)) * u ** k for k, c in enumerate(ours.coeffs))) == 0


@pytest.mark.parametrize("case", ["L_mi", "J_mi", "H_ka", "J_ka"])
def test_wronskian_against_symbolic_oracle(case, sym):
    if case == "L_mi":
        spec = SystemSpec("L", 5)
        fs = [virtual_state(spec, VirtualStateLabel("I", 1)), virtual_state(spec, VirtualStateLabel("II", 2)),
              eigenfunction(spec, 0)]
        pts = [sp.Rational(1, 3), sp.Rational(7, 4), sp.Rational(5)]
    elif case == "J_mi":
        spec = SystemSpec("J", 5, 6)
        fs = [virtual_state(spec, VirtualStateLabel("I", 2)), virtual_state(spec, VirtualStateLabel("II", 3))]
        pts = [sp.Rational(-2, 3), sp.Rational(1, 5), sp.Rational(3, 4)]
    elif case == "H_ka":
        spec = SystemSpec("H")
        fs = [eigenfunction(spec, 4), eigenfunction(spec, 5)]
        pts = [sp.Rational(-3, 2), sp.Rational(1, 7), sp.Rational(2)]
    else:
        spec = SystemSpec("J", 3, 4)
        fs = [eigenfunction(spec, 3), eigenfunction(spec, 4)]
        pts = [sp.Rational(-1, 2), sp.Rational(1, 3), sp.Rational(9, 10)]
    u = sym["Y"] if spec.var == "y" else sym["U"]
    oracle = sym["wronskian"]([sym["function"](f, u) for f in fs], u)
    sym["same"](sym["function"](wronskian(fs), u), oracle, u, pts)


def test_multi_indexed_laguerre_denominator_degree(sym):
    # two seeds with polynomial degrees 1 and 2: the product of prefactors
    # leaves a degree-4 polynomial (degree formula d_I + d_II + M*N)
    spec = SystemSpec("L", 5)
    seeds = [virtual_state(spec, VirtualStateLabel("I", 1)), virtual_state(spec, VirtualStateLabel("II", 2))]
    w = wronskian(seeds)
    assert w.poly.degree == 4
    u = sym["U"]
    oracle = sp.simplify(sym["wronskian"]([sym["function"](f, u) for f in seeds], u)
                         / (u ** sp.Rational(w.pow1.numerator, w.pow1.denominator)))
    assert sp.degree(sp.expand(oracle), u) == 4


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(PrefactoredFunction(P(1)), 0.37) == 1.0
    h3 = PrefactoredFunction(P(0, -12, 0, 8), exp_rate=F(-1, 2), gaussian=True)
    assert evaluate(h3, 1.0) == pytest.approx(-4 * np.exp(-0.5), rel=1e-15)


def test_double_double_agrees_with_double_on_benign_input():
    p = classical_poly("hermite", 10)
    u = np.linspace(-3, 3, 41)
    np.testing.assert_allclose(p.evaluate(u, "dd"), p.evaluate(u, "double"), rtol=1e-10, atol=1e-6)


def test_double_double_beats_double_on_cancellation():
    p = classical_poly("laguerre", 30, F(5, 2))
    u = np.array([12.3, 31.7, 55.1])
    exact = p.evaluate(u, "exact")
    err_dd = np.max(np.abs(p.evaluate(u, "dd") - exact) / np.abs(exact))
    err_d = np.max(np.abs(p.evaluate(u, "double") - exact) / np.abs(exact))
    assert err_dd < 1e-14
    assert err_dd <= err_d


def test_auto_precision_switches_by_degree():
    low, high = classical_poly("hermite", 5), classical_poly("hermite", 20)
    x = np.array([0.3])
    assert low.evaluate(x, "auto") == low.evaluate(x, "double")
    assert high.evaluate(x, "auto") == high.evaluate(x, "dd")


def test_domain_errors():
    f = PrefactoredFunction(P(1, var="z"), pow1=F(1, 2))
    with pytest.raises(DomainError):
        evaluate(f, -1.0)
    g = PrefactoredFunction(P(1, var="y"), pow1=F(-1, 2))
    with pytest.raises(DomainError):
        evaluate(g, 1.0)
