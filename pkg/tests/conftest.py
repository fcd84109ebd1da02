"""Shared helpers: sympy images of exact objects, used as an independent oracle."""
import sympy as sp
import pytest

from swkblab.exact_poly import ExactPolynomial, PrefactoredFunction

U = sp.Symbol("u", positive=True)
Y = sp.Symbol("y")


def sym_poly(p: ExactPolynomial, u=U):
    return sum(sp.Rational(c.numerator, c.denominator) * u ** k for k, c in enumerate(p.coeffs))


def sym_function(f: PrefactoredFunction, u=None):
    """sympy expression of ``f`` in its own variable."""
    u = u if u is not None else (Y if f.var == "y" else U)
    rate = sp.Rational(f.exp_rate.numerator, f.exp_rate.denominator)
    m = 2 if f.gaussian else 1
    p1 = sp.Rational(f.pow1.numerator, f.pow1.denominator)
    p2 = sp.Rational(f.pow2.numerator, f.pow2.denominator)
    if f.var == "y":
        pre = ((1 - u) / 2) ** p1 * ((1 + u) / 2) ** p2
    else:
        pre = u ** p1
    return sp.exp(rate * u ** m) * pre * sym_poly(f.poly, u)


def sym_wronskian(exprs, u):
    n = len(exprs)
    return sp.Matrix(n, n, lambda i, j: sp.diff(exprs[j], u, i)).det()


def assert_same_function(expr_a, expr_b, u, points, rel=1e-25):
    """Numeric equality at rational sample points with 40-digit arithmetic."""
    for p in points:
        a = sp.N(expr_a.subs(u, p), 40)
        b = sp.N(expr_b.subs(u, p), 40)
        assert abs(a - b) <= rel * max(1, abs(b)), (p, a, b)


@pytest.fixture
def sym():
    return {"U": U, "Y": Y, "poly": sym_poly, "function": sym_function,
            "wronskian": sym_wronskian, "same": assert_same_function}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
