"""Exact rational polynomials, classical orthogonal families and Wronskians.

Everything algebraic is done with :class:`fractions.Fraction` coefficients so
that Wronskian determinants of high-degree polynomials are free of
cancellation. Numerical evaluation happens only at the very end, either in
plain double precision or in double-double arithmetic.

Three canonical variables are used throughout:

``xi``
    the scaled coordinate of the harmonic oscillator,
``z``
    ``xi**2`` for the radial oscillator,
``y``
    ``cos(2x)`` for the Poschl-Teller potential.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from . import _dd
from .errors import DimensionMismatch, DomainError

VARIABLES = ("xi", "z", "y")

# degree above which "auto" precision switches to double-double; Laguerre
# Wronskians of degree 30 already lose ~13 digits in plain double
DD_DEGREE_THRESHOLD = 12


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_var(var: str) -> str:
    if var not in VARIABLES:
        raise ValueError(f"unknown variable tag {var!r}; expected one of {VARIABLES}")
    return var


@dataclass(frozen=True, eq=False)
class ExactPolynomial:
    """Dense polynomial with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]
    var: str = "xi"

    def __post_init__(self):
        _check_var(self.var)
        cs = [_frac(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c, var: str = "xi") -> "ExactPolynomial":
        return cls((_frac(c),), var)

    @classmethod
    def monomial(cls, k: int, var: str = "xi", c=1) -> "ExactPolynomial":
        return cls((Fraction(0),) * k + (_frac(c),), var)

    @classmethod
    def zero(cls, var: str = "xi") -> "ExactPolynomial":
        return cls((), var)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    # -- ring operations ---------------------------------------------------
    def _coerce(self, other) -> "ExactPolynomial":
        if isinstance(other, ExactPolynomial):
            if other.var != self.var:
                raise DimensionMismatch(f"cannot combine {self.var} and {other.var} polynomials")
            return other
        return ExactPolynomial.constant(other, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ExactPolynomial(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPolynomial(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPolynomial.constant(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ExactPolynomial.constant(other, self.var).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return ExactPolynomial.zero(self.var), self
        quo = [Fraction(0)] * dq
        lead = other.coeffs[-1]
        for k in range(dq - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return ExactPolynomial(tuple(quo), self.var), ExactPolynomial(tuple(rem), self.var)

    def exact_div(self, other: "ExactPolynomial") -> "ExactPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k), self.var)

    def compose_negate(self) -> "ExactPolynomial":
        """Return p(-u)."""
        return ExactPolynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)), self.var)

    def __call__(self, u):
        """Exact evaluation at a rational point."""
        u = _frac(u)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return f"ExactPolynomial(0, var={self.var!r})"
        terms = [f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"ExactPolynomial({' + '.join(terms)})"

    # -- numerics ----------------------------------------------------------
    @cached_property
    def _float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs] or [0.0])

    @cached_property
    def _dd_coeffs(self) -> tuple[np.ndarray, np.ndarray]:
        pairs = [_dd.fraction_to_dd(c) for c in self.coeffs] or [(0.0, 0.0)]
        return np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])

    def evaluate(self, u, precision: str = "auto"):
        """Numerical evaluation at float point(s) ``u``.

        ``precision`` is ``"double"``, ``"double_double"`` (alias ``"dd"``),
        ``"exact"`` (rational arithmetic on the binary value of ``u``) or
        ``"auto"``, which picks double-double above degree 12.
        """
        precision = _resolve_precision(precision, self.degree)
        arr = np.asarray(u, dtype=float)
        if precision == "double":
            c = self._float_coeffs
            acc = np.full(arr.shape, c[-1])
            with np.errstate(over="ignore", invalid="ignore"):
                for ck in c[-2::-1]:
                    acc = acc * arr + ck
            out = acc
        elif precision == "double_double":
            hi, lo = self._dd_coeffs
            out = _dd.horner_dd(hi, lo, arr)
        else:
            flat = [float(self(Fraction(float(v)))) for v in arr.ravel()]
            out = np.array(flat).reshape(arr.shape)
        return out if np.ndim(u) else float(out)


def _resolve_precision(precision: str, degree: int) -> str:
    if precision == "dd":
        return "double_double"
    if precision == "auto":
        return "double_double" if degree > DD_DEGREE_THRESHOLD else "double"
    if precision not in ("double", "double_double", "exact"):
        raise ValueError(f"unknown precision {precision!r}")
    return precision


# ---------------------------------------------------------------------------
# classical families
# ---------------------------------------------------------------------------

def _gen_binom(top: Fraction, k: int) -> Fraction:
    """Generalised binomial coefficient C(top, k) for rational ``top``."""
    out = Fraction(1)
    for i in range(k):
        out *= (top - i)
        out /= (i + 1)
    return out


def classical_poly(kind: str, n: int, alpha=0, beta=0, var: str | None = None) -> ExactPolynomial:
    """Hermite ``H_n``, Laguerre ``L_n^(alpha)`` or Jacobi ``P_n^(alpha,beta)``.

    Hermite and Laguerre use their three-term recurrences. Jacobi uses the
    finite binomial sum, which stays valid for the degenerate negative
    parameters met by virtual-state seeds (where the recurrence divides by
    zero). Parameters may be any rationals.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    alpha, beta = _frac(alpha), _frac(beta)
    if kind == "hermite":
        var = var or "xi"
        x = ExactPolynomial.monomial(1, var)
        prev, cur = ExactPolynomial.zero(var), ExactPolynomial.constant(1, var)
        for k in range(n):
            prev, cur = cur, 2 * x * cur - 2 * k * prev
        return cur
    if kind == "laguerre":
        var = var or "z"
        x = ExactPolynomial.monomial(1, var)
        prev, cur = ExactPolynomial.zero(var), ExactPolynomial.constant(1, var)
        for k in range(n):
            nxt = ((2 * k + 1 + alpha) - x) * cur - (k + alpha) * prev
            prev, cur = cur, nxt * Fraction(1, k + 1)
        return cur
    if kind == "jacobi":
        var = var or "y"
        xm = ExactPolynomial((Fraction(-1, 2), Fraction(1, 2)), var)  # (y-1)/2
        xp = ExactPolynomial((Fraction(1, 2), Fraction(1, 2)), var)  # (y+1)/2
        out = ExactPolynomial.zero(var)
        for s in range(n + 1):
            c = _gen_binom(n + alpha, n - s) * _gen_binom(n + beta, s)
            if c:
                out = out + c * (xm ** s) * (xp ** (n - s))
        return out
    raise ValueError(f"unknown polynomial family {kind!r}")


# ---------------------------------------------------------------------------
# prefactored functions
# ---------------------------------------------------------------------------

def _bases(var: str) -> tuple[ExactPolynomial, ExactPolynomial | None]:
    if var == "y":
        return (ExactPolynomial((Fraction(1, 2), Fraction(-1, 2)), var),
                ExactPolynomial((Fraction(1, 2), Fraction(1, 2)), var))
    return ExactPolynomial.monomial(1, var), None


@dataclass(frozen=True, eq=False)
class PrefactoredFunction:
    """``exp(rate * u**m) * B1(u)**pow1 * B2(u)**pow2 * poly(u)``.

    For ``xi`` and ``z`` the bases are ``B1 = u`` and ``B2 = 1``; for ``y``
    they are ``(1-y)/2`` and ``(1+y)/2``. ``m`` is 2 when ``gaussian`` is set
    (the ``exp(-xi**2/2)`` factor of oscillator states) and 1 otherwise.
    """

    poly: ExactPolynomial
    exp_rate: Fraction = Fraction(0)
    pow1: Fraction = Fraction(0)
    pow2: Fraction = Fraction(0)
    gaussian: bool = False
    var: str = field(default="")

    def __post_init__(self):
        var = self.var or self.poly.var
        _check_var(var)
        if self.poly.var != var:
            raise DimensionMismatch("poly variable differs from function variable")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "exp_rate", _frac(self.exp_rate))
        object.__setattr__(self, "pow1", _frac(self.pow1))
        object.__setattr__(self, "pow2", _frac(self.pow2))
        if self.exp_rate == 0:
            object.__setattr__(self, "gaussian", False)
        if var != "y" and self.pow2 != 0:
            raise ValueError("pow2 is only meaningful for the y variable")

    @classmethod
    def from_poly(cls, poly: ExactPolynomial) -> "PrefactoredFunction":
        return cls(poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def scaled(self, c) -> "PrefactoredFunction":
        return PrefactoredFunction(self.poly * _frac(c), self.exp_rate, self.pow1, self.pow2,
                                   self.gaussian, self.var)

    def same_function(self, other: "PrefactoredFunction") -> bool:
        return (self.var == other.var and self.poly == other.poly and self.exp_rate == other.exp_rate
                and self.gaussian == other.gaussian and self.pow1 == other.pow1
                and self.pow2 == other.pow2)

    def __repr__(self):
        return (f"PrefactoredFunction(var={self.var!r}, exp_rate={self.exp_rate}, "
                f"gaussian={self.gaussian}, pow1={self.pow1}, pow2={self.pow2}, poly={self.poly!r})")

    # -- numerics ----------------------------------------------------------
    def _check_domain(self, u: np.ndarray):
        if self.var == "y":
            bad = False
            if self.pow1 != 0 and (self.pow1.denominator != 1 or self.pow1 < 0):
                bad = bad or np.any(u >= 1)
            if self.pow2 != 0 and (self.pow2.denominator != 1 or self.pow2 < 0):
                bad = bad or np.any(u <= -1)
            if bad:
                raise DomainError("y must lie in (-1, 1) for this prefactor")
        elif self.pow1 != 0:
            if self.pow1.denominator != 1 and np.any(u <= 0):
                raise DomainError(f"{self.var} must be positive for a fractional power")
            if self.pow1 < 0 and np.any(u == 0):
                raise DomainError(f"prefactor singular at {self.var}=0")

    def prefactor(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        self._check_domain(u)
        m = 2 if self.gaussian else 1
        out = np.exp(float(self.exp_rate) * u ** m)
        b1, b2 = _bases(self.var)
        if self.pow1:
            out = out * np.power(b1.evaluate(u, "double"), float(self.pow1))
        if b2 is not None and self.pow2:
            out = out * np.power(b2.evaluate(u, "double"), float(self.pow2))
        return out

    def log_derivatives(self, u, precision: str = "auto") -> tuple[np.ndarray, np.ndarray]:
        """First and second ``u``-derivatives of ``ln|f(u)|``.

        Computed term by term from the exact data so no quotient of nearly
        equal numbers is ever differentiated numerically.
        """
        u = np.asarray(u, dtype=float)
        self._check_domain(u)
        p = self.poly
        dp = p.derivative()
        d2p = dp.derivative()
        pv = p.evaluate(u, precision)
        r1 = dp.evaluate(u, precision) / pv
        r2 = d2p.evaluate(u, precision) / pv
        l1 = np.array(r1, dtype=float)
        l2 = r2 - r1 * r1
        rate = float(self.exp_rate)
        if rate:
            if self.gaussian:
                l1 = l1 + 2 * rate * u
                l2 = l2 + 2 * rate
            else:
                l1 = l1 + rate
        a, b = float(self.pow1), float(self.pow2)
        if self.var == "y":
            if a:
                l1 = l1 - a / (1 - u)
                l2 = l2 - a / (1 - u) ** 2
            if b:
                l1 = l1 + b / (1 + u)
                l2 = l2 - b / (1 + u) ** 2
        elif a:
            l1 = l1 + a / u
            l2 = l2 - a / u ** 2
        return l1, l2


def evaluate(f: PrefactoredFunction, u, precision: str = "auto"):
    """Value of ``f`` at ``u`` (scalar or array)."""
    arr = np.asarray(u, dtype=float)
    pre = f.prefactor(arr)
    val = pre * f.poly.evaluate(arr, precision)
    return val if np.ndim(u) else float(val)


def differentiate(f: PrefactoredFunction) -> PrefactoredFunction:
    """Exact derivative with respect to the function's own variable.

    Every base with a nonzero exponent loses one power; the polynomial part
    absorbs the rest of the product rule.
    """
    var = f.var
    u = ExactPolynomial.monomial(1, var)
    b1, b2 = _bases(var)
    active = []
    if f.pow1 != 0:
        active.append((b1, f.pow1))
    if b2 is not None and f.pow2 != 0:
        active.append((b2, f.pow2))
    prod_all = ExactPolynomial.constant(1, var)
    for base, _ in active:
        prod_all = prod_all * base
    p = f.poly
    new = p.derivative() * prod_all
    if f.exp_rate:
        inner = u * (2 * f.exp_rate) if f.gaussian else ExactPolynomial.constant(f.exp_rate, var)
        new = new + p * inner * prod_all
    for i, (base, expo) in enumerate(active):
        others = ExactPolynomial.constant(expo, var) * base.derivative()
        for j, (b, _) in enumerate(active):
            if j != i:
                others = others * b
        new = new + p * others
    pow1 = f.pow1 - 1 if f.pow1 != 0 else f.pow1
    pow2 = f.pow2 - 1 if (b2 is not None and f.pow2 != 0) else f.pow2
    return PrefactoredFunction(new, f.exp_rate, pow1, pow2, f.gaussian, var)


def bareiss_det(matrix: Sequence[Sequence[ExactPolynomial]]) -> ExactPolynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    var = m[0][0].var
    sign = 1
    prev = ExactPolynomial.constant(1, var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return ExactPolynomial.zero(var)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _strip_base(poly: ExactPolynomial, base: ExactPolynomial) -> tuple[ExactPolynomial, int]:
    count = 0
    while not poly.is_zero():
        q, r = poly.divmod(base)
        if not r.is_zero():
            break
        poly, count = q, count + 1
    return poly, count


def wronskian(fs: Sequence[PrefactoredFunction], var: str | None = None) -> PrefactoredFunction:
    """Exact Wronskian ``det(d^j f_k / du^j)`` in the functions' variable.

    Column prefactors are pulled out by multilinearity and each row ``j`` is
    multiplied by ``(B1*B2)**j`` so every entry is a polynomial; the
    polynomial determinant is then expanded with Bareiss elimination.
    The result is canonicalised so that ``poly`` carries no factor of the
    bases.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one function")
    var = var or fs[0].var
    for f in fs:
        if f.var != var:
            raise DimensionMismatch(f"Wronskian in {var} got a function of {f.var}")
    gauss = {f.gaussian for f in fs if f.exp_rate != 0}
    if len(gauss) > 1:
        raise DimensionMismatch("cannot combine exp(c*u) and exp(c*u**2) columns")
    gaussian = gauss.pop() if gauss else False
    n = len(fs)
    b1, b2 = _bases(var)
    cols = []
    for f in fs:
        col, g = [], f
        for j in range(n):
            entry = g.poly
            missing1 = j - (f.pow1 - g.pow1)
            if missing1:
                entry = entry * b1 ** int(missing1)
            if b2 is not None:
                missing2 = j - (f.pow2 - g.pow2)
                if missing2:
                    entry = entry * b2 ** int(missing2)
            col.append(entry)
            if j < n - 1:
                g = differentiate(g)
        cols.append(col)
    matrix = [[cols[k][j] for k in range(n)] for j in range(n)]
    det = bareiss_det(matrix)
    shift = Fraction(n * (n - 1), 2)
    rate = sum((f.exp_rate for f in fs), Fraction(0))
    pow1 = sum((f.pow1 for f in fs), Fraction(0)) - shift
    pow2 = sum((f.pow2 for f in fs), Fraction(0)) - shift if b2 is not None else Fraction(0)
    if det.is_zero():
        return PrefactoredFunction(det, var=var)
    det, c1 = _strip_base(det, b1)
    pow1 += c1
    if b2 is not None:
        det, c2 = _strip_base(det, b2)
        pow2 += c2
    return PrefactoredFunction(det, rate, pow1, pow2, gaussian, var)
