"""Turning points, endpoint-safe quadrature and the (S)WKB integrals.

The SWKB integral of level ``n`` is

    I = sum_i  int_{a_i}^{b_i} sqrt(E - w2(u)) mu(u) du

over every interval where ``E > w2``; ``w2`` is a reduced squared
superpotential and ``mu`` the matching measure (1, ``1/sqrt(z)`` or
``1/sqrt(1-y**2)``). For shape-invariant systems ``I = n*pi`` exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .deform import DeformedSystem, EvaluableFunction, logderiv_sq, superpotential
from .errors import NoClassicalRegion, QuadratureNonConvergence
from .systems import SystemSpec, energy, energy_dimensionful, potential

SCAN_POINTS = 4000
REFINE = 10
MAX_NODES = 2 ** 20
GL_ORDER = 20


@dataclass(frozen=True)
class TurningIntervals:
    intervals: tuple[tuple[float, float], ...]
    energy: float

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


@dataclass(frozen=True)
class SWKBResult:
    n: int
    breve_n: int
    I: float
    err: float
    intervals: TurningIntervals = field(repr=False)

    @property
    def I_over_pi(self) -> float:
        return self.I / math.pi

    @property
    def interval_count(self) -> int:
        return len(self.intervals)


def relative_error(I: float, n: int) -> float:
    """``(I - n pi)/I``, taken as 0 for the ground state."""
    if n == 0:
        return 0.0
    return (I - n * math.pi) / I


# ---------------------------------------------------------------------------
# turning points
# ---------------------------------------------------------------------------

def _scan_window(w2: Callable, E: float, domain: tuple[float, float], var: str):
    """Map ``t -> u`` on a finite ``t`` window whose ends lie in the forbidden region."""
    lo, hi = domain

    def above(u):
        val = w2(np.array([u]))[0]
        return np.isfinite(val) and val > E

    if np.isfinite(lo) and np.isfinite(hi):
        # cosine map clusters points at both walls; t is uniform in the angle
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        to_u = lambda t: mid - half * np.cos(t)
        d = 1e-2
        while not (above(to_u(d)) and above(to_u(np.pi - d))):
            d *= 0.5
            if d < 1e-12:
                raise NoClassicalRegion("walls never exceed the energy")
        return to_u, d, np.pi - d
    scale = 4.0 if var == "z" else 1.0
    b = scale * (math.sqrt(max(E, 0.0)) + 4.0) ** (2 if var == "z" else 1)
    while not above(b):
        b *= 2.0
        if b > 1e8:
            raise NoClassicalRegion("w2 never exceeds the energy at large u")
    if not np.isfinite(lo):
        while not above(-b):
            b *= 2.0
            if b > 1e8:
                raise NoClassicalRegion("w2 never exceeds the energy at large |u|")
        return (lambda t: t), -b, b
    # half-line: uniform in sqrt(u - lo) for z, uniform in u otherwise
    if var == "z":
        to_u = lambda t: lo + t * t
        tb = math.sqrt(b - lo)
    else:
        to_u = lambda t: lo + t
        tb = b - lo
    a = tb * 1e-3
    while not above(to_u(a)):
        a *= 0.5
        if a < 1e-14 * tb:
            raise NoClassicalRegion("w2 never exceeds the energy near the wall")
    return to_u, a, tb


def find_turning_intervals(w2: EvaluableFunction, E: float, domain: tuple[float, float] | None = None,
                           grid_points: int = SCAN_POINTS) -> TurningIntervals:
    """All maximal intervals where ``E - w2 > 0``, endpoints polished by bisection."""
    domain = domain or w2.domain
    f = w2.func if isinstance(w2, EvaluableFunction) else w2
    var = w2.var if isinstance(w2, EvaluableFunction) else "x"
    to_u, ta, tb = _scan_window(f, E, domain, var)
    t = np.linspace(ta, tb, grid_points)
    g = E - f(to_u(t))
    pos = g > 0
    change = np.nonzero(pos[1:] != pos[:-1])[0]
    if change.size:
        # refine the cells around every detected change to catch close root pairs
        cells = np.unique(np.clip(np.concatenate([change + k for k in (-2, -1, 0, 1, 2)]),
                                  0, grid_points - 2))
        extra = (t[cells, None] + (t[cells + 1] - t[cells])[:, None]
                 * np.linspace(0, 1, REFINE + 1)[None, 1:-1]).ravel()
        t = np.sort(np.concatenate([t, extra]))
        g = E - f(to_u(t))
        pos = g > 0
    if not np.any(pos):
        raise NoClassicalRegion(f"no classically allowed region at E={E}")
    edges = np.diff(pos.astype(np.int8))
    starts = list(np.nonzero(edges == 1)[0])
    ends = list(np.nonzero(edges == -1)[0])
    width = abs(to_u(tb) - to_u(ta))

    def root(i):
        ua, ub = float(to_u(t[i])), float(to_u(t[i + 1]))
        lo_, hi_ = min(ua, ub), max(ua, ub)
        h = lambda u: E - f(np.array([u]))[0]
        if h(lo_) == 0:
            return lo_
        if h(hi_) == 0:
            return hi_
        return brentq(h, lo_, hi_, xtol=max(1e-13 * width, 1e-300), rtol=4 * np.finfo(float).eps,
                      maxiter=500)

    intervals = []
    for s, e in zip(starts, ends):
        a, b = root(s), root(e)
        intervals.append((min(a, b), max(a, b)))
    intervals.sort()
    return TurningIntervals(tuple(intervals), float(E))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gl(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panel_gl(g: Callable, lo: float, hi: float, panels: int) -> float:
    x, w = _gl(GL_ORDER)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(wts, g(pts)))


def _tanh_sinh(f: Callable, a: float, b: float, tol: float, budget: int) -> tuple[float, int]:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    used, prev = 0, None
    h = 0.5
    while used < budget:
        k = np.arange(-int(6.0 / h), int(6.0 / h) + 1)
        t = k * h
        s = 0.5 * np.pi * np.sinh(t)
        x = np.tanh(s)
        w = 0.5 * np.pi * np.cosh(t) / np.cosh(s) ** 2
        keep = np.abs(x) < 1.0
        u = mid + half * x[keep]
        val = float(h * half * np.dot(w[keep], f(u)))
        used += int(keep.sum())
        if prev is not None and abs(val - prev) < tol:
            return val, used
        prev, h = val, h / 2
    raise QuadratureNonConvergence(f"tanh-sinh did not converge on ({a}, {b})")


def quadrature(f: Callable, a: float, b: float, tol: float = 1e-10) -> float:
    """Integrate a function with square-root zeros at both ends.

    Substitutes ``u = (a+b)/2 + (b-a)/2 sin(theta)``, which makes such
    integrands smooth, then doubles the number of Gauss-Legendre panels until
    successive estimates agree within ``tol``. Falls back to tanh-sinh.
    """
    if b <= a:
        return 0.0
    mid, half = 0.5 * (a + b), 0.5 * (b - a)

    def g(theta):
        return f(mid + half * np.sin(theta)) * half * np.cos(theta)

    used = 0
    panels = 1
    prev = _panel_gl(g, -0.5 * np.pi, 0.5 * np.pi, panels)
    used += GL_ORDER
    while used < MAX_NODES // 2:
        panels *= 2
        cur = _panel_gl(g, -0.5 * np.pi, 0.5 * np.pi, panels)
        used += GL_ORDER * panels
        if abs(cur - prev) < max(tol, 1e-14 * abs(cur)):
            return cur
        prev = cur
    val, _ = _tanh_sinh(f, a, b, max(tol, 1e-14 * abs(prev)), MAX_NODES - used)
    return val


def integrate_intervals(integrand: Callable, intervals: TurningIntervals, tol: float = 1e-10) -> float:
    return sum(quadrature(integrand, a, b, tol) for a, b in intervals)


# ---------------------------------------------------------------------------
# SWKB / WKB
# ---------------------------------------------------------------------------

def _measure(form: str) -> Callable:
    if form == "z":
        return lambda u: 1.0 / np.sqrt(u)
    if form == "y":
        return lambda u: 1.0 / np.sqrt(1.0 - u * u)
    return lambda u: np.ones_like(u)


def reduced_energy(dsys: DeformedSystem, level: int, form: str) -> float:
    """Energy of base level ``level`` in the unit matching the reduced form."""
    if form == "z":
        return float(level)
    return energy(dsys.base, level)


def swkb_integral(dsys: DeformedSystem, n: int, form: str | None = None,
                  tol: float = 1e-10) -> SWKBResult:
    """SWKB integral for the state with ``n`` nodes, summed over all classical intervals."""
    if n < 0:
        raise ValueError("n must be non-negative")
    form = form or dsys.default_form()
    level = dsys.level_index(n)
    if n == 0:
        return SWKBResult(0, level, 0.0, 0.0, TurningIntervals((), 0.0))
    w2 = logderiv_sq(dsys, form)
    E = reduced_energy(dsys, level, form)
    intervals = find_turning_intervals(w2, E)
    mu = _measure(form)

    def integrand(u):
        return np.sqrt(np.clip(E - w2.func(u), 0.0, None)) * mu(u)

    I = integrate_intervals(integrand, intervals, tol)
    return SWKBResult(n, level, I, relative_error(I, n), intervals)


def swkb_integral_dimensionful(dsys: DeformedSystem, n: int, hbar: float, omega: float,
                               tol: float = 1e-12) -> float:
    """``(1/hbar) int sqrt(E_n - W(x)**2) dx`` in physical units.

    Used to check that the reduced integral does not depend on ``hbar`` or
    ``omega``.
    """
    if n == 0:
        return 0.0
    level = dsys.level_index(n)
    E = energy_dimensionful(dsys.base.with_units(hbar, omega), level)
    w2 = EvaluableFunction(lambda x: superpotential(dsys, x, hbar, omega) ** 2,
                           dsys.base.x_domain, "x")
    intervals = find_turning_intervals(w2, E)

    def integrand(x):
        return np.sqrt(np.clip(E - w2.func(x), 0.0, None))

    return integrate_intervals(integrand, intervals, tol) / hbar


def wkb_integral(spec: SystemSpec, n: int, tol: float = 1e-10) -> float:
    """``int sqrt(E_n - V(x)) dx`` between the turning points of the base potential.

    ``hbar = omega = 1``; the exact WKB rule would give ``(n + 1/2) pi``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    E = energy(spec, n) * (4.0 if spec.family == "J" else 1.0)
    V = EvaluableFunction(lambda x: potential(spec, x), spec.x_domain, "x")
    intervals = find_turning_intervals(V, E)

    def integrand(x):
        return np.sqrt(np.clip(E - potential(spec, x), 0.0, None))

    return integrate_intervals(integrand, intervals, tol)


def sweep(dsys: DeformedSystem, ns, form: str | None = None, tol: float = 1e-10) -> list[SWKBResult]:
    return [swkb_integral(dsys, n, form, tol) for n in ns]
