"""Multi-indexed and Krein-Adler deformations of the base systems.

A deformed system is stored entirely as exact data: the seed Wronskian
(which defines the deformed potential) and the ground state written as
``prefactor * gs_num / gs_den``. Log-derivatives are assembled term by term
from those pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InvalidParameters, SingularDeformation, UnsupportedFamily
from .exact_poly import ExactPolynomial, PrefactoredFunction, wronskian
from .systems import (HALF, SystemSpec, VirtualStateLabel, breve, eigenfunction, energy,
                      ground_prefactor, polynomial_part, potential, validate_deformation,
                      virtual_state, x_to_u)

FORMS = ("xi", "z", "y")


@dataclass(frozen=True)
class EvaluableFunction:
    """A real function of one variable on an open interval."""

    func: Callable[[np.ndarray], np.ndarray]
    domain: tuple[float, float]
    var: str

    def __call__(self, u):
        arr = np.asarray(u, dtype=float)
        out = self.func(arr)
        return out if np.ndim(u) else float(out)


@dataclass(frozen=True, eq=False)
class DeformedSystem:
    """Exact description of a deformed system.

    ``kind`` is ``"identity"``, ``"multi_indexed"`` or ``"krein_adler"``.
    ``den`` is the Wronskian of the seed functions in the family variable;
    ``n_seeds`` its size. The ground state is
    ``gs_prefactor * gs_num / gs_den`` up to a constant.
    """

    base: SystemSpec
    kind: str
    den: PrefactoredFunction
    n_seeds: int
    gs_num: PrefactoredFunction
    gs_den: PrefactoredFunction
    gs_prefactor: PrefactoredFunction
    d_I: tuple[int, ...] = ()
    d_II: tuple[int, ...] = ()
    d: int | None = None
    precision: str = field(default="auto")

    @property
    def family(self) -> str:
        return self.base.family

    @property
    def var(self) -> str:
        return self.base.var

    def level_index(self, n: int) -> int:
        """Level of the base spectrum reached by the state with ``n`` nodes."""
        return breve(n, self.d) if self.kind == "krein_adler" else n

    def energy(self, n: int) -> float:
        return energy(self.base, self.level_index(n))

    def default_form(self) -> str:
        if self.family == "H":
            return "xi"
        if self.family == "J":
            return "y"
        return "z" if self.kind == "krein_adler" else "xi"

    def label(self) -> str:
        f = self.family
        if self.kind == "identity":
            return f"{f} (undeformed)"
        if self.kind == "krein_adler":
            return f"KA-{f} D={{{self.d},{self.d + 1}}}"
        return f"MI-{f} D_I={set(self.d_I) or '{}'} D_II={set(self.d_II) or '{}'}"

    def ground_log_derivatives(self, u, precision: str | None = None):
        """``d/du ln|phi_0|`` and its derivative, in the family variable."""
        prec = precision or self.precision
        a1, a2 = self.gs_prefactor.log_derivatives(u, prec)
        b1, b2 = self.gs_num.log_derivatives(u, prec)
        c1, c2 = self.gs_den.log_derivatives(u, prec)
        return a1 + b1 - c1, a2 + b2 - c2


def _constant_one(var: str) -> PrefactoredFunction:
    return PrefactoredFunction(ExactPolynomial.constant(1, var))


def identity(spec: SystemSpec) -> DeformedSystem:
    """The undeformed system, wrapped so it flows through the same pipeline."""
    one = _constant_one(spec.var)
    return DeformedSystem(spec, "identity", one, 0, ground_prefactor(spec), one, one)


def build_multi_indexed(spec: SystemSpec, d_I=(), d_II=(), check: bool = True,
                        grid_points: int = 10_000) -> DeformedSystem:
    """Multi-indexed L or J system seeded by virtual states ``D_I`` and ``D_II``."""
    d_I, d_II = tuple(int(d) for d in d_I), tuple(int(d) for d in d_II)
    if spec.family == "H":
        raise UnsupportedFamily("multi-indexed deformations need the L or J system")
    problems = validate_deformation(spec, d_I, d_II)
    if problems:
        raise InvalidParameters(problems)
    if not d_I and not d_II:
        return identity(spec)
    seeds = ([virtual_state(spec, VirtualStateLabel("I", d)) for d in d_I]
             + [virtual_state(spec, VirtualStateLabel("II", d)) for d in d_II])
    den = wronskian(seeds)
    num = wronskian(seeds + [eigenfunction(spec, 0)])
    k = Fraction(len(seeds), 2)
    one = ExactPolynomial.constant(1, spec.var)
    if spec.family == "L":
        pre = PrefactoredFunction(one, pow1=k)
    else:
        # |-2(1-y^2)|^{k} = const * ((1-y)/2)^k ((1+y)/2)^k
        pre = PrefactoredFunction(one, pow1=k, pow2=k)
    dsys = DeformedSystem(spec, "multi_indexed", den, len(seeds), num, den, pre, d_I=d_I, d_II=d_II)
    if check:
        _require_regular(dsys, grid_points)
    return dsys


def build_krein_adler(spec: SystemSpec, d: int, check: bool = True,
                      grid_points: int = 10_000) -> DeformedSystem:
    """Delete levels ``d`` and ``d+1`` of a base system (``d = 0`` means no deletion)."""
    if d < 0:
        raise ValueError("d must be a positive integer")
    if d == 0:
        return identity(spec)
    den = wronskian([eigenfunction(spec, d), eigenfunction(spec, d + 1)])
    pd = PrefactoredFunction(polynomial_part(spec, d))
    pd1 = PrefactoredFunction(polynomial_part(spec, d + 1))
    one = _constant_one(spec.var)
    gs_num = wronskian([pd, pd1, one])
    gs_den = wronskian([pd, pd1])
    unit = ExactPolynomial.constant(1, spec.var)
    if spec.family == "H":
        pre = PrefactoredFunction(unit, exp_rate=-HALF, gaussian=True)
    elif spec.family == "L":
        pre = PrefactoredFunction(unit, exp_rate=-HALF, pow1=(spec.g + 2) / 2)
    else:
        pre = PrefactoredFunction(unit, pow1=(spec.g + 2) / 2, pow2=(spec.h + 2) / 2)
    dsys = DeformedSystem(spec, "krein_adler", den, 2, gs_num, gs_den, pre, d=d)
    if check:
        _require_regular(dsys, grid_points)
    return dsys


def build(spec: SystemSpec, kind: str, d_I=(), d_II=(), d: int | None = None, **kw) -> DeformedSystem:
    if kind in ("identity", "none"):
        return identity(spec)
    if kind in ("multi_indexed", "mi"):
        return build_multi_indexed(spec, d_I, d_II, **kw)
    if kind in ("krein_adler", "ka"):
        return build_krein_adler(spec, d, **kw)
    raise ValueError(f"unknown deformation kind {kind!r}")


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------

def _cauchy_bound(p: ExactPolynomial) -> float:
    if p.degree < 1:
        return 1.0
    lead = abs(p.leading)
    return 1.0 + max(float(abs(c) / lead) for c in p.coeffs[:-1])


def scan_grid(f: PrefactoredFunction, domain: tuple[float, float], grid_points: int) -> np.ndarray:
    """Interior points of ``domain`` covering every real root of ``f.poly``."""
    lo, hi = domain
    if np.isfinite(lo) and np.isfinite(hi):
        t = np.linspace(0.0, np.pi, grid_points + 2)[1:-1]
        return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(t)
    bound = min(_cauchy_bound(f.poly), 1e6)
    if not np.isfinite(lo):
        return np.linspace(-bound, bound, grid_points)
    # half-line: uniform in sqrt(u) resolves both ends
    s = np.linspace(0.0, np.sqrt(bound), grid_points + 1)[1:]
    return lo + s * s


def has_interior_sign_change(f: PrefactoredFunction, domain: tuple[float, float],
                             grid_points: int = 10_000, precision: str = "auto") -> bool:
    lo, hi = domain
    if f.var == "xi" and f.pow1 != 0 and lo < 0 < hi:
        # a factor xi**p stripped from the polynomial still vanishes at xi = 0
        return True
    u = scan_grid(f, domain, grid_points)
    vals = f.poly.evaluate(u, precision)
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return bool(np.any(signs[1:] != signs[:-1]))


def check_nodeless(dsys: DeformedSystem, grid_points: int = 10_000) -> bool:
    """True iff the seed Wronskian keeps one sign inside the physical domain."""
    if grid_points < 1000:
        raise ValueError("grid_points must be at least 1000")
    return not has_interior_sign_change(dsys.den, dsys.base.u_domain, grid_points, dsys.precision)


def _require_regular(dsys: DeformedSystem, grid_points: int):
    dom = dsys.base.u_domain
    if has_interior_sign_change(dsys.den, dom, grid_points, dsys.precision):
        raise SingularDeformation(f"{dsys.label()}: seed Wronskian has interior zeros")
    for part in (dsys.gs_num, dsys.gs_den):
        if has_interior_sign_change(part, dom, grid_points, dsys.precision):
            raise SingularDeformation(f"{dsys.label()}: ground state has interior zeros")


# ---------------------------------------------------------------------------
# superpotential and deformed potential
# ---------------------------------------------------------------------------

def logderiv_sq(dsys: DeformedSystem, form: str | None = None) -> EvaluableFunction:
    """Squared ground-state log-derivative in one of the reduced forms.

    ``"xi"``: ``(d/dxi ln|phi_0|)**2`` for H and L (argument ``xi``);
    ``"z"``: ``z (d/dz ln|phi_0|)**2`` for L (argument ``z``);
    ``"y"``: ``(1-y**2)(d/dy ln|phi_0|)**2`` for J (argument ``y``).
    """
    form = form or dsys.default_form()
    fam = dsys.family
    if form == "xi" and fam == "H":
        def w2(u):
            l1, _ = dsys.ground_log_derivatives(u)
            return l1 * l1
        return EvaluableFunction(w2, (-np.inf, np.inf), "xi")
    if form == "xi" and fam == "L":
        def w2(xi):
            z = xi * xi
            l1, _ = dsys.ground_log_derivatives(z)
            return 4.0 * z * l1 * l1
        return EvaluableFunction(w2, (0.0, np.inf), "xi")
    if form == "z" and fam == "L":
        def w2(z):
            l1, _ = dsys.ground_log_derivatives(z)
            return z * l1 * l1
        return EvaluableFunction(w2, (0.0, np.inf), "z")
    if form == "y" and fam == "J":
        def w2(y):
            l1, _ = dsys.ground_log_derivatives(y)
            return (1.0 - y * y) * l1 * l1
        return EvaluableFunction(w2, (-1.0, 1.0), "y")
    raise ValueError(f"form {form!r} is not available for family {fam}")


def _u_derivatives(family: str, x: np.ndarray):
    """``u'(x)``, ``u''(x)`` and ``d^2/dx^2 ln|u'(x)|`` for ``hbar = omega = 1``."""
    if family == "H":
        return np.ones_like(x), np.zeros_like(x), np.zeros_like(x)
    if family == "L":
        return 2 * x, 2 * np.ones_like(x), -1.0 / x ** 2
    s = np.sin(2 * x)
    return -2 * s, -4 * np.cos(2 * x), -4.0 / s ** 2


def deformed_potential(dsys: DeformedSystem) -> EvaluableFunction:
    """``V_D(x) = V(x) - 2 d^2/dx^2 ln|W[seeds](x)|`` with ``hbar = omega = 1``.

    The Wronskian is held in the family variable ``u``; converting it to
    ``x`` multiplies it by ``u'(x)**(k(k-1)/2)``, which is accounted for.
    """
    spec = dsys.base
    k = dsys.n_seeds

    def v(x):
        base = potential(spec, x)
        if k == 0:
            return base
        u = x_to_u(spec, x)
        up, upp, lnup2 = _u_derivatives(spec.family, x)
        l1, l2 = dsys.den.log_derivatives(u, dsys.precision)
        d2 = upp * l1 + up * up * l2 + (k * (k - 1) / 2) * lnup2
        return base - 2.0 * d2

    return EvaluableFunction(v, spec.x_domain, "x")


def susy_potential(dsys: DeformedSystem) -> EvaluableFunction:
    """``(d ln phi_0/dx)**2 + d^2 ln phi_0/dx^2``: the same potential rebuilt from the ground state."""
    spec = dsys.base

    def v(x):
        u = x_to_u(spec, x)
        up, upp, _ = _u_derivatives(spec.family, x)
        l1, l2 = dsys.ground_log_derivatives(u)
        w = up * l1
        return w * w + upp * l1 + up * up * l2

    return EvaluableFunction(v, spec.x_domain, "x")


def superpotential(dsys: DeformedSystem, x, hbar: float = 1.0, omega: float = 1.0):
    """Dimensionful ``W(x) = -hbar d/dx ln|phi_0(x)|``.

    ``x`` is the physical coordinate; the family variable is
    ``sqrt(omega/hbar) x`` (H), ``omega x**2/hbar`` (L) or ``cos 2x`` (J).
    """
    x = np.asarray(x, dtype=float)
    fam = dsys.family
    if fam == "H":
        s = np.sqrt(omega / hbar)
        l1, _ = dsys.ground_log_derivatives(s * x)
        return -hbar * s * l1
    if fam == "L":
        l1, _ = dsys.ground_log_derivatives(omega * x * x / hbar)
        return -hbar * (2 * omega * x / hbar) * l1
    l1, _ = dsys.ground_log_derivatives(np.cos(2 * x))
    return -hbar * (-2 * np.sin(2 * x)) * l1


def reduced_from_dimensionful(dsys: DeformedSystem, x, hbar: float, omega: float):
    """``W(x)**2`` divided by its natural energy unit, as a function of the reduced variable.

    Returns ``(u, w2)`` where ``u`` is ``xi`` (H, L) or ``y`` (J) and ``w2``
    is ``W**2/(hbar omega)`` or ``W**2/(4 hbar**2)``.
    """
    x = np.asarray(x, dtype=float)
    w = superpotential(dsys, x, hbar, omega)
    if dsys.family == "J":
        return np.cos(2 * x), w * w / (4 * hbar ** 2)
    return np.sqrt(omega / hbar) * x, w * w / (hbar * omega)
