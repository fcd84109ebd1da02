"""The three base exactly solvable systems and their building blocks.

``H`` is the harmonic oscillator on the real line, ``L`` the radial oscillator
on the half-line and ``J`` the Poschl-Teller potential on ``(0, pi/2)``.
Units are ``2m = 1``. All functions are expressed in the canonical variables
``xi = sqrt(omega/hbar) x``, ``z = xi**2`` and ``y = cos(2x)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy import special

from .errors import DomainError, UnsupportedFamily
from .exact_poly import ExactPolynomial, PrefactoredFunction, classical_poly

FAMILIES = ("H", "L", "J")

HALF = Fraction(1, 2)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class SystemSpec:
    """A base system. ``g`` is used by L and J, ``h`` by J only.

    ``hbar`` and ``omega`` only matter for dimensionful checks; every reduced
    quantity is independent of them.
    """

    family: str
    g: Fraction = Fraction(0)
    h: Fraction = Fraction(0)
    hbar: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        object.__setattr__(self, "g", _frac(self.g))
        object.__setattr__(self, "h", _frac(self.h))
        if self.hbar <= 0 or self.omega <= 0:
            raise ValueError("hbar and omega must be positive")
        if self.family in ("L", "J") and self.g <= HALF:
            raise ValueError("g must exceed 1/2 for a normalisable ground state")
        if self.family == "J" and self.h <= HALF:
            raise ValueError("h must exceed 1/2 for a normalisable ground state")

    @property
    def var(self) -> str:
        return {"H": "xi", "L": "z", "J": "y"}[self.family]

    @property
    def x_domain(self) -> tuple[float, float]:
        return {"H": (-np.inf, np.inf), "L": (0.0, np.inf), "J": (0.0, np.pi / 2)}[self.family]

    @property
    def u_domain(self) -> tuple[float, float]:
        return {"H": (-np.inf, np.inf), "L": (0.0, np.inf), "J": (-1.0, 1.0)}[self.family]

    def with_units(self, hbar: float, omega: float) -> "SystemSpec":
        return SystemSpec(self.family, self.g, self.h, hbar, omega)


@dataclass(frozen=True)
class VirtualStateLabel:
    vtype: str
    index: int

    def __post_init__(self):
        if self.vtype not in ("I", "II"):
            raise ValueError("virtual state type must be 'I' or 'II'")
        if self.index < 0:
            raise ValueError("virtual state index must be non-negative")


def energy(spec: SystemSpec, n: int) -> float:
    """Dimensionless level ``n``: ``2n`` (H), ``4n`` (L), ``n(n+g+h)`` (J).

    H and L are in units of ``hbar*omega``; J is in units of ``4 hbar**2``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if spec.family == "H":
        return 2.0 * n
    if spec.family == "L":
        return 4.0 * n
    return float(n * (n + spec.g + spec.h))


def energy_dimensionful(spec: SystemSpec, n: int) -> float:
    if spec.family == "J":
        return 4.0 * spec.hbar ** 2 * energy(spec, n)
    return spec.hbar * spec.omega * energy(spec, n)


def energy_x_units(spec: SystemSpec, n: int) -> float:
    """Level ``n`` of ``-d^2/dx^2 + V`` with ``hbar = omega = 1``."""
    return 4.0 * energy(spec, n) if spec.family == "J" else energy(spec, n)


def potential(spec: SystemSpec, x):
    """Base potential in ``x`` with ``hbar = omega = 1`` (vanishing ground energy)."""
    x = np.asarray(x, dtype=float)
    g, h = float(spec.g), float(spec.h)
    if spec.family == "H":
        return x ** 2 - 1.0
    if spec.family == "L":
        return x ** 2 + g * (g - 1) / x ** 2 - (2 * g + 1)
    return g * (g - 1) / np.sin(x) ** 2 + h * (h - 1) / np.cos(x) ** 2 - (g + h) ** 2


def x_to_u(spec: SystemSpec, x):
    x = np.asarray(x, dtype=float)
    if spec.family == "H":
        return x
    if spec.family == "L":
        return x * x
    return np.cos(2 * x)


def polynomial_part(spec: SystemSpec, n: int) -> ExactPolynomial:
    """The classical polynomial carried by eigenstate ``n``."""
    if spec.family == "H":
        return classical_poly("hermite", n)
    if spec.family == "L":
        return classical_poly("laguerre", n, spec.g - HALF)
    return classical_poly("jacobi", n, spec.g - HALF, spec.h - HALF)


def ground_prefactor(spec: SystemSpec) -> PrefactoredFunction:
    one = ExactPolynomial.constant(1, spec.var)
    if spec.family == "H":
        return PrefactoredFunction(one, exp_rate=-HALF, gaussian=True)
    if spec.family == "L":
        return PrefactoredFunction(one, exp_rate=-HALF, pow1=spec.g / 2)
    return PrefactoredFunction(one, pow1=spec.g / 2, pow2=spec.h / 2)


def eigenfunction(spec: SystemSpec, n: int) -> PrefactoredFunction:
    """Eigenstate ``n`` as ground-state prefactor times its polynomial."""
    if n < 0:
        raise ValueError("n must be non-negative")
    pre = ground_prefactor(spec)
    return PrefactoredFunction(polynomial_part(spec, n), pre.exp_rate, pre.pow1, pre.pow2,
                               pre.gaussian)


def virtual_state(spec: SystemSpec, label: VirtualStateLabel) -> PrefactoredFunction:
    """Type I or II virtual-state seed of the L or J system."""
    g, h, n = spec.g, spec.h, label.index
    if spec.family == "L":
        if label.vtype == "I":
            poly = classical_poly("laguerre", n, g - HALF).compose_negate()
            return PrefactoredFunction(poly, exp_rate=HALF, pow1=g / 2)
        poly = classical_poly("laguerre", n, HALF - g)
        return PrefactoredFunction(poly, exp_rate=-HALF, pow1=(1 - g) / 2)
    if spec.family == "J":
        if label.vtype == "I":
            poly = classical_poly("jacobi", n, g - HALF, HALF - h)
            return PrefactoredFunction(poly, pow1=g / 2, pow2=(1 - h) / 2)
        poly = classical_poly("jacobi", n, HALF - g, h - HALF)
        return PrefactoredFunction(poly, pow1=(1 - g) / 2, pow2=h / 2)
    raise UnsupportedFamily("virtual states are defined for the L and J systems only")


def validate_deformation(spec: SystemSpec, d_I: Iterable[int] = (), d_II: Iterable[int] = ()) -> list[str]:
    """List the admissibility inequalities violated by a multi-indexed deformation.

    An empty list means the deformation is admissible. Never raises.
    """
    d_I, d_II = list(d_I), list(d_II)
    problems = []
    for name, ds in (("D_I", d_I), ("D_II", d_II)):
        if any(int(d) != d or d < 1 for d in ds):
            problems.append(f"{name} indices must be positive integers: {ds}")
        if any(b <= a for a, b in zip(ds, ds[1:])):
            problems.append(f"{name} indices must be strictly increasing: {ds}")
    if not d_I and not d_II:
        return problems
    if spec.family == "H":
        problems.append("multi-indexed deformations need the L or J system")
        return problems
    M, N = len(d_I), len(d_II)
    g, h = spec.g, spec.h
    if spec.family == "L":
        bound = max([N + Fraction(3, 2)] + [d + HALF for d in d_II])
        if not g > bound:
            problems.append(f"g={g} must exceed {bound}")
    else:
        gb = max([Fraction(N + 2)] + [d + HALF for d in d_II])
        hb = max([Fraction(M + 2)] + [d + HALF for d in d_I])
        if not g > gb:
            problems.append(f"g={g} must exceed {gb}")
        if not h > hb:
            problems.append(f"h={h} must exceed {hb}")
    return problems


def breve(n: int, d: int) -> int:
    """Level index of the state with ``n`` nodes after deleting levels ``d, d+1``."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    return n if n <= d - 1 else n + 2


def appendix_a_check(ell_prime: int, n: int, hbar: float, omega: float, sample_count: int = 50,
                     ell: float | None = None, samples=None) -> float:
    """Maximum deviation between two radial-oscillator eigenfunction forms.

    ``psi`` uses the superpotential ``omega x/2 - ell/x`` and ``phi`` the
    textbook angular-momentum form. With ``ell = hbar*(ell_prime + 1)`` (the
    default) they describe the same state. Both are normalised at the sample
    where ``|phi|`` is largest; the deviation is measured relative to that
    peak value.
    """
    if ell is None:
        ell = hbar * (ell_prime + 1)
    if samples is None:
        x_max = 3.0 * np.sqrt(2 * hbar / omega) * np.sqrt(n + ell_prime + 2)
        samples = np.linspace(x_max / sample_count, x_max, sample_count)
    x = np.asarray(samples, dtype=float)
    if np.any(x <= 0):
        raise DomainError("sample points must be positive")
    t = omega * x ** 2 / (2 * hbar)
    a = ell / hbar
    lag = classical_poly("laguerre", n, _frac(a - 0.5), var="z")
    psi = np.exp(-omega * x ** 2 / (4 * hbar)) * x ** a * lag.evaluate(t, "double")
    phi = (np.exp(-omega * x ** 2 / (4 * hbar)) * x ** (ell_prime + 1)
           * special.eval_genlaguerre(n, ell_prime + 0.5, t))
    ref = int(np.argmax(np.abs(phi)))
    psi_n, phi_n = psi / psi[ref], phi / phi[ref]
    return float(np.max(np.abs(psi_n - phi_n)))
