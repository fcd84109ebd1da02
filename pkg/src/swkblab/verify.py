"""Finite-difference eigenvalues used to confirm the spectra of deformed potentials."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .deform import DeformedSystem, EvaluableFunction, deformed_potential
from .errors import TruncationError
from .systems import energy_x_units

TRUNCATION_TOL = 1e-3
SHRINK = 0.02


@dataclass(frozen=True)
class SpectrumLevel:
    index: int
    numeric: float
    reference: float
    deviation: float


@dataclass(frozen=True)
class SpectrumReport:
    levels: tuple[SpectrumLevel, ...]
    grid: tuple[int, tuple[float, float]]

    @property
    def max_deviation(self) -> float:
        return max(level.deviation for level in self.levels)


def _fd_levels(V, a: float, b: float, k: int, n: int) -> np.ndarray:
    h = (b - a) / (n + 1)
    x = a + h * np.arange(1, n + 1)
    diag = 2.0 / h ** 2 + V(x)
    off = np.full(n - 1, -1.0 / h ** 2)
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1), eigvals_only=True)


def solve_spectrum(V, domain: tuple[float, float], k: int = 5, grid_n: int = 4000,
                   truncated_ends: tuple[bool, bool] = (True, True)) -> np.ndarray:
    """Lowest ``k`` eigenvalues of ``-d^2/dx^2 + V`` on ``domain`` with Dirichlet ends.

    Second-order differences on ``grid_n`` interior points, Richardson
    extrapolated against a grid of half the spacing. Ends flagged in
    ``truncated_ends`` stand in for an infinite domain; moving each of them
    inward by 2% must not change any level by more than ``1e-3`` relative,
    otherwise :class:`TruncationError` is raised.
    """
    if grid_n < 2000:
        raise ValueError("grid_n must be at least 2000")
    a, b = map(float, domain)
    f = V.func if isinstance(V, EvaluableFunction) else V
    coarse = _fd_levels(f, a, b, k, grid_n)
    fine = _fd_levels(f, a, b, k, 2 * grid_n + 1)
    levels = (4.0 * fine - coarse) / 3.0
    if any(truncated_ends):
        w = b - a
        a2 = a + SHRINK * w if truncated_ends[0] else a
        b2 = b - SHRINK * w if truncated_ends[1] else b
        shrunk = _fd_levels(f, a2, b2, k, grid_n)
        scale = np.maximum(np.abs(coarse), 1.0)
        if np.any(np.abs(shrunk - coarse) / scale > TRUNCATION_TOL):
            raise TruncationError(f"levels depend on the truncation of {domain}")
    return levels


def _fd_domain(dsys: DeformedSystem, top: float) -> tuple[tuple[float, float], tuple[bool, bool]]:
    fam = dsys.family
    if fam == "H":
        L = max(12.0, 2.0 * np.sqrt(top))
        return (-L, L), (True, True)
    if fam == "L":
        return (0.0, max(12.0, 2.0 * np.sqrt(top))), (False, True)
    return (0.0, np.pi / 2), (False, False)


def isospectrality_report(dsys: DeformedSystem, k: int = 5, grid_n: int = 4000) -> SpectrumReport:
    """Compare FD levels of the deformed potential with the predicted spectrum.

    Deviations are ``|E_num - E_ref| / max(|E_ref|, E_1)`` where ``E_1`` is
    the first excitation of the base system, so the zero ground level is
    judged on the scale of the level spacing.
    """
    refs = [energy_x_units(dsys.base, dsys.level_index(n)) for n in range(k)]
    (a, b), ends = _fd_domain(dsys, max(refs))
    nums = solve_spectrum(deformed_potential(dsys), (a, b), k, grid_n, ends)
    gap = energy_x_units(dsys.base, 1)
    levels = tuple(SpectrumLevel(n, float(e), r, abs(e - r) / max(abs(r), gap))
                   for n, (e, r) in enumerate(zip(nums, refs)))
    return SpectrumReport(levels, (grid_n, (a, b)))
