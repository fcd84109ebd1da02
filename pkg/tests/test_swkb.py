import math

import numpy as np
import pytest
from scipy import integrate, optimize

from swkblab.deform import EvaluableFunction, build_krein_adler, build_multi_indexed, identity, logderiv_sq
from swkblab.errors import NoClassicalRegion
from swkblab.swkb import (find_turning_intervals, quadrature, relative_error, swkb_integral,
                          swkb_integral_dimensionful, sweep, wkb_integral)
from swkblab.systems import SystemSpec, potential


def test_semicircle_area():
    assert quadrature(lambda x: np.sqrt(np.clip(4 - x * x, 0, None)), -2, 2) == pytest.approx(2 * math.pi,
                                                                                               abs=1e-10)
    r = math.sqrt(2)
    assert quadrature(lambda x: np.sqrt(np.clip(2 - x * x, 0, None)), -r, r) == pytest.approx(math.pi, abs=1e-10)


def test_quadrature_empty_interval():
    assert quadrature(np.sqrt, 1.0, 1.0) == 0.0


def test_harmonic_turning_points():
    w2 = EvaluableFunction(lambda x: x * x, (-np.inf, np.inf), "xi")
    (a, b), = find_turning_intervals(w2, 4.0)
    assert a == pytest.approx(-2, abs=1e-12) and b == pytest.approx(2, abs=1e-12)


def test_radial_turning_points_closed_form():
    g, n = 5.0, 3
    E = 4.0 * n
    w2 = logderiv_sq(identity(SystemSpec("L", g)), "xi")
    (a, b), = find_turning_intervals(w2, E)
    # (xi - g/xi)^2 = E  ->  xi^2 -+ sqrt(E) xi - g = 0
    s = math.sqrt(E)
    assert a == pytest.approx((-s + math.sqrt(E + 4 * g)) / 2, rel=1e-12)
    assert b == pytest.approx((s + math.sqrt(E + 4 * g)) / 2, rel=1e-12)
    # the closed-form SWKB value of the radial oscillator on that bracket
    f = lambda x: np.sqrt(np.clip(E - (x - g / x) ** 2, 0, None))
    assert quadrature(f, a, b) == pytest.approx(n * math.pi, abs=1e-9)


def test_no_classical_region():
    w2 = EvaluableFunction(lambda x: x * x + 1.0, (-np.inf, np.inf), "xi")
    with pytest.raises(NoClassicalRegion):
        find_turning_intervals(w2, 0.5)


def test_multiple_intervals_for_deleted_levels():
    dsys = build_krein_adler(SystemSpec("H"), 4)
    assert len(find_turning_intervals(logderiv_sq(dsys), 2.0)) >= 2


def test_interval_sum_matches_reference_quadrature():
    # each piece checked against scipy.quad with the roots from brentq
    dsys = build_krein_adler(SystemSpec("H"), 4)
    w2 = logderiv_sq(dsys)
    res = swkb_integral(dsys, 1)
    total = 0.0
    for a, b in res.intervals:
        h = lambda x: 2.0 - w2(x)
        total += integrate.quad(lambda x: math.sqrt(max(h(x), 0.0)), a, b, limit=200, epsabs=1e-13)[0]
    assert res.I == pytest.approx(total, abs=1e-8)
    assert res.interval_count >= 2


def test_ground_state_is_exact():
    r = swkb_integral(build_multi_indexed(SystemSpec("L", 5), [1], [2]), 0)
    assert r.I == 0.0 and r.err == 0.0
    assert relative_error(0.0, 0) == 0.0


@pytest.mark.parametrize("spec", [SystemSpec("H"), SystemSpec("L", 5), SystemSpec("J", 3, 4)],
                         ids=["H", "L", "J"])
def test_shape_invariant_exactness(spec):
    for r in sweep(identity(spec), range(1, 6)):
        assert abs(r.I - r.n * math.pi) < 1e-8


def test_laguerre_forms_agree():
    dsys = build_multi_indexed(SystemSpec("L", 5), [1], [2])
    for n in (1, 4):
        assert swkb_integral(dsys, n, "xi").I == pytest.approx(swkb_integral(dsys, n, "z").I, rel=1e-10)


def test_dimensionful_integral_independent_of_units():
    dsys = build_multi_indexed(SystemSpec("L", 5), [1], [2])
    ref = swkb_integral(dsys, 3).I
    for hbar, omega in ((1.0, 1.0), (0.5, 2.3)):
        assert swkb_integral_dimensionful(dsys, 3, hbar, omega) == pytest.approx(ref, abs=1e-9)


def test_wkb_harmonic_is_exact():
    assert wkb_integral(SystemSpec("H"), 3) == pytest.approx(3.5 * math.pi, abs=1e-8)
    assert wkb_integral(SystemSpec("H"), 0) == pytest.approx(0.5 * math.pi, abs=1e-8)


def test_wkb_radial_against_adaptive_oracle():
    spec = SystemSpec("L", 5)
    E = 8.0
    V = lambda x: potential(spec, np.array([x]))[0] - E
    a = optimize.brentq(V, 0.5, 2.5)
    b = optimize.brentq(V, 2.5, 10.0)
    ref = integrate.quad(lambda x: math.sqrt(max(-V(x), 0.0)), a, b, epsabs=1e-13, limit=200)[0]
    val = wkb_integral(spec, 2)
    assert val == pytest.approx(ref, abs=1e-8)
    assert abs(val - 2.5 * math.pi) > 1e-3


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        swkb_integral(identity(SystemSpec("H")), -1)
