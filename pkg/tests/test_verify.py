import numpy as np
import pytest

from swkblab.deform import build_krein_adler, build_multi_indexed, deformed_potential, identity
from swkblab.errors import TruncationError
from swkblab.systems import SystemSpec
from swkblab.verify import isospectrality_report, solve_spectrum


def test_harmonic_levels():
    lv = solve_spectrum(lambda x: x * x - 1, (-12, 12), k=4)
    np.testing.assert_allclose(lv, [0, 2, 4, 6], atol=1e-4)


def test_second_order_convergence():
    V = lambda x: x * x - 1
    exact = np.array([0.0, 2.0, 4.0])
    from swkblab.verify import _fd_levels
    e1 = np.abs(_fd_levels(V, -12, 12, 3, 2000) - exact)
    e2 = np.abs(_fd_levels(V, -12, 12, 3, 4001) - exact)
    assert np.all(e1 / e2 >= 3.0)


def test_truncation_detected():
    with pytest.raises(TruncationError):
        solve_spectrum(lambda x: x * x - 1, (-3, 3), k=4)


def test_grid_too_coarse():
    with pytest.raises(ValueError):
        solve_spectrum(lambda x: x * x, (-5, 5), grid_n=100)


def test_multi_indexed_laguerre_levels():
    dsys = build_multi_indexed(SystemSpec("L", 5), [1], [2])
    lv = solve_spectrum(deformed_potential(dsys), (0, 12), k=4, truncated_ends=(False, True))
    np.testing.assert_allclose(lv, [0, 4, 8, 12], rtol=1e-3, atol=1e-3)


def test_krein_adler_deletes_levels():
    lv = solve_spectrum(deformed_potential(build_krein_adler(SystemSpec("H"), 3)), (-12, 12), k=4)
    np.testing.assert_allclose(lv, [0, 2, 4, 10], atol=1e-3)


@pytest.mark.parametrize("dsys,refs", [
    (identity(SystemSpec("H")), [0, 2, 4, 6, 8]),
    (build_krein_adler(SystemSpec("H"), 4), [0, 2, 4, 6, 12]),
    (build_multi_indexed(SystemSpec("J", 5, 6), [1, 2], [2, 3]), [0, 48, 104, 168, 240]),
])
def test_isospectrality_report(dsys, refs):
    rep = isospectrality_report(dsys, k=5)
    assert [lv.reference for lv in rep.levels] == refs
    assert rep.max_deviation < 1e-4
