import numpy as np
import pytest

from qhfocus import alternation_search, displacement, find_cycles
from qhfocus.casestudy import eq325_field, field23
from qhfocus.errors import AlternationError


def test_center_yields_no_cycles():
    b41, b13 = 1.0, 0.4
    center = field23(a22=-1.5 * b13, a50=-b41 / 5, b13=b13, b41=b41)
    result = find_cycles("polar", center, 0.02, 0.3, grid_n=16, tol=1e-12)
    assert result.cycles == []


def test_hopf_family_cycle_amplitude_scaling():
    # x' = -y + eps x - x (x^2+y^2), y' = x + eps y - y (x^2+y^2): cycle at sqrt(eps)
    amplitudes = []
    eps_values = (0.01, 0.04)
    for eps in eps_values:
        rhs = lambda x, y, e=eps: (
            -y + e * x - x * (x * x + y * y),
            x + e * y - y * (x * x + y * y),
        )
        result = find_cycles("cartesian", rhs, 0.02, 0.9, grid_n=24, tol=1e-12)
        assert len(result.cycles) == 1
        assert result.cycles[0].stability == "stable"
        amplitudes.append(result.cycles[0].h_star)
        assert result.cycles[0].h_star == pytest.approx(np.sqrt(eps), rel=1e-6)
    slope = np.log(amplitudes[1] / amplitudes[0]) / np.log(eps_values[1] / eps_values[0])
    assert slope == pytest.approx(0.5, abs=0.1)


def test_displacement_sign_flips_across_cycle():
    rhs = lambda x, y: (
        -y + 0.01 * x - x * (x * x + y * y),
        x + 0.01 * y - y * (x * x + y * y),
    )
    inner = displacement("cartesian", rhs, 0.05, tol=1e-12)
    outer = displacement("cartesian", rhs, 0.3, tol=1e-12)
    assert inner > 0 > outer


def test_cycle_scan_is_recorded():
    f = field23(0.5, 1.0, -0.3, 1.0)
    result = find_cycles("polar", f, 0.05, 0.2, grid_n=16, tol=1e-12)
    assert result.scan_array().shape == (16, 2)


def test_alternation_search_realizes_sign_chain():
    def chain(eps):
        # cheap analytic stand-in with the casestudy structure
        return [0.1 * eps[0], -0.7 * eps[1], 2.0e-6]

    eps = alternation_search(
        chain, [1, -1, 1], box=[(1e-10, 1e-3), (1e-8, 1e-2)], gap=[100.0, 10.0]
    )
    values = chain(eps)
    assert values[0] > 0 > values[1]
    assert abs(values[0]) <= abs(values[1]) / 100
    assert abs(values[1]) <= abs(values[2]) / 10


def test_alternation_search_rejects_wrong_tail_sign():
    with pytest.raises(AlternationError):
        alternation_search(
            lambda e: [0.1 * e[0], -2.0e-6],
            [1, 1],
            box=[(1e-8, 1e-2)],
            gap=[10.0],
        )


def test_alternation_search_validates_gaps():
    with pytest.raises(ValueError):
        alternation_search(
            lambda e: [e[0], 1.0], [1, 1], box=[(1e-8, 1e-2)], gap=[2.0]
        )


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        find_cycles("spherical", field23(0.5, 1.0, -0.3, 1.0), 0.05, 0.2)
