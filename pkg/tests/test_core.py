import numpy as np
import pytest

from minkprop import (MINKOWSKI, FourVector, Mass, Metric, duality_pairing,
                      energy_on_shell, minkowski_square)
from minkprop.core import as_mass, spatial_radius


def test_minkowski_square_arithmetic():
    assert minkowski_square((3.0, 2.0, 1.0, 0.0)) == 9 - 4 - 1
    assert minkowski_square((1.0, 1.0, 0.0, 0.0)) == 0.0


def test_metric_signature_and_pairing():
    assert MINKOWSKI.signature == (1, 3)
    p = np.array([1.0, 2.0, 3.0, 4.0])
    q = np.array([4.0, 3.0, 2.0, 1.0])
    assert MINKOWSKI.g(p, q) == 4.0 - 6.0 - 6.0 - 4.0
    # broadcasting over a batch
    batch = np.stack([p, q])
    np.testing.assert_allclose(MINKOWSKI.square(batch),
                               [minkowski_square(p), minkowski_square(q)])
    assert Metric().diag == (1.0, -1.0, -1.0, -1.0)


def test_duality_pairing_is_all_plus():
    p = np.array([1.0, 2.0, 3.0, 4.0])
    x = np.array([1.0, 1.0, 1.0, 1.0])
    assert duality_pairing(p, x) == 10.0


def test_energy_on_shell():
    assert energy_on_shell(2.0, (1.0, 2.0, 2.0)) == pytest.approx(
        np.sqrt(13.0), rel=1e-15)
    assert energy_on_shell(0.0, (3.0, 4.0, 0.0)) == 5.0
    # vectorized over leading axes
    grid = np.zeros((5, 3))
    np.testing.assert_allclose(energy_on_shell(1.5, grid), 1.5)


def test_mass_validation():
    assert float(Mass(0.5)) == 0.5
    assert as_mass(Mass(2.0)) == 2.0
    with pytest.raises(ValueError):
        Mass(-1.0)
    with pytest.raises(ValueError):
        as_mass(float("nan"))


def test_four_vector():
    v = FourVector(1.0, 2.0, 3.0, 4.0)
    assert v.time == 1.0
    np.testing.assert_allclose(v.spatial, [2.0, 3.0, 4.0])
    assert v.minkowski_square() == 1 - 4 - 9 - 16
    w = FourVector.from_array([1, 0, 0, 0])
    assert (v - w).x0 == 0.0
    assert (-w).x0 == -1.0
    assert spatial_radius(v.as_array()) == pytest.approx(np.sqrt(29.0))
