import math
from fractions import Fraction

import numpy as np
import pytest

from fractraffic.lib import series as ser
from fractraffic.lib.error import (
    EmptySeriesError,
    LagError,
    NonFiniteSampleError,
    SeriesTooShortError,
)


def test_exponent_identities_on_dense_grid():
    for h in np.linspace(0.01, 0.99, 1000):
        ex = ser.beta_relations(hurst=h)
        assert abs(ex.dimension - (2.0 - h)) <= 1e-12
        assert abs(ex.beta - (2.0 * h + 1.0)) <= 1e-12
        assert abs(ex.beta - (5.0 - 2.0 * ex.dimension)) <= 1e-12
        assert abs(ex.rho - (2.0 ** (2.0 * h - 1.0) - 1.0)) <= 1e-12


def test_rho_at_brownian_boundary_is_zero():
    assert abs(ser.hurst_to_rho(0.5)) <= 1e-12


def test_classify_hurst_rows():
    persistent = ser.classify_hurst(0.7)
    assert persistent is ser.PersistenceClass.PERSISTENT
    assert persistent.dimension_side == "< 1.5"
    assert persistent.rho_sign == "positive"

    assert ser.classify_hurst(0.5) is ser.PersistenceClass.RANDOM_FBM
    assert ser.classify_hurst(0.5 + 1e-10) is ser.PersistenceClass.RANDOM_FBM
    anti = ser.classify_hurst(0.3)
    assert anti is ser.PersistenceClass.NON_PERSISTENT
    assert str(anti) == "non-persistent"
    assert anti.rho_sign == "negative"


def test_beta_relations_from_beta_and_dimension():
    ex = ser.beta_relations(beta=2.4, stderr=0.02)
    assert ex.hurst == pytest.approx(0.7, abs=1e-12)
    assert ex.dimension == pytest.approx(1.3, abs=1e-12)
    assert ex.rho == pytest.approx(0.3195, abs=1e-4)
    assert ex.hurst_err == pytest.approx(0.01)
    assert ex.beta_err == pytest.approx(0.02)
    assert ex.persistence is ser.PersistenceClass.PERSISTENT

    flat = ser.beta_relations(beta=1.0)
    assert flat.hurst == 0.0
    assert flat.dimension == 2.0

    from_d = ser.beta_relations(dimension=1.5)
    assert from_d.hurst == 0.5
    assert from_d.beta == 2.0


def test_beta_relations_requires_exactly_one_value():
    with pytest.raises(ValueError):
        ser.beta_relations()
    with pytest.raises(ValueError):
        ser.beta_relations(hurst=0.5, beta=2.0)


def test_rho_to_hurst_inverts_hurst_to_rho():
    for h in (0.1, 0.5, 0.73, 0.95):
        assert ser.rho_to_hurst(ser.hurst_to_rho(h)) == pytest.approx(h, abs=1e-12)
    with pytest.raises(ValueError):
        ser.rho_to_hurst(-1.0)


def test_time_series_rejects_empty_and_non_finite():
    with pytest.raises(EmptySeriesError, match="empty input"):
        ser.TimeSeries([])
    with pytest.raises(NonFiniteSampleError, match="non-finite sample at index 2"):
        ser.TimeSeries([1.0, 2.0, math.nan, 4.0])
    with pytest.raises(NonFiniteSampleError):
        ser.TimeSeries([1.0, math.inf])


def test_time_series_is_read_only_and_labelled():
    s = ser.TimeSeries([1, 2, 3], "SERV-1")
    assert len(s) == 3
    assert str(s) == '<series "SERV-1" (N=3)>'
    with pytest.raises(ValueError):
        s.values[0] = 10.0


def test_require_length():
    s = ser.as_series(np.arange(10.0))
    assert s.require_length(10) is s
    with pytest.raises(SeriesTooShortError, match="series too short"):
        s.require_length(11)


def test_mean_and_profile():
    assert ser.mean([1.0, 2.0, 3.0]) == 2.0
    with pytest.raises(EmptySeriesError):
        ser.mean(np.array([]))

    prof = ser.profile([1.0, 2.0, 3.0])
    assert prof.mean == 2.0
    assert prof.values.tolist() == [-1.0, -1.0, 0.0]
    assert len(prof) == 3


def test_autocovariance_small_example():
    acov = ser.autocovariance([1.0, 2.0, 3.0, 4.0], 1)
    assert acov[0] == pytest.approx(1.25)
    assert acov[1] == pytest.approx(0.3125)


def test_autocovariance_lag_limits():
    with pytest.raises(LagError, match="lag exceeds series length"):
        ser.autocovariance([1.0, 2.0, 3.0], 3)
    with pytest.raises(LagError):
        ser.autocovariance([1.0, 2.0, 3.0], -1)


def test_alternating_examples():
    prof = ser.profile([1.0, -1.0, 1.0, -1.0])
    assert prof.values.tolist() == [1.0, 0.0, 1.0, 0.0]
    assert ser.autocovariance([1.0, -1.0, 1.0, -1.0], 1)[1] == -0.75


def test_mean_matches_exact_rational_sum():
    rng = np.random.Generator(np.random.PCG64(2024))
    values = rng.uniform(size=1000)
    exact = float(sum(Fraction(v) for v in values.tolist()) / 1000)
    assert abs(ser.mean(values) - exact) <= 1e-12


def test_profile_difference_recovers_centred_series():
    rng = np.random.Generator(np.random.PCG64(17))
    x = rng.normal(3.0, 2.0, 5000)
    prof = ser.profile(x)
    centred = x - ser.mean(x)
    recovered = np.diff(np.concatenate([[0.0], prof.values]))
    np.testing.assert_allclose(recovered, centred, rtol=0, atol=1e-9)


def test_lag_zero_is_the_two_pass_variance():
    rng = np.random.Generator(np.random.PCG64(5))
    x = rng.exponential(4.0, 999).tolist()
    centre = sum(x) / len(x)
    variance = sum((v - centre) ** 2 for v in x) / len(x)
    assert ser.autocovariance(x, 3)[0] == pytest.approx(variance, rel=1e-12)


def test_rho_is_bounded_increasing_and_signed_like_persistence():
    grid = np.linspace(0.001, 0.999, 2000)
    rho = np.array([ser.hurst_to_rho(h) for h in grid])
    assert np.all(rho > -0.5) and np.all(rho < 1.0)
    assert np.all(np.diff(rho) > 0)
    signs = {"positive": 1.0, "negative": -1.0}
    for h, r in zip(grid, rho):
        persistence = ser.classify_hurst(h)
        if persistence is ser.PersistenceClass.RANDOM_FBM:
            assert abs(r) <= 1e-8
        else:
            assert np.sign(r) == signs[persistence.rho_sign]
