import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

import oracles
from conftest import StubStream
from rednoise import (Ar1Driven, DiffU, Fgn, GaussianStream, Mixed, RedOuDt,
                      White, ar1_autocov, ar1_sample, band_average,
                      fbm_autocov, fgn_increment_cov, fgn_sample, format_model,
                      increments, ou_autocov, ou_exact_sample,
                      ou_increment_cov, parse_model, periodogram,
                      theoretical_acf, theoretical_psd)


# ---------------------------------------------------------------------------
# parameter validation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("build", [
    lambda: RedOuDt(0.0),
    lambda: RedOuDt(-0.1),
    lambda: RedOuDt(0.1, init="midway"),
    lambda: DiffU(float("nan")),
    lambda: Mixed(0.0, 0.5),
    lambda: Mixed(0.1, float("inf")),
    lambda: Ar1Driven(0.0),
    lambda: Ar1Driven(1.0),
    lambda: Ar1Driven(0.5, init="x"),
    lambda: Fgn(0.0),
    lambda: Fgn(1.0),
])
def test_invalid_params_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_ar1_driven_requires_unit_grid():
    with pytest.raises(ValueError):
        increments(Ar1Driven(0.9), 0.5, 100, GaussianStream(0))


@pytest.mark.parametrize("n,dt", [(0, 1.0), (-1, 1.0), (10, 0.0), (10, -0.5)])
def test_increments_domain_errors(n, dt):
    with pytest.raises(ValueError):
        increments(White(), dt, n, GaussianStream(0))


# ---------------------------------------------------------------------------
# hand-checkable recursions and closed-form values
# ---------------------------------------------------------------------------

def test_ar1_hand_recursion():
    out = ar1_sample(0.9, 3, StubStream([1.0, -0.5]), init="zero")
    np.testing.assert_allclose(out.values, [0.0, 1.0, 0.4], rtol=1e-15)
    assert out.dt == 1.0


def test_ou_one_step_coefficients():
    # one deterministic step exposes the recursion coefficient and noise scale
    out = ou_exact_sample(0.1, 0.1, 2, StubStream([2.0, 1.0]), init="stationary")
    coeff = np.exp(-0.01)
    scale = np.sqrt(-np.expm1(-0.02) / 0.2)
    q0 = 2.0 / np.sqrt(0.2)
    np.testing.assert_allclose(out.values, [q0, coeff * q0 + scale], rtol=1e-14)
    assert abs(coeff - 0.990050) < 5e-7
    assert abs(scale - 0.314655) < 1e-2 * 0.314655


def test_ou_zero_init_single_sample():
    out = ou_exact_sample(0.1, 0.1, 1, StubStream([]), init="zero")
    np.testing.assert_array_equal(out.values, [0.0])


def test_ar1_autocov_values():
    assert ar1_autocov(0.9, 0) == pytest.approx(5.263158, abs=1e-6)
    assert ar1_autocov(0.9, -2) == pytest.approx(4.263158, abs=1e-6)
    assert ar1_autocov(1e-9, 0) == pytest.approx(1.0, rel=1e-12)


def test_ou_autocov_values():
    assert ou_autocov(0.1, 0.0) == pytest.approx(5.0, rel=1e-12)
    assert ou_autocov(0.1, 10.0) == pytest.approx(1.839397, abs=1e-6)
    assert ou_autocov(0.1, -10.0) == ou_autocov(0.1, 10.0)


def test_ou_increment_cov_value_and_domain():
    assert ou_increment_cov(0.1, 0.1, 1.0) == pytest.approx(-4.5242e-4, rel=1e-4)
    with pytest.raises(ValueError):
        ou_increment_cov(0.1, 0.1, 0.05)
    assert abs(ou_increment_cov(0.1, 0.1, 300.0)) < 1e-13
    assert ou_increment_cov(0.1, 0.1, 300.0) < 0


@given(theta=st.floats(1e-3, 10.0), dt=st.floats(1e-6, 2.0),
       k=st.floats(1.0, 50.0))
def test_ou_increment_cov_always_negative(theta, dt, k):
    assert ou_increment_cov(theta, dt, k * dt) < 0


def test_ou_increment_cov_tiny_step_stability():
    # naive (1 - cosh) loses all precision near theta*dt ~ 1e-8; the stable
    # form must stay on the asymptote -(theta dt^2 / 2) e^{-theta tau}
    theta, dt = 0.1, 1e-7
    got = ou_increment_cov(theta, dt, 1.0)
    expect = -0.5 * theta * dt * dt * np.exp(-theta * 1.0)
    assert got == pytest.approx(expect, rel=1e-9)


def test_fbm_autocov_values():
    assert fbm_autocov(0.5, 2.0, 3.0) == pytest.approx(2.0, rel=1e-14)
    assert fbm_autocov(0.7, 1.0, 1.0) == pytest.approx(1.319508, abs=1e-6)
    assert fbm_autocov(0.3, 0.0, 5.0) == 0.0
    with pytest.raises(ValueError):
        fbm_autocov(0.7, -1.0, 1.0)


def test_fgn_increment_cov_values():
    assert fgn_increment_cov(0.7, 1.0, 1) == pytest.approx(0.319508, abs=1e-6)
    # H = 1/2: increments uncorrelated beyond lag 0
    assert fgn_increment_cov(0.5, 0.3, 3) == pytest.approx(0.0, abs=1e-15)
    assert fgn_increment_cov(0.5, 0.3, 0) == pytest.approx(0.3, rel=1e-12)


@pytest.mark.parametrize("hurst", [0.3, 0.5, 0.7, 0.9])
def test_fgn_cov_matches_brute_force_expansion(hurst):
    for m in range(11):
        brute = oracles.fgn_cov_brute(hurst, 0.7, m)
        assert fgn_increment_cov(hurst, 0.7, m) == pytest.approx(brute, rel=1e-10)


# ---------------------------------------------------------------------------
# sampler statistics
# ---------------------------------------------------------------------------

def test_ar1_stationary_variance_and_lag1():
    x = ar1_sample(0.9, 1_000_000, GaussianStream(3)).values
    assert x.var() == pytest.approx(5.2632, rel=0.03)
    lag1 = np.mean(x[:-1] * x[1:]) / x.var()
    assert lag1 == pytest.approx(0.9, abs=0.01)


def test_ou_stationary_variance():
    u = ou_exact_sample(0.1, 0.1, 2_000_000, GaussianStream(4)).values
    assert u.var() == pytest.approx(5.0, rel=0.02)


def test_ou_stationary_autocov_curve():
    # lag-m autocovariance tracks the closed form out to tau = 3/theta;
    # deviations measured against the lag-0 value (estimator noise at deep
    # lags swamps a deviation measured relative to the decayed target itself)
    theta, dt, n = 0.1, 0.1, 2_000_000
    u = ou_exact_sample(theta, dt, n, GaussianStream(5)).values
    u = u - u.mean()
    c0 = u.var()
    worst = 0.0
    for m in range(0, 301, 25):
        est = np.mean(u[:n - m] * u[m:]) if m else c0
        worst = max(worst, abs(est - ou_autocov(theta, m * dt)) / c0)
    assert worst < 0.03


def test_white_increment_variance():
    incr = increments(White(), 0.01, 1_000_000, GaussianStream(6))
    assert incr.values.var() == pytest.approx(0.01, rel=0.02)


def test_diffu_increment_covariance():
    incr = increments(DiffU(0.1), 0.1, 2_000_000, GaussianStream(0))
    x = incr.values - incr.values.mean()
    est = np.mean(x[:-10] * x[10:])
    assert est == pytest.approx(-4.52e-4, rel=0.2)
    assert est < 0


def test_fgn_half_is_white():
    incr = fgn_sample(0.5, 0.1, 1_000_000, GaussianStream(7))
    x = incr.values
    lag1 = np.mean(x[:-1] * x[1:]) / x.var()
    assert abs(lag1) < 0.004
    assert x.var() == pytest.approx(0.1, rel=0.02)


def test_fgn_variance_and_lag1_cov():
    incr = fgn_sample(0.7, 1.0, 1_000_000, GaussianStream(8))
    x = incr.values
    assert x.var() == pytest.approx(1.0, rel=0.02)
    lag1 = np.mean(x[:-1] * x[1:]) - x.mean() ** 2
    assert lag1 == pytest.approx(0.319508, rel=0.05)


def test_fgn_deep_lag_covariances():
    incr = fgn_sample(0.8, 1.0, 2_000_000, GaussianStream(9))
    x = incr.values - incr.values.mean()
    for m in (1, 2, 5, 10):
        est = np.mean(x[:-m] * x[m:])
        assert est == pytest.approx(fgn_increment_cov(0.8, 1.0, m), rel=0.10)


def test_mixed_with_opposite_gamma_suppresses_low_frequencies():
    # gamma = -theta turns the mixed differential into (approximately) the
    # OU increment differential, whose density vanishes at low frequency
    theta, dt, n = 0.1, 0.1, 1_000_000
    incr = increments(Mixed(theta, -theta), dt, n, GaussianStream(10))
    pg = periodogram(incr)
    low_bins = pg.omegas <= theta / 2
    assert np.count_nonzero(low_bins) > 700
    emp = pg.powers[low_bins].mean()
    theory = theoretical_psd(DiffU(theta), pg.omegas[low_bins]).mean()
    assert emp < 0.1                       # far below the white floor of 1
    assert emp == pytest.approx(theory, rel=0.2)


# ---------------------------------------------------------------------------
# documented draw counts (the reproducibility contract)
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("model,n,expect", [
    (White(), 50, 50),
    (RedOuDt(0.1), 50, 50),                          # 1 init + 49 steps
    (RedOuDt(0.1, init="zero"), 50, 49),
    (DiffU(0.1), 50, 51),                            # n+1 OU values
    (Mixed(0.1, 0.5), 50, 51),                       # U0 + n shared dW
    (Ar1Driven(0.9), 50, 50),
    (Ar1Driven(0.9, init="zero"), 50, 49),
    (Fgn(0.7), 50, 100),                             # circulant embedding
])
def test_draw_counts(model, n, expect):
    stream = GaussianStream(11)
    increments(model, 1.0, n, stream)
    assert stream.count_drawn == expect


def test_mixed_shares_its_brownian_stream():
    # reconstruct by hand from the same draws: U_0 stationary, Euler U, and
    # the same dW appearing in both the U update and the output
    theta, gamma, dt, n = 0.2, 0.7, 0.05, 1000
    incr = increments(Mixed(theta, gamma), dt, n, GaussianStream(12))
    stream = GaussianStream(12)
    u = stream.normal() / np.sqrt(2 * theta)
    dw = np.sqrt(dt) * stream.fill(n)
    out = np.empty(n)
    for k in range(n):
        out[k] = gamma * u * dt + dw[k]
        u = u - theta * u * dt + dw[k]
    np.testing.assert_allclose(incr.values, out, rtol=1e-12, atol=1e-15)


# ---------------------------------------------------------------------------
# closed-form spectra
# ---------------------------------------------------------------------------

def test_theoretical_psd_values():
    assert theoretical_psd(White(), 3.7) == 1.0
    assert theoretical_psd(RedOuDt(0.1), 0.1) == pytest.approx(50.0, rel=1e-12)
    assert theoretical_psd(DiffU(0.1), 0.1) == pytest.approx(0.5, rel=1e-12)
    assert theoretical_psd(Mixed(0.1, 0.5), 0.0) == pytest.approx(36.0, rel=1e-12)
    assert theoretical_psd(Mixed(0.1, 0.5), 1e6) == pytest.approx(1.0, rel=1e-9)
    s = theoretical_psd(Ar1Driven(0.9), np.array([50.0, 100.0]))
    assert s[0] / s[1] == pytest.approx(4.0, rel=1e-3)


def test_fgn_psd_shape_and_zero_rejection():
    assert theoretical_psd(Fgn(0.7), 2.0) == pytest.approx(2.0 ** (-0.4), rel=1e-12)
    with pytest.raises(ValueError):
        theoretical_psd(Fgn(0.7), 0.0)
    with pytest.raises(ValueError):
        theoretical_psd(Fgn(0.7), np.array([1.0, 0.0]))


@given(theta=st.floats(1e-3, 10.0), omega=st.floats(0.0, 1e3))
def test_psd_complementarity_identity(theta, omega):
    s_du = theoretical_psd(DiffU(theta), omega)
    s_red = theoretical_psd(RedOuDt(theta), omega)
    assert s_du + theta**2 * s_red == pytest.approx(1.0, rel=1e-12)


@given(theta=st.floats(1e-3, 10.0), gamma=st.floats(-20.0, 20.0),
       omega=st.floats(0.0, 1e3))
def test_psd_mixed_decomposition_identity(theta, gamma, omega):
    s_mixed = theoretical_psd(Mixed(theta, gamma), omega)
    s_red = theoretical_psd(RedOuDt(theta), omega)
    assert s_mixed == pytest.approx((gamma**2 + 2 * gamma * theta) * s_red + 1.0,
                                    rel=1e-9, abs=1e-12)


def test_wiener_khinchin_red_psd_from_acf():
    # cosine transform of the OU autocovariance reproduces the red density
    theta = 0.1
    t_cut = 40.0 / theta
    for omega in (theta / 2, theta, 5 * theta, 10 * theta):
        val, _ = quad(lambda tau: ou_autocov(theta, tau), 0.0, t_cut,
                      weight="cos", wvar=omega, limit=400)
        assert 2.0 * val == pytest.approx(theoretical_psd(RedOuDt(theta), omega),
                                          rel=0.01)


def test_ar1_psd_low_frequency_matches_sampled_form():
    # at small omega the continuous-limit formula agrees with the exact
    # spectral density of the sampled AR(1) sequence
    phi = 0.9
    for omega in (0.01, 0.05):
        exact = oracles.expected_periodogram("ar1", 1.0, omega, phi=phi)
        assert theoretical_psd(Ar1Driven(phi), omega) == pytest.approx(
            float(exact), rel=0.01)


# ---------------------------------------------------------------------------
# closed-form autocovariance dispatch
# ---------------------------------------------------------------------------

def test_theoretical_acf_dispatch():
    assert theoretical_acf(RedOuDt(0.1), 0.0) == pytest.approx(5.0, rel=1e-12)
    assert theoretical_acf(Ar1Driven(0.9), 1) == pytest.approx(4.736842, abs=1e-6)
    assert theoretical_acf(DiffU(0.1), 1.0, dt=0.1) == pytest.approx(
        -4.5242e-4, rel=1e-4)
    with pytest.raises(ValueError):
        theoretical_acf(DiffU(0.1), 1.0)
    for model in (White(), Mixed(0.1, 0.5), Fgn(0.7)):
        with pytest.raises(ValueError):
            theoretical_acf(model, 1.0)


# ---------------------------------------------------------------------------
# model serialization
# ---------------------------------------------------------------------------

_MODELS = st.one_of(
    st.just(White()),
    st.builds(RedOuDt, st.floats(1e-3, 10.0), st.sampled_from(["stationary", "zero"])),
    st.builds(DiffU, st.floats(1e-3, 10.0), st.sampled_from(["stationary", "zero"])),
    st.builds(Mixed, st.floats(1e-3, 10.0), st.floats(-5.0, 5.0)),
    st.builds(Ar1Driven, st.floats(1e-3, 1.0, exclude_max=True),
              st.sampled_from(["stationary", "zero"])),
    st.builds(Fgn, st.floats(1e-3, 1.0, exclude_max=True)),
)


@given(model=_MODELS)
@settings(max_examples=200)
def test_model_text_round_trip(model):
    assert parse_model(format_model(model)) == model


def test_parse_model_examples():
    assert parse_model("model=red theta=0.1") == RedOuDt(0.1)
    assert parse_model("model=mixed theta=0.1 gamma=0.5") == Mixed(0.1, 0.5)
    assert parse_model("model=fgn hurst=0.7") == Fgn(0.7)
    assert parse_model("model=ar1 phi=0.9 init=zero") == Ar1Driven(0.9, "zero")


@pytest.mark.parametrize("text", [
    "", "theta=0.1", "model=purple", "model=red", "model=red theta=x",
    "model=red theta=0.1 theta=0.2", "model=white theta=0.1",
    "model=red theta 0.1", "model=fgn hurst=1.5",
])
def test_parse_model_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_model(text)


def test_sampling_determinism_across_models():
    for text in ("model=white", "model=red theta=0.1", "model=du theta=0.2",
                 "model=mixed theta=0.1 gamma=0.5", "model=ar1 phi=0.9",
                 "model=fgn hurst=0.7"):
        model = parse_model(text)
        dt = 1.0
        a = increments(model, dt, 500, GaussianStream(77)).values
        b = increments(model, dt, 500, GaussianStream(77)).values
        np.testing.assert_array_equal(a, b)
