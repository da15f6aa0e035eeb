from __future__ import annotations

import math

import numpy as np
import pytest

from distver import ConfigurationError, DomainError
from distver.ensembles import EnsembleSpec, sample_ensemble
from distver.exponents import (
    ExponentQuery,
    SpectralParams,
    cluster_series,
    cluster_series_residue,
    deterministic_generic_exponent,
    ensemble_params,
    entropy_hq,
    f_theta,
    gamma_bar,
    gamma_m,
    gv_distance,
    h2,
    q_alpha_beta,
    spectral_root_t,
    spectrum,
    technique_exponent,
)
from distver.search import all_codewords


def test_entropy_examples():
    assert h2(0.5) == pytest.approx(1.0, abs=1e-15)
    assert entropy_hq(4, 0.75) == pytest.approx(1.0, abs=1e-15)
    assert entropy_hq(7, 0.0) == 0.0
    assert entropy_hq(2, 1.0) == 0.0
    with pytest.raises(DomainError):
        entropy_hq(2, 1.5)
    with pytest.raises(DomainError):
        entropy_hq(1, 0.5)


def test_gv_examples():
    assert gv_distance(2, 0.5) == pytest.approx(0.110, abs=5e-4)
    for cls in ("classical", "stabilizer", "css"):
        assert gv_distance(2, 1.0, cls) == 0.0
    d = gv_distance(2, 0.0, "stabilizer")
    assert entropy_hq(4, d) == pytest.approx(0.5, abs=1e-10)
    assert technique_exponent(ExponentQuery("CS", "stabilizer", R=0.0)) == pytest.approx(0.22, abs=0.01)
    with pytest.raises(DomainError):
        gv_distance(2, 1.2)
    with pytest.raises(ConfigurationError):
        gv_distance(2, 0.5, "ldpc-classical")


def test_spectral_root_examples():
    assert spectral_root_t(6, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert spectral_root_t(6, 0.5) == pytest.approx(1.0, abs=1e-9)
    t = spectral_root_t(6, 0.25)
    assert 0 < t < 1
    ts = [spectral_root_t(6, b) for b in np.linspace(0.01, 0.49, 30)]
    assert all(a < b for a, b in zip(ts, ts[1:]))
    # the defining equation holds at the root
    lhs = ((1 + t) ** 5 + (1 - t) ** 5) / ((1 + t) ** 6 + (1 - t) ** 6)
    assert lhs == pytest.approx(0.75, abs=1e-10)


def test_q_alpha_beta_limits():
    assert q_alpha_beta(3, 6, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert q_alpha_beta(3, 5, 0.9) == -math.inf  # odd m, beyond 1 - 1/m
    assert math.isfinite(q_alpha_beta(3, 6, 0.9))


@pytest.mark.parametrize("lm", [(3, 6), (4, 8), (3, 4)])
def test_ensemble_roots(lm):
    p = ensemble_params(*lm)
    assert abs(spectrum(*lm, p.delta_star)) < 1e-8
    assert q_alpha_beta(*lm, p.delta_star) == pytest.approx(-h2(p.delta_star), abs=1e-8)
    assert abs(f_theta(*lm, p.theta_star)) < 1e-8
    assert f_theta(*lm, p.theta_star - 0.05) < 0 < f_theta(*lm, p.theta_star + 0.05)


def test_ensemble_params_values():
    p = ensemble_params(3, 6)
    assert p.theta_star == pytest.approx(0.483, abs=1e-3)
    assert p.delta_star == pytest.approx(0.02, abs=5e-3)
    assert p.alpha == 0.5 and p.rate == 0.5
    assert f_theta(3, 6, 0.3) < 0
    assert f_theta(3, 6, 1.0) >= 0
    assert 0 < ensemble_params(4, 8).delta_star < gv_distance(2, 0.5)
    with pytest.raises(ConfigurationError):
        ensemble_params(2, 6)


def test_spectrum_against_sampled_codes():
    """Order-of-magnitude agreement of the average weight spectrum at n = 30.

    Every column has odd weight, so all codewords have even weight; w = 12 is beta = 0.4.
    """
    n, w = 30, 12
    counts = []
    for seed in range(20):
        code = sample_ensemble(EnsembleSpec("A", n, 3, 6, seed=seed))
        X = all_codewords(code.block, w)
        counts.append(int((X.sum(axis=1) == w).sum()))
    empirical = math.log2(np.mean(counts)) / n
    assert abs(empirical - spectrum(3, 6, w / n)) < 0.1


def test_cs_ldpc_rounded_parameters():
    p = SpectralParams(3, 6, 0.02, 0.483)
    F = technique_exponent(ExponentQuery("CS", "ldpc-classical"), p)
    assert F == pytest.approx(h2(0.02) - 0.483 * h2(0.02 / 0.483), abs=1e-12)
    assert F == pytest.approx(0.021, abs=5e-4)


def test_css_substitution():
    R = 0.3
    css = technique_exponent(ExponentQuery("SW", "css", R=R, delta=0.05))
    classical = technique_exponent(ExponentQuery("SW", "classical", R=(1 + R) / 2, delta=0.05))
    assert css == classical


def test_combined_is_minimum():
    for R in (0.1, 0.5, 0.8):
        each = [technique_exponent(ExponentQuery(t, "classical", R=R)) for t in ("SW", "MB", "PB", "CS")]
        assert technique_exponent(ExponentQuery("combined", "classical", R=R)) == min(each)
    assert deterministic_generic_exponent(0.25) == pytest.approx(0.1875)


def test_exponent_errors():
    with pytest.raises(ConfigurationError):
        ExponentQuery("XX", "classical", R=0.5)
    with pytest.raises(ConfigurationError):
        technique_exponent(ExponentQuery("PB", "ldpc-classical", l=3, m=6))
    with pytest.raises(ConfigurationError):
        technique_exponent(ExponentQuery("CS", "ldpc-classical"))
    with pytest.raises(ConfigurationError):
        technique_exponent(ExponentQuery("IC", "classical", R=0.5))
    with pytest.raises(ConfigurationError):
        technique_exponent(ExponentQuery("SW", "ldpc-quantum", l=3, m=6))
    with pytest.raises(ConfigurationError):
        technique_exponent(ExponentQuery("SW", "classical"))
    with pytest.raises(DomainError):
        ExponentQuery("SW", "classical", R=1.5)


def test_cluster_series_examples():
    assert cluster_series(2, 7, 10) == [6**h for h in range(11)]
    assert cluster_series(3, 3, 4) == [1, 2, 5, 12, 29]
    exact = cluster_series(4, 5, 20)[20]
    assert cluster_series_residue(4, 5, 20)[20] == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("q", [3, 4, 5, 8])
def test_gamma_monotone_and_bounded(q):
    ms = [3, 4, 5, 10, 100, 1000, math.inf]
    gs = [gamma_m(q, m).gamma for m in ms]
    assert all(a < b for a, b in zip(gs, gs[1:]))
    assert 1 < gs[0] and gs[-1] < (q - 1) / math.log(q)
    assert gamma_bar(q, math.inf) == pytest.approx((q - 1) / math.log(q))


def test_gamma_examples():
    assert gamma_m(3, 3).gamma == pytest.approx(1.20711, abs=5e-6)
    assert gamma_m(4, math.inf).gamma == pytest.approx(1.61803, abs=5e-5)
    assert gamma_m(2, 7).gamma == pytest.approx(1.0)
    assert gamma_bar(2, math.inf) == pytest.approx(1.44270, abs=5e-6)
    with pytest.raises(ConfigurationError):
        gamma_m(3, 1)


def test_gamma_stabilizer():
    assert gamma_m(2, 6, stabilizer=True).gamma == pytest.approx(2.0, abs=1e-10)
    for q, m in ((3, 4), (4, 10), (5, math.inf)):
        assert gamma_m(q, m, stabilizer=True).gamma == pytest.approx(q * gamma_m(q, m).gamma, rel=1e-9)


def test_ic_exponent():
    F = technique_exponent(ExponentQuery("IC", "ldpc-classical", l=3, m=6))
    p = ensemble_params(3, 6)
    assert F == pytest.approx(p.delta_star * math.log2(5))  # q = 2: gamma = 1
