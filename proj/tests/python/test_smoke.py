"""Smoke tests for the Python surface: each exposed operation runs end-to-end
and reproduces a value that is checked exhaustively on the C++ side."""

import json
import math
import pathlib

import numpy as np
import pytest

import gibbslab as gl

MODELS = pathlib.Path(__file__).resolve().parents[2] / "models"

SINGLE_Z = json.dumps(
    {"dimension": 1, "side_length": 0, "terms": [{"sites": [0], "pauli": "Z", "coeff": 1.0}]}
)


def trace_distance(a, b):
    return 0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum()


def test_parse_and_load_model():
    h = gl.parse_model(SINGLE_Z)
    assert h.n_sites == 1 and h.dim == 2
    assert np.allclose(h.evals, [-1.0, 1.0])

    chain = gl.load_model(str(MODELS / "ising_chain_3.json"))
    assert chain.n_sites == 3 and chain.dim == 8
    assert chain.coupling_j == pytest.approx(6.0)


def test_partition_and_gibbs():
    h = gl.parse_model(SINGLE_Z)
    assert gl.partition_value(h, 0.0) == pytest.approx(2.0, abs=1e-14)
    assert gl.partition_value(h, 1.0) == pytest.approx(2.0 * math.cosh(1.0), rel=1e-14)
    sigma = gl.gibbs_state(h, 0.7)
    assert np.trace(sigma).real == pytest.approx(1.0, abs=1e-14)
    assert np.min(np.linalg.eigvalsh(sigma)) >= -1e-14


def test_generator_fixed_point_matches_gibbs():
    h = gl.load_model(str(MODELS / "ising_chain_2.json"))
    beta = 2e-4
    gen = gl.full_generator(h, beta)
    assert gen.n_sites == 2
    rho = gl.fixed_point(gen)
    assert trace_distance(rho, gl.gibbs_state(h, beta)) <= 1e-8
    assert gl.kms_residual(gen, gl.gibbs_state(h, beta), samples=20, seed=3) <= 1e-6


def test_depolarizing_limit_gap_and_mixing():
    h = gl.parse_model(SINGLE_Z)
    gen = gl.full_generator(h, 0.0)
    lam = gl.depolarizing_rate()
    assert lam == pytest.approx(1.0 / (math.sqrt(2.0) * math.exp(0.25)), rel=1e-15)
    assert gl.spectral_gap(gen) == pytest.approx(lam, rel=1e-10)
    t_mix = gl.mixing_time(gen, 0.01)
    assert t_mix == pytest.approx(math.log(0.5 / 0.01) / lam, rel=1e-2)


def test_evolution_preserves_trace():
    h = gl.load_model(str(MODELS / "ising_chain_2.json"))
    gen = gl.full_generator(h, 1e-4)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    states = gl.evolve_state(gen, rho0, [0.0, 1.0, 5.0])
    assert len(states) == 3
    for state in states:
        assert np.trace(state).real == pytest.approx(1.0, abs=1e-10)
        assert np.min(np.linalg.eigvalsh(state)) >= -1e-10


def test_threshold_ledger_and_beta_star():
    led = gl.kappa_local(1, 1.0, 1.0 / 615.0, 4)
    assert led.certified and led.margin > 0.0
    assert led.kappa < led.lambda_

    beta_star, r0 = gl.beta_star("local", 1, 1.0)
    assert beta_star > 1.0 / 615.0 and r0 >= 1

    three, simplified = gl.zeta_bound(8, 1.0 / 615.0)
    assert 0.0 < three <= simplified

    divergent = gl.kappa_long_range(1, 5.0, 1.0, 1.0, 1e-3, 1)
    assert divergent.divergent and not divergent.certified


def test_estimator_roundtrip_and_determinism():
    h = gl.parse_model(SINGLE_Z)
    schedule = gl.build_uniform_schedule(h, 0.0, 0.5, 0.25)
    assert schedule.ratio_bound <= math.exp(0.25) + 1e-12
    product = 1.0
    betas = schedule.betas
    for lo, hi in zip(betas, betas[1:]):
        product *= gl.exact_ratio(h, lo, hi)
    shifted = math.exp(0.5 * h.evals[0]) * gl.partition_value(h, 0.5) / gl.partition_value(h, 0.0)
    assert product == pytest.approx(shifted, rel=1e-12)

    rep_a = gl.dyer_frieze_estimate(h, schedule, 0.1, 0.0, 42)
    rep_b = gl.dyer_frieze_estimate(h, schedule, 0.1, 0.0, 42)
    assert rep_a.estimate == rep_b.estimate
    assert rep_a.target == pytest.approx(gl.partition_value(h, 0.5), rel=1e-14)

    harness = gl.success_probability_harness(h, beta_max=0.5, c=0.25, eps=0.1, eps_b=0.0,
                                             seed=11, trials=100)
    assert harness.trials == 100
    assert harness.success_lower_confidence >= 0.70
