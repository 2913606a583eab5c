import math

import numpy as np
import pytest

import fbmc_sim


def test_round_trip_through_the_filter_bank():
    h = fbmc_sim.PrototypeFilter.phydyas(4, 64)
    assert h.taps.shape == (256,)
    assert h.energy() == pytest.approx(64.0)
    x = fbmc_sim.generate_symbols(64, 10, "qpsk", 5)
    assert x.shape == (64, 10)
    s = fbmc_sim.synthesize(x, h)
    assert s.dtype == np.complex128
    assert s.size == (2 * 10 + 7) * 32
    y = fbmc_sim.analyze(s, h, 64)
    assert np.sqrt(np.mean(np.abs(y - x) ** 2)) < 2e-3


def test_ofdm_impulse():
    x = np.ones((64, 1), complex)
    s = fbmc_sim.ofdm_modulate(x)
    assert s[0] == pytest.approx(1.0)
    assert np.allclose(s[1:], 0.0)


def test_compander_values():
    y = fbmc_sim.compand(np.array([0.1]), "mulaw", mu=255.0, peak=1.0)
    assert y[0] == pytest.approx(math.log(26.5) / math.log(256.0))
    r = np.linspace(-3, 3, 101)
    for scheme in ("uniform", "linear"):
        y = fbmc_sim.compand(r, scheme, sigma=1.0)
        assert np.all(np.diff(y) >= 0)
        assert np.allclose(fbmc_sim.expand(y, scheme, sigma=1.0), r, atol=1e-9)
    assert fbmc_sim.compand(np.array([50.0]), "uniform", sigma=1.0)[0] == pytest.approx(1.5)


def test_invalid_spec_raises():
    with pytest.raises(ValueError):
        fbmc_sim.compand(np.array([1.0]), "linear", c=1.0, cutoff=0.5, sigma=1.0)


def test_papr_and_ccdf():
    p = fbmc_sim.papr_per_interval(np.array([0, 0, 2, 0], complex), 4, 1.0)
    assert p[0] == pytest.approx(10 * math.log10(4))
    grid = np.array([4.0, 6.0])
    assert list(fbmc_sim.ccdf_empirical(np.full(10, 5.0), grid)) == [1.0, 0.0]
    theory = fbmc_sim.ccdf_theoretical("identity", np.array([0.0, 10.3, 30.0]), 512)
    assert theory[0] == pytest.approx(1.0)
    assert 5e-3 < theory[1] < 2e-2


def test_companded_frame_lowers_papr():
    h = fbmc_sim.PrototypeFilter.phydyas(4, 128)
    s = fbmc_sim.synthesize(fbmc_sim.generate_symbols(128, 20, "qpsk", 1), h)
    y = fbmc_sim.compand_frame(s, h, 128, "linear")
    assert np.allclose(np.angle(y[np.abs(s) > 1e-9] / s[np.abs(s) > 1e-9]), 0.0, atol=1e-12)
    assert np.max(np.abs(y) ** 2) / np.mean(np.abs(y) ** 2) < np.max(np.abs(s) ** 2) / np.mean(np.abs(s) ** 2)


def test_ber_and_psd():
    snr = fbmc_sim.ebn0_to_snr_db(0.0, "qpsk", 64, 64)
    p = fbmc_sim.ber_run("identity", snr, min_errors=2000, max_bits=200000, seed=3)
    assert abs(p.ber - 0.5 * math.erfc(1.0)) < 0.005
    tone = np.exp(2j * np.pi * 0.25 * np.arange(8192))
    f, psd = fbmc_sim.psd_welch(tone, 1024, 0.5)
    assert f[np.argmax(psd)] == pytest.approx(0.25)


def test_run_experiment(tmp_path):
    settings = {"experiment": "ccdf", "subcarriers": "32", "symbols": "100",
                "blocks_per_frame": "20", "gamma_db": "0:10:1", "out": str(tmp_path)}
    files = fbmc_sim.run_experiment(settings)
    text = open(files[0]).read().splitlines()
    assert text[0].startswith("# fbmc-sim ")
    assert text[1] == "scheme,K,gamma_db,ccdf_empirical,ccdf_theoretical"
    assert len(text) == 2 + 4 * 11
    with pytest.raises(ValueError):
        fbmc_sim.run_experiment({"cutoff": "0.5", "scheme": "linear"})
