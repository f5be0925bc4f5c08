import json
import math

import numpy as np
import pytest

from landauer.envmodels import (MODEL_KINDS, BosonicMode, DebyePhonon,
                                FiniteSpectrum, GappedBCS,
                                TabulatedHeatCapacity, Waveguide1D,
                                entropy_range, evaluate_energy,
                                evaluate_entropy, evaluate_heat_capacity,
                                load_model_file, load_tabulated_csv,
                                model_from_config)
from landauer.errors import ConfigError, OutOfTableRange

ANALYTIC = [
    BosonicMode(1.0),
    BosonicMode(2.5),
    Waveguide1D(12.0, 1.0),
    DebyePhonon(2.0),
    GappedBCS(1.0, 1.0),
    GappedBCS(3.0, 0.4),
    FiniteSpectrum((0.0, 1.0)),
    FiniteSpectrum((0.0, 0.3, 0.3, 2.0)),
]


def test_bosonic_examples():
    m = BosonicMode(1.0)
    assert evaluate_energy(m, 0.0) == 0.0
    T = 1 / math.log(2)
    assert m.occupation(T) == pytest.approx(1.0, rel=1e-14)
    assert evaluate_energy(m, T) == pytest.approx(1.0, rel=1e-14)
    assert evaluate_entropy(m, T) == pytest.approx(2 * math.log(2), rel=1e-14)
    assert 2 * math.log(2) == pytest.approx(1.386294, abs=1e-6)


def test_bosonic_entropy_matches_occupation_formula():
    m = BosonicMode(0.7)
    for T in (0.05, 0.3, 1.0, 8.0):
        n = m.occupation(T)
        direct = (n + 1) * math.log(n + 1) - n * math.log(n)
        assert evaluate_entropy(m, T) == pytest.approx(direct, rel=1e-12)


def test_bosonic_deep_cold_is_finite():
    m = BosonicMode(1.0)
    for T in (1e-3, 2e-3, 0.01):
        assert 0.0 <= evaluate_entropy(m, T) < 1e-40
        assert 0.0 <= evaluate_heat_capacity(m, T) < 1e-38


def test_waveguide_examples():
    assert evaluate_energy(Waveguide1D(12, 1), 1.0) == pytest.approx(math.pi)
    assert evaluate_entropy(Waveguide1D(6, 1), 2.0) == pytest.approx(2 * math.pi)
    assert evaluate_heat_capacity(Waveguide1D(6, 1), 2.0) == pytest.approx(2 * math.pi)


def test_heat_capacity_examples():
    assert evaluate_heat_capacity(DebyePhonon(2.0), 3.0) == 54.0
    assert evaluate_heat_capacity(GappedBCS(1, 1), 1e-3) == 0.0
    two = FiniteSpectrum((0.0, 1.0))
    assert evaluate_heat_capacity(two, 1.0) == pytest.approx(math.e / (1 + math.e) ** 2, rel=1e-13)
    assert math.e / (1 + math.e) ** 2 == pytest.approx(0.196612, abs=1e-6)


@pytest.mark.parametrize("m", ANALYTIC, ids=repr)
def test_zero_temperature(m):
    assert evaluate_energy(m, 0.0) == 0.0
    assert evaluate_entropy(m, 0.0) == pytest.approx(m.ground_entropy(), abs=1e-15)


def test_degenerate_ground_entropy():
    m = FiniteSpectrum((0.0, 0.0, 0.0, 1.0))
    assert evaluate_entropy(m, 0.0) == pytest.approx(math.log(3))
    assert m.ground_entropy() == pytest.approx(math.log(3))


@pytest.mark.parametrize("m", ANALYTIC, ids=repr)
@pytest.mark.parametrize("T", [0.2, 1.0, 5.0])
def test_thermodynamic_consistency(m, T):
    h = 1e-5 * T
    c = evaluate_heat_capacity(m, T)
    de = (evaluate_energy(m, T + h) - evaluate_energy(m, T - h)) / (2 * h)
    ds = (evaluate_entropy(m, T + h) - evaluate_entropy(m, T - h)) / (2 * h)
    assert de == pytest.approx(c, rel=1e-5)
    assert ds == pytest.approx(c / T, rel=1e-5)


@pytest.mark.parametrize("m", ANALYTIC, ids=repr)
def test_monotone_in_temperature(m):
    ts = np.linspace(0.05, 6.0, 120)
    e = [evaluate_energy(m, t) for t in ts]
    s = [evaluate_entropy(m, t) for t in ts]
    assert all(b > a for a, b in zip(e, e[1:]))
    assert all(b > a for a, b in zip(s, s[1:]))


def test_finite_spectrum_energy_decreases_over_all_beta():
    m = FiniteSpectrum((0.0, 0.4, 1.3, 2.0))
    betas = np.concatenate([[-math.inf], np.linspace(-30, 30, 601), [math.inf]])
    e = [m.energy_beta(b) for b in betas]
    assert all(b < a for a, b in zip(e, e[1:]))
    assert e[0] == pytest.approx(2.0)
    assert e[-1] == 0.0


def test_finite_spectrum_negative_temperature_matches_beta():
    m = FiniteSpectrum((0.0, 1.0, 1.5))
    assert m.energy(-2.0) == pytest.approx(m.energy_beta(-0.5))
    assert m.energy(-2.0) > m.energy_beta(0.0)


def test_finite_spectrum_sorts_levels():
    assert FiniteSpectrum((2.0, 0.0, 1.0)).levels == (0.0, 1.0, 2.0)


def test_gapped_asymptotics_well_below_gap():
    # the first neglected term is O(T/delta), so 5% needs T below about delta/20
    exact = GappedBCS(2.0, 1.0)
    asym = GappedBCS(2.0, 1.0, asymptotic=True)
    T = 1 / 50
    assert asym.energy(T) == pytest.approx(exact.energy(T), rel=0.05)
    assert asym.entropy(T) == pytest.approx(exact.entropy(T), rel=0.05)


def test_gapped_asymptotics_at_tenth_of_gap():
    # E1(z) e^z z = 1 - 1/z + 2/z^2 - ...; at z=10 the entropy ratio is 1/(1 - 0.1 + 0.02 - ...)
    exact = GappedBCS(1.0, 1.0)
    asym = GappedBCS(1.0, 1.0, asymptotic=True)
    z = 10.0
    T = 1 / z
    ratio_s = asym.entropy(T) / exact.entropy(T)
    assert ratio_s - 1 == pytest.approx(1 / z, rel=0.2)
    ratio_e = asym.energy(T) / exact.energy(T)
    assert ratio_e - 1 == pytest.approx(2 / z, rel=0.3)


def test_gapped_large_z_no_underflow_garbage():
    m = GappedBCS(1.0, 1.0)
    for T in (1 / 50, 1 / 200, 1 / 700):
        assert m.energy(T) >= 0.0
        assert m.entropy(T) >= 0.0


def test_entropy_range_examples():
    two = FiniteSpectrum((0.0, 1.0))
    r = entropy_range(two, math.inf)
    assert r.max_delta == pytest.approx(0.0, abs=1e-15)
    r0 = entropy_range(two, 0.0)
    assert r0.min_delta == 0.0
    assert r0.max_delta == pytest.approx(math.log(2))
    for T in (0.0, 1.0, 30.0):
        assert entropy_range(Waveguide1D(1, 1), T).max_delta == math.inf
    r1 = entropy_range(BosonicMode(1.0), 1.0)
    assert r1.min_delta == pytest.approx(-evaluate_entropy(BosonicMode(1.0), 1.0))


@pytest.mark.parametrize("m", ANALYTIC, ids=repr)
def test_entropy_range_brackets_zero(m):
    for T in (0.0, 0.5, 4.0):
        r = entropy_range(m, T)
        assert r.min_delta <= 0.0 <= r.max_delta


@pytest.mark.parametrize("bad", [
    lambda: BosonicMode(0.0),
    lambda: Waveguide1D(-1.0, 1.0),
    lambda: DebyePhonon(0.0),
    lambda: GappedBCS(1.0, 0.0),
    lambda: FiniteSpectrum((1.0,)),
    lambda: FiniteSpectrum((0.0, math.inf)),
])
def test_invalid_parameters(bad):
    with pytest.raises(ConfigError):
        bad()


@pytest.mark.parametrize("T", [-1.0, math.nan])
def test_negative_temperature_rejected_for_unbounded(T):
    with pytest.raises(ValueError):
        evaluate_energy(BosonicMode(1.0), T)


def debye_table(a=1.0, tmax=2.0, n=4001):
    ts = np.linspace(0.0, tmax, n)
    return TabulatedHeatCapacity(tuple(ts), tuple(a * ts ** 3))


def test_tabulated_reproduces_debye():
    tab = debye_table()
    ref = DebyePhonon(1.0)
    for T in (0.3, 1.0, 1.7):
        assert tab.heat_capacity(T) == pytest.approx(ref.heat_capacity(T), rel=1e-5)
        assert tab.energy(T) == pytest.approx(ref.energy(T), rel=1e-5)
        assert tab.entropy(T) == pytest.approx(ref.entropy(T), rel=1e-5)


def test_tabulated_linear_capacity_is_exact():
    # C = kT on the samples: E = kT^2/2 and S = kT for any partition
    tab = TabulatedHeatCapacity((0.0, 0.5, 1.3, 4.0), (0.0, 1.0, 2.6, 8.0))
    for T in (0.2, 0.5, 1.0, 3.9, 4.0):
        assert tab.energy(T) == pytest.approx(T * T, rel=1e-14)
        assert tab.entropy(T) == pytest.approx(2 * T, rel=1e-14)


def test_tabulated_consistency():
    tab = TabulatedHeatCapacity((0.0, 1.0, 2.0, 3.0), (0.0, 0.5, 3.0, 3.5))
    for T in (0.4, 1.5, 2.6):
        h = 1e-5 * T
        c = tab.heat_capacity(T)
        assert (tab.energy(T + h) - tab.energy(T - h)) / (2 * h) == pytest.approx(c, rel=1e-5)
        assert (tab.entropy(T + h) - tab.entropy(T - h)) / (2 * h) == pytest.approx(c / T, rel=1e-5)


def test_tabulated_range():
    tab = TabulatedHeatCapacity((0.0, 1.0), (0.0, 1.0))
    with pytest.raises(OutOfTableRange):
        tab.energy(1.5)
    r = entropy_range(tab, 0.5)
    assert r.max_delta == pytest.approx(tab.entropy(1.0) - tab.entropy(0.5))


@pytest.mark.parametrize("t, c", [
    ((0.1, 1.0), (0.0, 1.0)),
    ((0.0, 1.0), (0.5, 1.0)),
    ((0.0, 1.0, 1.0), (0.0, 1.0, 2.0)),
    ((0.0, 1.0), (0.0, -1.0)),
    ((0.0,), (0.0,)),
])
def test_tabulated_invalid(t, c):
    with pytest.raises(ConfigError):
        TabulatedHeatCapacity(t, c)


def test_csv_loading(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("T,C\n0,0\n1,2\n2,4\n")
    tab = load_tabulated_csv(path)
    assert tab.entropy(2.0) == pytest.approx(4.0)
    assert model_from_config({"kind": "tabulated", "csv": str(path)}).to_config()["csv"] == str(path)
    bad = tmp_path / "bad.csv"
    bad.write_text("T,C\n0,0\n1,x\n")
    with pytest.raises(ConfigError):
        load_tabulated_csv(bad)


@pytest.mark.parametrize("m", ANALYTIC + [TabulatedHeatCapacity((0.0, 1.0), (0.0, 2.0))], ids=repr)
def test_config_round_trip(m):
    cfg = json.loads(json.dumps(m.to_config()))
    assert model_from_config(cfg) == m


@pytest.mark.parametrize("cfg", [
    {},
    {"kind": "nope"},
    {"kind": "bosonic"},
    {"kind": "waveguide", "L": "x", "c": 1},
    {"kind": "spectrum", "levels": 3},
    {"kind": "tabulated"},
    [1, 2],
])
def test_config_errors(cfg):
    with pytest.raises(ConfigError):
        model_from_config(cfg)


def test_model_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"kind": "phonon", "a": 2}')
    assert model_from_config(load_model_file(p)) == DebyePhonon(2.0)
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(ConfigError):
        load_model_file(tmp_path / "broken.json")


def test_kind_listing():
    assert set(MODEL_KINDS) == {"bosonic", "waveguide", "phonon", "gapped", "spectrum", "tabulated"}
