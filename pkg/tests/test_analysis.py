import xml.etree.ElementTree as ET

import numpy as np
import pytest

from kfreesums import (
    EnvelopeSpec,
    ConfigError,
    FitError,
    PartialSumSeries,
    RangeError,
    build_real_character,
    character_rule,
    checkpoint_schedule,
    direct_summatory,
    envelope_ratio,
    figure1,
    fit_exponent,
    power_envelope,
    synthetic_power_series,
)


def constant_series(xs, value):
    cps = [(x, value) for x in xs]
    running = [(x, abs(value)) for x in xs]
    return PartialSumSeries("const", cps, running)


def test_envelope_ratio_zero_series():
    series = constant_series([10, 100, 1000], 0)
    ratio, _ = envelope_ratio(series, power_envelope(0.25), x_min=10)
    assert ratio == 0.0


def test_envelope_ratio_linear_series():
    xs = checkpoint_schedule(10**4)
    cps = [(x, x) for x in xs]
    running = [(x, x) for x in xs]
    series = PartialSumSeries("id", cps, running)
    ratio, _ = envelope_ratio(series, power_envelope(1.0), x_min=10)
    assert ratio == pytest.approx(1.0, rel=1e-12)


def test_envelope_ratio_scaling_is_exact():
    series = synthetic_power_series(0.4, 10**5, checkpoint_schedule(10**5))
    r1, at1 = envelope_ratio(series, power_envelope(0.25, scale=1.0))
    r2, at2 = envelope_ratio(series, power_envelope(0.25, scale=2.0))
    assert r2 == r1 / 2 and at1 == at2


def test_envelope_ratio_empty_window():
    series = constant_series([10, 20], 1)
    with pytest.raises(RangeError):
        envelope_ratio(series, power_envelope(0.25), x_min=100)


def test_envelope_kinds_and_validation():
    e1 = EnvelopeSpec(kind="theorem1", k=2, lam=0.5)
    e2 = EnvelopeSpec(kind="mobius", c=1.0)
    x = np.array([10.0, 100.0, 1000.0])
    assert np.all(e1.value(x) > 0) and np.all(np.isfinite(e1.value(x)))
    assert np.all(e2.value(x) > 0)
    with pytest.raises(ConfigError):
        EnvelopeSpec(kind="power")          # missing alpha
    with pytest.raises(ConfigError):
        EnvelopeSpec(kind="gauss", alpha=1)  # unknown kind
    with pytest.raises(ConfigError):
        EnvelopeSpec(kind="power", alpha=0.25, scale=0.0)


@pytest.mark.parametrize("beta", [0.2, 0.25, 0.5])
def test_fit_recovers_synthetic_exponent(beta):
    series = synthetic_power_series(beta, 10**6, checkpoint_schedule(10**6))
    fit = fit_exponent(series, x_min=10**3)
    assert abs(fit.slope - beta) <= 0.02


def test_fit_exact_linear():
    xs = checkpoint_schedule(10**5)
    series = PartialSumSeries("id", [(x, x) for x in xs], [(x, x) for x in xs])
    fit = fit_exponent(series, x_min=10)
    assert abs(fit.slope - 1.0) <= 0.001
    assert fit.residual < 1e-9


def test_fit_sqrt_floor_series():
    import math

    xs = checkpoint_schedule(10**6)
    cps = [(x, math.isqrt(x)) for x in xs]
    series = PartialSumSeries("sqrt", cps, cps)
    fit = fit_exponent(series, x_min=10**3)
    assert abs(fit.slope - 0.5) <= 0.02


def test_fit_errors():
    series = constant_series([10, 100, 1000], 0)
    with pytest.raises(FitError):
        fit_exponent(series, x_min=10)   # all-zero running max
    short = synthetic_power_series(0.3, 100, [20, 40, 80, 100])
    with pytest.raises(FitError):
        fit_exponent(short, x_min=10)    # < 10 checkpoints


def test_figure_outputs(tmp_path):
    csv_path = tmp_path / "fig.csv"
    svg_path = tmp_path / "fig.svg"
    schedule = checkpoint_schedule(10**4)
    series = figure1(10**4, csv_path, svg_path, schedule=schedule)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "x,M,env_lo,env_hi"
    assert len(lines) == 1 + len(series.checkpoints)
    assert len(series.checkpoints) == len(schedule)

    tree = ET.parse(svg_path)
    polylines = tree.getroot().findall(".//{http://www.w3.org/2000/svg}polyline")
    assert len(polylines) == 3

    with pytest.raises(RangeError):
        figure1(100, csv_path, svg_path)


def test_figure_small_value_matches_enumeration(tmp_path):
    series = figure1(10**3, tmp_path / "f.csv", tmp_path / "f.svg")
    chi3 = build_real_character(3)
    check = direct_summatory(character_rule(chi3, k=2), 10, schedule=[10])
    assert check.final == (10, 1)
    assert dict(series.checkpoints)[10] == 1


def test_envelope_csv_reals_have_six_significant_digits(tmp_path):
    figure1(10**3, tmp_path / "f.csv", tmp_path / "f.svg")
    row = (tmp_path / "f.csv").read_text().splitlines()[1].split(",")
    assert row[2].startswith("-")
    assert len(row[3].replace(".", "").lstrip("0")) <= 6
