import json

import numpy as np
import pytest

from ..errors import DomainError
from .base import OperatorKind, RitzResult
from .witten import PAIRING_FLOOR, TRUNCATION_FACTOR, supersymmetric_pairing, witten_build, witten_spectrum


def test_first_extension_row():
    model = witten_build(1.0, 0.5, mu=1.0)
    row = model.row("delta_r/row1")
    assert row.admissible and row.table_condition
    assert (row.a, row.b, row.sigma, row.tau, row.theta) == (0.0, 0.0, 1.0, 1.5, 1.0)
    assert row.spec.kind is OperatorKind.W
    assert row.spec.eta == pytest.approx(-1.0), "coupling is -2 mu u"
    assert row.spec.shift == pytest.approx(-3.0)
    assert row.spec.shift_odd == pytest.approx(-2.0)


@pytest.mark.parametrize("u", [0.25, 0.5, 0.75])
def test_impossible_row(u):
    for kappa in np.linspace(-1.4, 1.9, 12):
        row = witten_build(kappa, u).row("delta_r/row3")
        assert not row.table_condition and not row.admissible


@pytest.mark.parametrize("u", [0.25, 0.5, 0.75])
def test_middle_table_agrees_with_hypotheses(u):
    for kappa in np.linspace(-1.4, 1.9, 23) + 0.013:
        model = witten_build(kappa, u)
        for number in (1, 2, 3):
            row = model.row(f"delta_r/row{number}")
            assert row.table_condition == row.hypotheses_ok, f"row {number} at kappa={kappa}, u={u}"


@pytest.mark.parametrize("u", [0.25, 0.5, 0.75])
def test_outer_tables_agree_with_root_floors(u):
    for kappa in np.linspace(-1.4, 1.9, 23) + 0.013:
        model = witten_build(kappa, u)
        for label in ("delta_r-1/row1", "delta_r-1/row2", "delta_r+1/row1", "delta_r+1/row2"):
            row = model.row(label)
            assert row.table_condition == row.hypotheses_ok, f"{label} at kappa={kappa}, u={u}"


def test_upper_second_row_fails():
    row = witten_build(0.6, 0.5).row("delta_r+1/row2")
    assert row.b == pytest.approx(-2.2)
    assert row.tau == pytest.approx(-1.6)
    assert not row.table_condition and not row.admissible


def test_shifts_follow_the_sign():
    plus = witten_build(1.0, 0.5, s=2.0, sign="+")
    minus = witten_build(1.0, 0.5, s=2.0, sign="-")
    assert plus.row("delta_r-1/row1").shift == pytest.approx(-2.0 * 4.0)
    assert minus.row("delta_r-1/row1").shift == pytest.approx(2.0 * 4.0)
    assert plus.row("delta_r+1/row1").shift == pytest.approx(-2.0 * 1.0)


def test_input_checks():
    with pytest.raises(DomainError):
        witten_build(1.0, 1.5)
    with pytest.raises(DomainError):
        witten_build(1.0, 0.5, mu=0.0)
    with pytest.raises(DomainError):
        witten_build(1.0, 0.5, sign="*")
    with pytest.raises(DomainError):
        witten_build(1.0, 0.5, length=3)


@pytest.mark.parametrize("s", [1.0, 2.0])
def test_length_one_zero_mode_and_spacing(s):
    model = witten_build(1.0, 0.5, s=s, mu=0.0, length=1)
    assert model.row("delta_r/row1").spec.xi == 0.0
    spectra = witten_spectrum(model, 32)
    values = spectra["delta_r/row1"].eigenvalues
    assert abs(values[0]) <= 1e-8 * s
    np.testing.assert_allclose(np.diff(values), 4 * s, rtol=1e-12)
    np.testing.assert_allclose(np.diff(spectra["delta_r+1/row1"].eigenvalues), 4 * s, rtol=1e-12)


def test_length_one_other_sign_lifts_the_zero_mode():
    model = witten_build(1.0, 0.5, mu=0.0, sign="-", length=1)
    values = witten_spectrum(model, 16)["delta_r/row1"].eigenvalues
    assert values[0] == pytest.approx(2 * (1 + 2.0))


def test_small_coupling_limit():
    gaps = []
    for mu in (1e-2, 1e-3):
        result = witten_spectrum(witten_build(1.0, 0.5, mu=mu), 32)["delta_r-1/row1"]
        gaps.append(np.max(np.abs(result.gaps)))
    assert gaps[1] < gaps[0]
    assert gaps[1] < 1e-4


def test_model_json():
    model = witten_build(1.0, 0.5)
    data = json.loads(model.dumps())
    assert data["admissibility"]["delta_r/row1"] is True
    assert data["admissibility"]["delta_r/row3"] is False
    assert len(data["rows"]) == 8
    assert {name for name, _, _ in model.components} == {
        label for label, ok in model.admissibility.items() if ok
    }


@pytest.mark.slow
def test_supersymmetric_pairing():
    model = witten_build(1.0, 0.5, mu=1.0)
    spectra = witten_spectrum(model, 256)
    report = supersymmetric_pairing(spectra["delta_r-1/row1"], spectra["delta_r/row1"], count=3)
    assert len(report["pairs"]) == 3
    assert report["within_truncation"], list(zip(report["pairs"], report["allowed"]))
    for (value, nearest, _), bound in zip(report["pairs"], report["allowed"]):
        assert abs(nearest - value) <= bound
    print(f"\n✓ pairing within {report['max_relative']:.2e}")


def ritz(values, changes=None):
    values = np.asarray(values, dtype=float)
    return RitzResult("P", 8, values, np.arange(values.size), values, ("even",) * values.size,
                      convergence=None if changes is None else np.asarray(changes, dtype=float))


def test_pairing_tolerance_follows_truncation_changes():
    lower = ritz([0.0, 4.0, 8.0], [0.0, 1e-3, 2e-3])
    middle = ritz([2.0, 4.002, 8.001], [0.0, 1e-3, 0.0])
    report = supersymmetric_pairing(lower, middle, count=2)
    assert [pair[0] for pair in report["pairs"]] == [4.0, 8.0], "zero modes are skipped"
    assert report["changes"] == [(1e-3, 1e-3), (2e-3, 0.0)]
    assert report["allowed"][0] == pytest.approx(4e-6 + 2e-3 * TRUNCATION_FACTOR)
    assert report["within_truncation"]


def test_pairing_without_changes_uses_the_floor():
    report = supersymmetric_pairing(ritz([1.0, 5.0]), ritz([1.0 + 1e-7, 5.01]))
    assert report["allowed"] == pytest.approx([PAIRING_FLOOR, 5 * PAIRING_FLOOR])
    assert not report["within_truncation"]
    assert report["max_relative"] == pytest.approx(2e-3)
