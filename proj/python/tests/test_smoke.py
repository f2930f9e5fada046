import cmath
import math

import pytest

import ncgtorus

THETA3 = [[0, 0.3, 0], [-0.3, 0, 0], [0, 0, 0]]


def test_kr_signs():
    assert ncgtorus.kr_signs(0) == (1, 1, 1)
    assert ncgtorus.kr_signs(3) == (-1, 1, None)
    assert ncgtorus.kr_signs(11) == ncgtorus.kr_signs(3)


def test_monomial_product_phase():
    theta = [[0, 0.25], [-0.25, 0]]
    phase, index = ncgtorus.monomial_product([0, 1], [1, 0], theta)
    assert index == [1, 1]
    assert abs(phase - cmath.exp(-0.5j * math.pi)) < 1e-15


def test_principality():
    report = ncgtorus.check_principality(THETA3, 2, 2)
    assert report and all(e["pass"] for e in report)


def test_dirac_spectrum_count():
    ev = ncgtorus.dirac_spectrum(THETA3, 2, 1, 1)
    assert len(ev) == 54
    assert sum(abs(e - math.sqrt(3)) < 1e-9 for e in ev) == 8


def test_twisted_spectra_constant_family():
    flat, full = ncgtorus.twisted_spectra(THETA3, 2, 1, 2, [1.0, -2.0])
    expected = sorted(s * (c - a + 2 * b) for a in range(-2, 3) for b in range(-2, 3) for c in range(-2, 3) for s in (1, -1))
    assert max(abs(x - y) for x, y in zip(flat, expected)) < 1e-10
    assert len(full) == len(flat)


def test_recipe():
    r = ncgtorus.base_triple_recipe(0, 3)
    assert r["pathological"] and r["j0"] == "J"


def test_scenario_run():
    report = ncgtorus.run_scenario({"theta": THETA3, "n": 2, "m": 1, "lambda": 3}, only=["base", "twist"])
    assert report["passed"]
    assert set(report["stages"]) == {"base", "twist"}


def test_bad_config():
    with pytest.raises(ValueError):
        ncgtorus.run_scenario({"theta": THETA3, "n": 2, "m": 1, "bogus": 1})


def test_csv():
    assert ncgtorus.spectrum_csv([0.0, 0.0, 1.0]) == "index,eigenvalue,multiplicity\n0,0,2\n1,1,1\n"
