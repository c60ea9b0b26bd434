import math
import os
import sys

path = os.environ.get("FOURL_PYTHON_PATH")
if path:
    sys.path.insert(0, path)

import fourl  # noqa: E402


def test_character_count():
    chars = fourl.characters(15)
    assert len(chars) == 8
    assert sum(c["primitive"] for c in chars) == 3


def test_gauss_sum_modulus():
    for c in fourl.characters(13):
        if c["primitive"]:
            assert abs(abs(fourl.gauss_sum(c["id"])) - math.sqrt(13)) < 1e-12


def test_lambda():
    lam = fourl.solve_lambda()
    assert abs(math.exp(-lam) - lam - lam * lam / 2) < 1e-14


def test_functional_equation():
    chi = fourl.characters(7, even_primitive=True)[0]["id"]
    assert fourl.fe_residual(chi, complex(0.3, 2.0)) < 1e-10


def test_moment_report():
    r = fourl.moment(29, (1, 5, 7, 13))
    assert r["characterCount"] > 0
    assert len(r["swapTerms"]) == 5
    assert math.isfinite(r["relResidual"])


def test_usage_error():
    try:
        fourl.characters(0)
    except ValueError:
        return
    raise AssertionError("expected ValueError")


def test_criteria_listed():
    assert "orthogonality" in fourl.criteria()
    assert fourl.run_criterion("orthogonality")["pass"]
