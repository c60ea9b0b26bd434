"""Numerical checks around twisted fourth moments of Dirichlet L-functions."""

import json

from . import _fourl
from ._fourl import (
    REPORT_SCHEMA,
    MathError,
    UsageError,
    character_value,
    cyclotomic_min,
    fe_residual,
    gauss_sum,
    hurwitz_zeta,
    lvalue,
    solve_lambda,
    verify_identity,
    verify_second_identity,
)

__all__ = [
    "REPORT_SCHEMA",
    "MathError",
    "UsageError",
    "character_value",
    "characters",
    "criteria",
    "cyclotomic_min",
    "fe_residual",
    "gauss_sum",
    "hurwitz_zeta",
    "lvalue",
    "moment",
    "run_criterion",
    "solve_lambda",
    "verify_identity",
    "verify_second_identity",
    "voronoi",
]


def characters(m, even_primitive=False):
    """Characters mod m as dicts with id, conductor, order, parity and primitivity."""
    return json.loads(_fourl.chars_json(m, even_primitive))


def moment(q, D, t=0.0, ell=(1, 1), method="hurwitz", afe_tol=1e-9):
    """Brute-force moment against the six-term prediction, as a report dict."""
    return json.loads(_fourl.moment_json(q, list(D), t, list(ell), method, afe_tol))


def voronoi(a, c, chi1, chi2, A=10.0, B=20.0):
    return json.loads(_fourl.voronoi_json(a, c, chi1, chi2, A, B))


def criteria():
    return list(_fourl.criteria())


def run_criterion(name, seed=1):
    return json.loads(_fourl.criterion_json(name, seed))
