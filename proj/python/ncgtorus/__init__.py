"""Spectral triples on noncommutative tori: thin wrappers over the C++ core."""

import json

from . import _core
from ._core import IoError, PreconditionError, dirac_spectrum, kr_signs, monomial_product, spectrum_csv, twisted_spectra

__all__ = [
    "IoError",
    "PreconditionError",
    "base_triple_recipe",
    "check_principality",
    "dirac_spectrum",
    "kr_signs",
    "kr_sweep",
    "monomial_product",
    "run_scenario",
    "spectrum_csv",
    "twisted_spectra",
]


def check_principality(theta, n, radius=1):
    return json.loads(_core.check_principality_json(theta, n, radius))


def base_triple_recipe(j, n):
    return json.loads(_core.base_triple_recipe_json(j, n))


def kr_sweep(max_dim, cutoff=2, seed=3, tolerance=1e-12):
    return json.loads(_core.kr_sweep_json(max_dim, cutoff, seed, tolerance))


def run_scenario(config, only=()):
    """Runs a scenario given as a dict in the config-file schema and returns the report."""
    return json.loads(_core.run_scenario_json(json.dumps(config), list(only)))
