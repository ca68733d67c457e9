"""Exact volumes of perspective and naive on/off relaxations.

Functions accept specs either as dicts or as JSON strings (a string may also
be a path to a JSON file). Results come back as plain dicts and lists.

>>> import pgap
>>> pgap.analyze({"kind": "power", "c": [1.0], "q": 2},
...              {"kind": "box", "v0": [1.0], "u": 1.0})["ratio"]
0.7777777777777778
"""

import json as _json

from . import _pgap as _core

__all__ = [
    "integrate",
    "z_integral",
    "analyze",
    "delta",
    "ratio_sweep",
    "envelope",
    "check_sufficient_condition",
    "verify",
]

__version__ = "1.0.0"


def _spec(obj):
    if isinstance(obj, str):
        return obj
    return _json.dumps(obj)


def integrate(function, domain, samples=1_000_000, seed=42):
    """Integral of the function over the domain: {value, method, error}."""
    return _json.loads(_core.integrate_json(_spec(function), _spec(domain), samples, seed))


def z_integral(function, domain, samples=1_000_000, seed=42):
    """Integral of z^d * f(z x) over the domain and z in [0, 1]."""
    return _json.loads(_core.z_integral_json(_spec(function), _spec(domain), samples, seed))


def analyze(function, domain, mu="envelope", samples=1_000_000, seed=42):
    """Both relaxation volumes, their gap, and the cut-off ratio."""
    return _json.loads(
        _core.analyze_json(_spec(function), _spec(domain), mu, samples, seed)
    )


def delta(function, domain, samples=1_000_000, seed=42):
    """Cut-off amount vol(naive) - vol(perspective); independent of mu."""
    return _core.delta(_spec(function), _spec(domain), samples, seed)


def ratio_sweep(function, v0, u, mu="envelope", samples=1_000_000, seed=42):
    """Rows of (u, volP, volP0, delta, ratio, scaledRatio, theoretical)."""
    return _json.loads(
        _core.ratio_sweep_json(_spec(function), list(v0), list(u), mu, samples, seed)
    )


def envelope(function, domain):
    """Concave piecewise-linear upper bound over a box, cell by cell."""
    return _json.loads(_core.envelope_json(_spec(function), _spec(domain)))


def check_sufficient_condition(function, v0, u, mu="constant", threshold=0.05):
    """Trend of the shifted-integral statistic r(u) over a grid of box sizes."""
    return _json.loads(
        _core.check_sufficient_condition_json(_spec(function), list(v0), list(u), mu, threshold)
    )


def verify(seed=42):
    """Run the internal identity suite; returns the checks and overall pass."""
    return _json.loads(_core.verify_json(seed))
