"""Sidon and symmetric Sidon sets from generalized jacobians."""

import json

from . import _core
from ._core import CapExceeded

__all__ = ["CapExceeded", "construct", "verify_sidon", "classify", "desymmetrize", "census", "run_cli"]


def construct(family, q, d=3, f=(), curve="", seed=None):
    """Set file of a family as a dict."""
    return json.loads(_core.construct(family, q, d, list(f), curve, seed))


def verify_sidon(moduli, elements, witness_cap=16, babai_sos=False, energy=False):
    return json.loads(_core.verify_sidon(list(moduli), [list(x) for x in elements], witness_cap, babai_sos, energy))


def classify(moduli, elements, witness_cap=16, energy=False):
    return json.loads(_core.classify(list(moduli), [list(x) for x in elements], witness_cap, energy))


def desymmetrize(moduli, elements, center):
    """(kept, dropped) for a symmetric Sidon set with the given center."""
    return _core.desymmetrize(list(moduli), [list(x) for x in elements], list(center))


def census(moduli, babai_sos=False):
    """(max size, witness, method) of the largest Sidon set."""
    return _core.census(list(moduli), babai_sos)


def run_cli(*args):
    """(exit code, stdout, stderr) of the command line."""
    return _core.run_cli([str(a) for a in args])
