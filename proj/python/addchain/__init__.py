"""Shortest addition chains: exact search, counting and chain analysis."""

import json as _json

from . import _core
from ._core import AddchainError, ell_oracle, normalize_chain

__all__ = [
    "AddchainError",
    "bounds",
    "cli",
    "count_f",
    "count_h",
    "ell",
    "ell_oracle",
    "envelope",
    "family_chain",
    "family_size",
    "histogram",
    "normalize_chain",
    "scholz",
]


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


ell = _decoded(_core.ell)
bounds = _decoded(_core.bounds)
count_h = _decoded(_core.count_h)
count_f = _decoded(_core.count_f)
histogram = _decoded(_core.histogram)
scholz = _decoded(_core.scholz)
envelope = _decoded(_core.envelope)
family_size = _decoded(_core.family_size)
family_chain = _decoded(_core.family_chain)


def cli(*args):
    """Runs the command-line front end in-process; returns (exit code, stdout, stderr)."""
    return _core.cli_run([str(a) for a in args])
