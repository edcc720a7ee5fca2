"""SU(2) nonlinear Fourier transform.

Sequences are passed as ``(support_lo, [c_lo, ..., c_hi])``; an empty
coefficient list is the zero sequence.
"""

import json

from ._core import (
    AliasingError,
    ConsistencyError,
    ConvergenceError,
    InputError,
    NlftError,
    OuterFactorError,
    SizeError,
    SzegoMarginError,
    VanishingSymbolError,
    forward,
    inverse,
    layer_strip,
    outer_complement,
    symbol_ratio,
    weighted_norm,
)
from ._core import verify as _verify


def verify(f, grid_size=0, seed=0):
    """Run the verification suite on F; returns (passed, list of check records)."""
    passed, text = _verify(f, grid_size, seed)
    return passed, json.loads(text)


__all__ = [
    "AliasingError",
    "ConsistencyError",
    "ConvergenceError",
    "InputError",
    "NlftError",
    "OuterFactorError",
    "SizeError",
    "SzegoMarginError",
    "VanishingSymbolError",
    "forward",
    "inverse",
    "layer_strip",
    "outer_complement",
    "symbol_ratio",
    "verify",
    "weighted_norm",
]
