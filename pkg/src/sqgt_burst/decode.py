"""Pick the structured decoder that matches a scheme's components."""

from __future__ import annotations

from .bounded import decode_bounded
import numpy as np

from .core import Burst, Scheme
from .errors import InconsistentOutcomeError
from .oracle import build_lookup
from .refine import decode_fixed


def decode(scheme: Scheme, outcome) -> Burst | None:
    """Decode with the scheme's structured decoder, else the lookup table.

    An all-zero outcome that no burst produces means there are no positives
    and gives ``None``.
    """
    levels = np.asarray(outcome, dtype=np.int64).ravel()
    try:
        return _dispatch(scheme, levels)
    except InconsistentOutcomeError:
        if levels.size == scheme.rows and not levels.any():
            return None
        raise


def _dispatch(scheme, outcome):
    if scheme.space.kind == "fixed" and scheme.has("sketch") and scheme.has("refine"):
        return decode_fixed(scheme, outcome)
    if scheme.space.kind == "bounded" and scheme.has("integer"):
        return decode_bounded(scheme, outcome)
    if "lookup" not in scheme._cache:
        scheme._cache["lookup"] = build_lookup(scheme)
    return scheme._cache["lookup"].decode(outcome)
