"""Nonadaptive semiquantitative group testing designs for locating a burst
of consecutive positives.
"""

from .bounded import (
    build_bounded_scheme,
    build_C1,
    build_C2,
    build_integer_scheme,
    build_N,
    decode_bounded,
    decode_C2,
    decode_N,
)
from .core import (
    Burst,
    BurstSpace,
    Component,
    Scheme,
    Thresholds,
    enumerate_bursts,
    outcome,
    outcome_matrix,
    quantize,
)
from .decode import decode
from .errors import (
    CollisionError,
    InconsistentOutcomeError,
    ParameterError,
    ParseError,
    UnverifiedConstructionError,
    ValidationError,
)
from .gray import gray_index, gray_matrix, paired_gray_matrix, runs_of_ones
from .io import SchemeFiles, load_matrix, load_scheme, save_matrix, save_scheme
from .oracle import (
    AllPairs,
    CollisionWitness,
    FarApart,
    Near,
    build_lookup,
    check_distinguishable,
    counting_bound,
    efficiency_report,
)
from .refine import build_B, build_fixed_scheme, build_R, check_B, decode_fixed, decode_R
from .sketch import (
    build_K,
    build_saturated_identifier,
    decode_K,
    decode_saturated_identifier,
    m_pattern,
    rec_general,
    rec_saturated,
)

__version__ = "0.1.0"
