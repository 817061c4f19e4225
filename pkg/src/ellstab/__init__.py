"""Elliptic curve enumeration, trace statistics and diophantine-stability checks."""

from .curves import CurveModel, count_curves, discriminant, enumerate_curves, height, is_minimal
from .errors import (
    BadReduction,
    BudgetExceeded,
    ConflictingEntry,
    ConflictingRank,
    CorruptFile,
    EllstabError,
    InvalidCurve,
    InvalidDiscriminant,
    OutOfHasseRange,
    ParseError,
    SingularReduction,
)
from .galois_image import FieldSpec, ImageVerdict, classify_image, t_kl_member
from .stability import StabilityReport, check_ds, s_kl_census
from .traces import TraceRecord, batch_trace_census, frobenius_trace, trace_table

__all__ = [
    "CurveModel",
    "FieldSpec",
    "ImageVerdict",
    "StabilityReport",
    "TraceRecord",
    "batch_trace_census",
    "check_ds",
    "classify_image",
    "count_curves",
    "discriminant",
    "enumerate_curves",
    "frobenius_trace",
    "height",
    "is_minimal",
    "s_kl_census",
    "t_kl_member",
    "trace_table",
    "BadReduction",
    "BudgetExceeded",
    "ConflictingEntry",
    "ConflictingRank",
    "CorruptFile",
    "EllstabError",
    "InvalidCurve",
    "InvalidDiscriminant",
    "OutOfHasseRange",
    "ParseError",
    "SingularReduction",
]

__version__ = "0.1.0"
