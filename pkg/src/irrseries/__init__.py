"""Certified finite checks of irrationality criteria for infinite series."""

__version__ = "0.1.0"

from .exact_arith import DomainError, InconclusiveError, Precision, RatBall
from .seqdsl import SequenceDef, parse_sequence
from .series import SeriesInstance, value_enclosure
from .specfile import SpecError, build_spec, load_spec
from .verdict import Report, Verdict

__all__ = [
    "DomainError", "InconclusiveError", "Precision", "RatBall", "Report", "SequenceDef",
    "SeriesInstance", "SpecError", "Verdict", "build_spec", "load_spec", "parse_sequence",
    "value_enclosure", "__version__",
]
