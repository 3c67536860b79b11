"""Relative maximal subgroups of finite permutation groups."""
from .errors import CapExceeded, HypothesisFailure, RelmaxError, TheoremViolation, UsageError

__version__ = "0.1.0"

__all__ = ["CapExceeded", "HypothesisFailure", "RelmaxError", "TheoremViolation",
           "UsageError", "__version__"]
