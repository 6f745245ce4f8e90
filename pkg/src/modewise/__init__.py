"""Groundness mode inference for Prolog.

A least fixpoint over positive Boolean functions gives each predicate's
success pattern; a backward greatest fixpoint then gives the weakest call
mode under which no builtin can raise an instantiation error.
"""

import logging

from .analysis import AnalysisResult, analyze, analyze_file, analyze_source

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = ["AnalysisResult", "analyze", "analyze_file", "analyze_source", "__version__"]
