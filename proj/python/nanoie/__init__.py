"""Material-sample extraction and evaluation toolkit."""

import json

from ._core import (
    CompositionError,
    FormatError,
    InvalidArgument,
    Lexicon,
    LexiconError,
    NanoieError,
    NotStandardized,
    Sample,
    __version__,
    assignment,
    condense,
    parse_gold_file,
    parse_prediction_output,
    standardize_composition,
    triage_report,
    vote,
)
from . import _core


def evaluate(preds, golds):
    """Counts and scores for one document as a dict."""
    return json.loads(_core.evaluate(preds, golds))


def evaluate_corpus(documents):
    """Micro-averaged report over (preds, golds) pairs."""
    return json.loads(_core.evaluate_corpus(list(documents)))


__all__ = [
    "CompositionError",
    "FormatError",
    "InvalidArgument",
    "Lexicon",
    "LexiconError",
    "NanoieError",
    "NotStandardized",
    "Sample",
    "__version__",
    "assignment",
    "condense",
    "evaluate",
    "evaluate_corpus",
    "parse_gold_file",
    "parse_prediction_output",
    "standardize_composition",
    "triage_report",
    "vote",
]
