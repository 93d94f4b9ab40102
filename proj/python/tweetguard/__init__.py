"""Offensive and hateful tweet classification: Python bindings to the C++ core."""

from ._tweetguard import (
    Error,
    Pipeline,
    VersionMismatch,
    clean,
    evaluate,
    porter_stem,
    preprocess,
    run_cli,
    stopwords,
    tokenize,
)

LABELS = ("hateful", "offensive", "clean")

__all__ = [
    "Error",
    "LABELS",
    "Pipeline",
    "VersionMismatch",
    "clean",
    "evaluate",
    "porter_stem",
    "preprocess",
    "run_cli",
    "stopwords",
    "tokenize",
]
