"""Shortest-path transaction mining for social graphs."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    BoundsError,
    Error,
    Graph,
    IoError,
    ParseError,
    StageError,
    TransactionDb,
    UnsupportedError,
    ValidationError,
)

__version__ = "0.1.0"
