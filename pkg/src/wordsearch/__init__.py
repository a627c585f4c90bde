"""Word-search densities in toroidal letter grids."""

from .errors import (
    BudgetExceeded,
    CertificateInvalid,
    ParseError,
    TrivialWord,
    WordSearchError,
)
from .grid import Grid, concentration, count, search_lines, transform
from .words import c1, classify_extremal, construct_pal, construct_rep, profile

__all__ = [
    "BudgetExceeded",
    "CertificateInvalid",
    "Grid",
    "ParseError",
    "TrivialWord",
    "WordSearchError",
    "c1",
    "classify_extremal",
    "concentration",
    "construct_pal",
    "construct_rep",
    "count",
    "profile",
    "search_lines",
    "transform",
]

__version__ = "0.1.0"
