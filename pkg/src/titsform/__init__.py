"""Tits forms of bound quiver algebras: classification, roots, realizations."""

from .unitform import UnitForm, bilinear, evaluate, pairings, reflect, restrict_form
from .presentation import (Presentation, Quiver, parse_document, parse_presentation,
                           quotient_by_vertex, tits_form)

__all__ = [
    "UnitForm", "bilinear", "evaluate", "pairings", "reflect", "restrict_form",
    "Presentation", "Quiver", "parse_document", "parse_presentation",
    "quotient_by_vertex", "tits_form",
]
