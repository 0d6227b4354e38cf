"""Exact and numeric tools for Waring decompositions and eigenschemes of forms."""

from __future__ import annotations

__version__ = "0.1.0"

from .apolarity import annihilator_binary, decompose_binary, waring_rank_binary
from .eigen import eigen_ideal, eigen_poly_binary, eigen_support_binary, singular_value
from .exactnum import GaussRat, gr
from .forms.binary import BForm
from .forms.nform import LinForm, NForm, ProjPoint
from .forms.parse import parse_binary, parse_form
from .locus import intersect_waring_eigen_binary, monomial_loci, waring_locus_binary

__all__ = [
    "BForm", "GaussRat", "LinForm", "NForm", "ProjPoint", "annihilator_binary",
    "decompose_binary", "eigen_ideal", "eigen_poly_binary", "eigen_support_binary", "gr",
    "intersect_waring_eigen_binary", "monomial_loci", "parse_binary", "parse_form",
    "singular_value", "waring_locus_binary", "waring_rank_binary",
]
