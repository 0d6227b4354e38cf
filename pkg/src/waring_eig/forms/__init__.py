"""Homogeneous forms: binary (dense), multivariate (sparse), parsing, O(n+1) action."""

from .binary import (
    BForm,
    RESIDUAL_BOUND,
    ROOT_MERGE_TOL,
    discriminant,
    divide_exact,
    divides,
    gcd_binary,
    is_isotropic,
    is_squarefree,
    perp,
    resultant,
    roots_numeric,
    squarefree_part,
    vanishing_form,
)
from .nform import LinForm, NForm, ProjPoint, apolar_apply, bw_inner
from .ortho import OrthoMatrix, cayley, ortho_act, ortho_act_point, random_ortho
from .parse import ParseError, format_form, parse_binary, parse_constant, parse_form, parse_linear

__all__ = [
    "BForm", "NForm", "LinForm", "ProjPoint", "OrthoMatrix", "ParseError",
    "RESIDUAL_BOUND", "ROOT_MERGE_TOL",
    "apolar_apply", "bw_inner", "cayley", "discriminant", "divide_exact", "divides",
    "format_form", "gcd_binary", "is_isotropic", "is_squarefree", "ortho_act",
    "ortho_act_point", "parse_binary", "parse_constant", "parse_form", "parse_linear",
    "perp", "random_ortho", "resultant", "roots_numeric", "squarefree_part", "vanishing_form",
]
