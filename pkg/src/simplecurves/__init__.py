"""Invariants, resolution and classification of parametrised curve germs.

The main entry points are :func:`parse_germ`, :func:`signature`,
:func:`recognize` and :func:`resolution_tree`.
"""
from .classify import ClassificationResult, nonsimple_rules, recognize, signature_of
from .deform import DeformationFamily, specialize, verify_congruence, verify_on_surface
from .germ import (
    Branch,
    MultiGerm,
    Signature,
    StabilizationError,
    decompose,
    delta,
    embedding_dimension,
    planar_2jet,
    signature,
    stable_reduce,
    value_semigroup,
    wedge,
)
from .notation import GermSyntaxError, format_germ, parse_germ
from .plane import ade_recognize, bpv_simple, resolution_tree, wall_modality

__all__ = [
    "Branch",
    "ClassificationResult",
    "DeformationFamily",
    "GermSyntaxError",
    "MultiGerm",
    "Signature",
    "StabilizationError",
    "ade_recognize",
    "bpv_simple",
    "decompose",
    "delta",
    "embedding_dimension",
    "format_germ",
    "nonsimple_rules",
    "parse_germ",
    "planar_2jet",
    "recognize",
    "resolution_tree",
    "signature",
    "signature_of",
    "specialize",
    "stable_reduce",
    "value_semigroup",
    "verify_congruence",
    "verify_on_surface",
    "wall_modality",
    "wedge",
]
