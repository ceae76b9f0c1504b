from .queries import (
    certify_trivial_mod,
    det_character_equal,
    frobenius_test,
    identify_quadratic,
)
from .report import failure_report, isogeny_report, render_tree
from .residual import residual_image
from .structure import max_trivial_level, mod_next_level, small_or_large, trivial_semisimplification
from .types import CharacterVector, ResidualVerdict, SmallOrLarge, TrivialLevel, WidthClass

__all__ = [
    "certify_trivial_mod",
    "det_character_equal",
    "frobenius_test",
    "identify_quadratic",
    "failure_report",
    "isogeny_report",
    "render_tree",
    "residual_image",
    "max_trivial_level",
    "mod_next_level",
    "small_or_large",
    "trivial_semisimplification",
    "CharacterVector",
    "ResidualVerdict",
    "SmallOrLarge",
    "TrivialLevel",
    "WidthClass",
]
