"""Weighted backward shifts, strong hypercyclicity witnesses, orbit extraction
and disk automorphism dynamics, backed by the lindyn C++ core.

Reports are returned as plain dicts with the same keys as the CLI ``result``
objects; complex numbers inside reports are "re+imi" strings.
"""

from ._core import (
    LindynError,
    __version__,
    classify,
    disk,
    epsilon,
    extract_matrix,
    extract_shift,
    fixed_points,
    format_complex,
    in_image_of_unit_ball,
    iterate,
    witness,
)

__all__ = [
    "LindynError",
    "__version__",
    "classify",
    "disk",
    "epsilon",
    "extract_matrix",
    "extract_shift",
    "fixed_points",
    "format_complex",
    "in_image_of_unit_ball",
    "iterate",
    "witness",
]
