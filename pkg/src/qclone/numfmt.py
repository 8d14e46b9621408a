"""Deterministic number formatting for reports, CSV and SVG."""
from __future__ import annotations

import numpy as np

# magnitudes below this print as 0; they are round-off on O(1) quantities
CHOP = 1e-12


def fmt_num(x: float, digits: int = 12) -> str:
    """``digits`` significant digits, positional inside [1e-6, 1e6), no ``-0``."""
    x = float(x)
    if not np.isfinite(x):
        return repr(x)
    if abs(x) < CHOP:
        return "0"
    if 1e-6 <= abs(x) < 1e6:
        s = np.format_float_positional(x, precision=digits, unique=False, fractional=False, trim="-")
    else:
        s = np.format_float_scientific(x, precision=digits - 1, unique=False, trim="-")
    return "0" if s in ("-0", "0.", "-0.") else s


def fmt_complex(z: complex, digits: int = 12) -> str:
    """``re+imi`` with either part omitted when it prints as zero."""
    re, im = fmt_num(z.real, digits), fmt_num(complex(z).imag, digits)
    if im == "0":
        return re
    if re == "0":
        return f"{im}i"
    return f"{re}{im if im.startswith('-') else '+' + im}i"


def fmt_svg(x: float) -> str:
    """Six significant digits for SVG coordinates and labels."""
    return fmt_num(x, 6)
