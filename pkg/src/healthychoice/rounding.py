"""Half-up rounding on exact rational arithmetic.

Internal arithmetic stays exact (Fraction); rounding happens only at
presentation and normalization boundaries. Values here are non-negative,
so "half up" and "half away from zero" coincide.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction


def round_half_up(value: Fraction | Decimal | int, places: int) -> Decimal:
    """Round to `places` decimal digits, ties going up."""
    fr = Fraction(value)
    scale = 10 ** places
    quantized = math.floor(fr * scale + Fraction(1, 2))
    return Decimal(quantized).scaleb(-places)


def fmt_number(value: Decimal) -> str:
    """Plain decimal text, never scientific notation."""
    return format(value, "f")
