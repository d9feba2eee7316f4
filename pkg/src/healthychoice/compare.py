"""Side-by-side comparison tables over products.

Rows cover the union of nutrient keys in first-appearance order across the
product columns. A nutrient missing from a label is absent (None), never
zero, and absent values are excluded from extreme marking; an explicit 0
participates. percent_dv is display-only and never drives extremes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from decimal import Decimal
from fractions import Fraction

from .catalog import Basis, NutrientEntry, Product, normalize_amount
from .errors import DuplicateProductId, EmptyProductList, MixedServingUnits
from .rounding import fmt_number, round_half_up

# scale-to-mcg factors; rows compare mass nutrients across label units
_MASS_IN_MCG = {"g": 1_000_000, "mg": 1_000, "mcg": 1}


@dataclass(frozen=True)
class ComparisonRow:
    key: str
    unit: str
    values: tuple[Decimal | None, ...]
    min_marks: tuple[bool, ...]
    max_marks: tuple[bool, ...]


@dataclass(frozen=True)
class ComparisonTable:
    product_ids: tuple[str, ...]
    basis: Basis
    rows: tuple[ComparisonRow, ...]


def _cell_value(
    entry: NutrientEntry | None,
    row_unit: str,
    product: Product,
    basis: Basis,
) -> Decimal | None:
    if entry is None:
        return None
    if entry.unit == row_unit:
        return normalize_amount(entry, product.serving, basis)
    if entry.unit in _MASS_IN_MCG and row_unit in _MASS_IN_MCG:
        # label uses a different mass unit than the row; convert before comparing
        amount = Fraction(entry.amount) * _MASS_IN_MCG[entry.unit] / _MASS_IN_MCG[row_unit]
        if basis is Basis.PER_100:
            amount = amount * 100 / Fraction(product.serving.amount)
        return round_half_up(amount, 2)
    return None  # kcal vs mass under one key: not comparable


def build_comparison(products: list[Product], basis: Basis) -> ComparisonTable:
    """Aligned table over the given column order, extremes already marked."""
    if not products:
        raise EmptyProductList("comparison needs at least one product")
    ids = [p.id for p in products]
    if len(set(ids)) != len(ids):
        raise DuplicateProductId("comparison columns must be distinct products")
    if basis is Basis.PER_100:
        units = {p.serving.unit for p in products}
        if len(units) > 1:
            raise MixedServingUnits(
                f"per-100 comparison over mixed serving units {sorted(units)}"
            )

    # union of nutrient keys, first appearance across products in column order
    row_keys: list[str] = []
    row_units: dict[str, str] = {}
    for product in products:
        for entry in product.nutrition.entries:
            if entry.key not in row_units:
                row_keys.append(entry.key)
                row_units[entry.key] = entry.unit

    rows = []
    for key in row_keys:
        unit = row_units[key]
        values = tuple(
            _cell_value(p.nutrition.get(key), unit, p, basis) for p in products
        )
        blank = (False,) * len(products)
        rows.append(ComparisonRow(key=key, unit=unit, values=values, min_marks=blank, max_marks=blank))

    return mark_extremes(ComparisonTable(product_ids=tuple(ids), basis=basis, rows=tuple(rows)))


def mark_extremes(table: ComparisonTable) -> ComparisonTable:
    """Mark all minima and maxima per row with >=2 present values. Idempotent."""
    marked = []
    for row in table.rows:
        present = [v for v in row.values if v is not None]
        if len(present) < 2:
            blank = (False,) * len(row.values)
            marked.append(replace(row, min_marks=blank, max_marks=blank))
            continue
        low, high = min(present), max(present)
        marked.append(
            replace(
                row,
                min_marks=tuple(v is not None and v == low for v in row.values),
                max_marks=tuple(v is not None and v == high for v in row.values),
            )
        )
    return replace(table, rows=tuple(marked))


def _mark_token(is_min: bool, is_max: bool) -> str:
    if is_min and is_max:
        return "minmax"
    if is_min:
        return "min"
    if is_max:
        return "max"
    return ""


def table_to_csv(table: ComparisonTable) -> str:
    """CSV export: key, unit, then one column per product id.

    A cell is the value followed by its mark token ("min"/"max"/"minmax"),
    space-separated; absent values are empty cells.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["key", "unit", *table.product_ids])
    for row in table.rows:
        cells = []
        for value, is_min, is_max in zip(row.values, row.min_marks, row.max_marks):
            if value is None:
                cells.append("")
                continue
            token = _mark_token(is_min, is_max)
            cells.append(f"{fmt_number(value)} {token}".rstrip())
        writer.writerow([row.key, row.unit, *cells])
    return buffer.getvalue()
