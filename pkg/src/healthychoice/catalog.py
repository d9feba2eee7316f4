"""Product catalog: load, validate, and query real-world product options.

The catalog document is a single UTF-8 JSON file in strict mode: unknown keys
are rejected so that load -> serialize -> load is a fixed point. Nutrient
amounts are kept as Decimal end to end; nothing is ever coerced through float.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .errors import (
    DuplicateProductId,
    EmptyCatalog,
    InvalidNutrient,
    ParseError,
    UnknownProduct,
)
from .rounding import fmt_number, round_half_up

NUTRIENT_UNITS = ("g", "mg", "mcg", "kcal")
SERVING_UNITS = ("ml", "g")

_WHITESPACE = re.compile(r"\s+")


class Basis(str, Enum):
    """Normalization denominator for nutrient values.

    PER_100 is per 100 ml for ml servings and per 100 g for g servings.
    """

    PER_SERVING = "per_serving"
    PER_100 = "per_100"


@dataclass(frozen=True)
class ServingSpec:
    amount: Decimal
    unit: str
    description: str | None = None


@dataclass(frozen=True)
class NutrientEntry:
    key: str
    amount: Decimal
    unit: str
    percent_dv: Decimal | None = None


@dataclass(frozen=True)
class NutritionFacts:
    entries: tuple[NutrientEntry, ...]

    def get(self, key: str) -> NutrientEntry | None:
        for entry in self.entries:
            if entry.key == key:
                return entry
        return None

    def keys(self) -> tuple[str, ...]:
        return tuple(entry.key for entry in self.entries)


@dataclass(frozen=True)
class Product:
    id: str
    name: str
    category: str
    serving: ServingSpec
    nutrition: NutritionFacts
    ingredients: tuple[str, ...]
    claims: tuple[str, ...]
    image_refs: tuple[str, ...]


class ProductCatalog:
    """Immutable, id-keyed collection of products in ingestion order."""

    def __init__(self, products: list[Product], source_digest: str):
        self._by_id = {p.id: p for p in products}
        self._ordered = tuple(products)
        self.source_digest = source_digest

    def __len__(self) -> int:
        return len(self._ordered)

    def __iter__(self) -> Iterator[Product]:
        return iter(self._ordered)

    def __contains__(self, product_id: str) -> bool:
        return product_id in self._by_id

    @property
    def products(self) -> tuple[Product, ...]:
        return self._ordered

    def get(self, product_id: str) -> Product:
        try:
            return self._by_id[product_id]
        except KeyError:
            raise UnknownProduct(f"no product with id {product_id!r}") from None


def canonical_nutrient_key(raw: str) -> str:
    """Lower-case, trim, and collapse internal whitespace. Synonyms stay apart."""
    return _WHITESPACE.sub(" ", raw.strip().lower())


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where}: missing keys {sorted(missing)}")


def _as_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected string, got {type(value).__name__}")
    return value


def _as_str_list(value, where: str) -> tuple[str, ...]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ParseError(f"{where}: expected a list of strings")
    return tuple(value)


def _as_decimal(value, where: str) -> Decimal:
    # json.loads is configured with parse_float=Decimal, so numbers arrive as
    # int or Decimal; bool is an int subclass and must be rejected explicitly.
    if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
        raise ParseError(f"{where}: expected a number")
    return value if isinstance(value, Decimal) else Decimal(value)


def _parse_serving(obj, where: str) -> ServingSpec:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: serving must be an object")
    _check_keys(obj, {"amount", "unit", "description"}, {"amount", "unit"}, where)
    amount = _as_decimal(obj["amount"], f"{where}.amount")
    if amount <= 0:
        raise ParseError(f"{where}: serving amount must be positive")
    unit = _as_str(obj["unit"], f"{where}.unit")
    if unit not in SERVING_UNITS:
        raise ParseError(f"{where}: serving unit must be one of {SERVING_UNITS}")
    description = None
    if "description" in obj:
        description = _as_str(obj["description"], f"{where}.description")
    return ServingSpec(amount=amount, unit=unit, description=description)


def _parse_nutrition(value, where: str) -> NutritionFacts:
    if not isinstance(value, list):
        raise ParseError(f"{where}: nutrition must be a list")
    entries: list[NutrientEntry] = []
    seen: set[str] = set()
    for i, obj in enumerate(value):
        spot = f"{where}.nutrition[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{spot}: expected an object")
        _check_keys(obj, {"key", "amount", "unit", "percent_dv"}, {"key", "amount", "unit"}, spot)
        key = canonical_nutrient_key(_as_str(obj["key"], f"{spot}.key"))
        if not key:
            raise InvalidNutrient(f"{spot}: blank nutrient key")
        if key in seen:
            raise InvalidNutrient(f"{spot}: duplicate nutrient key {key!r}")
        seen.add(key)
        amount = _as_decimal(obj["amount"], f"{spot}.amount")
        if amount < 0:
            raise InvalidNutrient(f"{spot}: negative amount for {key!r}")
        unit = _as_str(obj["unit"], f"{spot}.unit")
        if unit not in NUTRIENT_UNITS:
            raise InvalidNutrient(f"{spot}: unknown unit {unit!r} for {key!r}")
        percent_dv = None
        if "percent_dv" in obj:
            percent_dv = _as_decimal(obj["percent_dv"], f"{spot}.percent_dv")
            if percent_dv < 0:
                raise InvalidNutrient(f"{spot}: negative percent_dv for {key!r}")
        entries.append(NutrientEntry(key=key, amount=amount, unit=unit, percent_dv=percent_dv))
    return NutritionFacts(entries=tuple(entries))


_PRODUCT_KEYS = {"id", "name", "category", "serving", "nutrition", "ingredients", "claims", "image_refs"}


def _parse_product(obj, index: int) -> Product:
    where = f"products[{index}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    _check_keys(obj, _PRODUCT_KEYS, _PRODUCT_KEYS, where)
    product_id = _as_str(obj["id"], f"{where}.id")
    if not product_id:
        raise ParseError(f"{where}: product id must be non-empty")
    return Product(
        id=product_id,
        name=_as_str(obj["name"], f"{where}.name"),
        category=_as_str(obj["category"], f"{where}.category"),
        serving=_parse_serving(obj["serving"], f"{where}.serving"),
        nutrition=_parse_nutrition(obj["nutrition"], where),
        ingredients=_as_str_list(obj["ingredients"], f"{where}.ingredients"),
        claims=_as_str_list(obj["claims"], f"{where}.claims"),
        image_refs=_as_str_list(obj["image_refs"], f"{where}.image_refs"),
    )


def load_catalog(source: bytes) -> ProductCatalog:
    """Parse and validate a catalog document. Deterministic for identical bytes."""
    try:
        doc = json.loads(source.decode("utf-8"), parse_float=Decimal)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"catalog document is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("catalog document must be a JSON object")
    _check_keys(doc, {"products"}, {"products"}, "document")
    raw_products = doc["products"]
    if not isinstance(raw_products, list):
        raise ParseError("products must be a list")
    products = [_parse_product(obj, i) for i, obj in enumerate(raw_products)]
    if not products:
        raise EmptyCatalog("catalog contains zero products")
    seen: set[str] = set()
    for product in products:
        if product.id in seen:
            raise DuplicateProductId(f"product id {product.id!r} appears more than once")
        seen.add(product.id)
    digest = hashlib.sha256(source).hexdigest()
    return ProductCatalog(products, source_digest=digest)


def get_product(catalog: ProductCatalog, product_id: str) -> Product:
    return catalog.get(product_id)


def find_products(
    catalog: ProductCatalog,
    category: str | None = None,
    keyword: str | None = None,
) -> list[Product]:
    """Filter by category (case-insensitive equality) and keyword (substring of
    name or any claim). With both absent, returns all products in ingestion order.
    """
    results = []
    for product in catalog:
        if category is not None and product.category.lower() != category.lower():
            continue
        if keyword is not None:
            needle = keyword.lower()
            haystacks = [product.name.lower()] + [c.lower() for c in product.claims]
            if not any(needle in h for h in haystacks):
                continue
        results.append(product)
    return results


def normalize_amount(entry: NutrientEntry, serving: ServingSpec, basis: Basis) -> Decimal:
    """Amount in entry.unit on the requested basis.

    PER_SERVING is the identity; PER_100 is amount * 100 / serving.amount,
    rounded half-up to 2 decimal places.
    """
    if basis is Basis.PER_SERVING:
        return entry.amount
    scaled = Fraction(entry.amount) * 100 / Fraction(serving.amount)
    return round_half_up(scaled, 2)


# --- serialization -----------------------------------------------------------

def _render(value) -> str:
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, Decimal):
        return fmt_number(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = (f"{json.dumps(k)}: {_render(v)}" for k, v in value.items())
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _serving_doc(serving: ServingSpec) -> dict:
    doc: dict = {"amount": serving.amount, "unit": serving.unit}
    if serving.description is not None:
        doc["description"] = serving.description
    return doc


def _nutrient_doc(entry: NutrientEntry) -> dict:
    doc: dict = {"key": entry.key, "amount": entry.amount, "unit": entry.unit}
    if entry.percent_dv is not None:
        doc["percent_dv"] = entry.percent_dv
    return doc


def product_doc(product: Product) -> dict:
    """Document-shaped dict for one product (Decimal preserved)."""
    return {
        "id": product.id,
        "name": product.name,
        "category": product.category,
        "serving": _serving_doc(product.serving),
        "nutrition": [_nutrient_doc(e) for e in product.nutrition.entries],
        "ingredients": list(product.ingredients),
        "claims": list(product.claims),
        "image_refs": list(product.image_refs),
    }


def dumps_catalog(catalog: ProductCatalog) -> bytes:
    """Serialize back to the catalog document format.

    Decimal amounts are written verbatim (no float round trip) so reloading
    the output yields field-by-field equal products.
    """
    doc = {"products": [product_doc(p) for p in catalog]}
    return _render(doc).encode("utf-8")
