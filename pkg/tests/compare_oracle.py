"""Brute-force comparison-table oracle, independent of the production path.

Builds expected rows with nested loops and rational arithmetic so the table
builder can be checked against it on randomly generated instances.
"""

import random
from decimal import Decimal
from fractions import Fraction

from healthychoice.catalog import (
    Basis,
    NutrientEntry,
    NutritionFacts,
    Product,
    ServingSpec,
)
from healthychoice.compare import build_comparison
from healthychoice.rounding import round_half_up

KEYS = ["calories", "sugar", "sodium", "caffeine", "protein", "potassium"]
UNIT_FOR = {
    "calories": "kcal",
    "sugar": "g",
    "sodium": "mg",
    "caffeine": "mg",
    "protein": "g",
    "potassium": "mg",
}


def make_product(pid, serving_amount, entries, serving_unit="ml"):
    return Product(
        id=pid,
        name=pid.title(),
        category="drink",
        serving=ServingSpec(amount=Decimal(serving_amount), unit=serving_unit),
        nutrition=NutritionFacts(
            entries=tuple(
                NutrientEntry(key=k, amount=Decimal(str(a)), unit=UNIT_FOR[k]) for k, a in entries
            )
        ),
        ingredients=("water",),
        claims=(),
        image_refs=(),
    )


def oracle_table(products, basis):
    keys = []
    units = {}
    for p in products:
        for e in p.nutrition.entries:
            if e.key not in units:
                keys.append(e.key)
                units[e.key] = e.unit
    rows = []
    for key in keys:
        values = []
        for p in products:
            entry = p.nutrition.get(key)
            if entry is None or entry.unit != units[key]:
                values.append(None)
            elif basis is Basis.PER_SERVING:
                values.append(entry.amount)
            else:
                exact = Fraction(entry.amount) * 100 / Fraction(p.serving.amount)
                values.append(round_half_up(exact, 2))
        present = [v for v in values if v is not None]
        if len(present) >= 2:
            lo, hi = min(present), max(present)
            min_marks = [v is not None and v == lo for v in values]
            max_marks = [v is not None and v == hi for v in values]
        else:
            min_marks = [False] * len(values)
            max_marks = [False] * len(values)
        rows.append((key, units[key], values, min_marks, max_marks))
    return rows


def random_instance(rng: random.Random, max_products=4, max_nutrients=6):
    n_products = rng.randint(1, max_products)
    products = []
    for i in range(n_products):
        n_keys = rng.randint(0, max_nutrients)
        chosen = rng.sample(KEYS, n_keys)
        rng.shuffle(chosen)
        entries = []
        for key in chosen:
            # coarse grid encourages ties; explicit zeros appear often
            amount = rng.choice([0, 1, 3, 5, 10, 21, 34, 50, "2.5", "0.5"])
            entries.append((key, amount))
        products.append(make_product(f"p{i}", rng.choice([250, 355, 473, 500, 590]), entries))
    basis = rng.choice([Basis.PER_SERVING, Basis.PER_100])
    return products, basis


def assert_matches_oracle(products, basis):
    table = build_comparison(products, basis)
    expected = oracle_table(products, basis)
    assert [r.key for r in table.rows] == [e[0] for e in expected]
    for row, (key, unit, values, min_marks, max_marks) in zip(table.rows, expected):
        assert row.unit == unit
        assert list(row.values) == values
        assert list(row.min_marks) == min_marks
        assert list(row.max_marks) == max_marks
