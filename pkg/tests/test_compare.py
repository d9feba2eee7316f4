import random
from decimal import Decimal

import pytest

from healthychoice.catalog import Basis
from healthychoice.compare import build_comparison, mark_extremes, table_to_csv
from healthychoice.errors import EmptyProductList, MixedServingUnits

from compare_oracle import assert_matches_oracle, make_product, random_instance

SUGARY = make_product("a", 590, [("sugar", 34)])
LIGHTER = make_product("b", 500, [("sugar", 21)])


def test_per_100_hand_case():
    table = build_comparison([SUGARY, LIGHTER], Basis.PER_100)
    row = table.rows[0]
    assert row.key == "sugar"
    assert row.values == (Decimal("5.76"), Decimal("4.20"))
    assert row.min_marks == (False, True)
    assert row.max_marks == (True, False)


def test_single_product_no_marks():
    table = build_comparison([SUGARY], Basis.PER_100)
    assert table.product_ids == ("a",)
    for row in table.rows:
        assert not any(row.min_marks) and not any(row.max_marks)


def test_disjoint_keys_union_no_marks():
    left = make_product("a", 500, [("sugar", 10)])
    right = make_product("b", 500, [("caffeine", 80)])
    table = build_comparison([left, right], Basis.PER_SERVING)
    assert [r.key for r in table.rows] == ["sugar", "caffeine"]
    assert table.rows[0].values == (Decimal(10), None)
    assert table.rows[1].values == (None, Decimal(80))
    for row in table.rows:
        assert not any(row.min_marks) and not any(row.max_marks)


def test_empty_product_list():
    with pytest.raises(EmptyProductList):
        build_comparison([], Basis.PER_SERVING)


def test_mixed_serving_units_per_100():
    bottle = make_product("a", 500, [("sugar", 10)], serving_unit="ml")
    bar = make_product("b", 60, [("sugar", 10)], serving_unit="g")
    with pytest.raises(MixedServingUnits):
        build_comparison([bottle, bar], Basis.PER_100)
    # per-serving comparison over mixed units is fine
    table = build_comparison([bottle, bar], Basis.PER_SERVING)
    assert table.rows[0].values == (Decimal(10), Decimal(10))


def test_full_tie_marks_all():
    products = [make_product(p, 500, [("sugar", 3)]) for p in ("a", "b", "c")]
    table = build_comparison(products, Basis.PER_SERVING)
    row = table.rows[0]
    assert row.min_marks == (True, True, True)
    assert row.max_marks == (True, True, True)


def test_absent_vs_zero():
    with_zero = make_product("a", 500, [("sugar", 0)])
    without = make_product("b", 500, [("caffeine", 10)])
    third = make_product("c", 500, [("sugar", 5)])
    table = build_comparison([with_zero, without, third], Basis.PER_SERVING)
    sugar = next(r for r in table.rows if r.key == "sugar")
    # explicit zero participates; the absent column never gets a mark
    assert sugar.values == (Decimal(0), None, Decimal(5))
    assert sugar.min_marks == (True, False, False)
    assert sugar.max_marks == (False, False, True)


def test_per_serving_values_are_raw_amounts(catalog):
    products = [catalog.get("powerfuel-berry"), catalog.get("hydracharge-citrus")]
    table = build_comparison(products, Basis.PER_SERVING)
    for row in table.rows:
        for product, value in zip(products, row.values):
            entry = product.nutrition.get(row.key)
            if entry is not None:
                assert value == entry.amount


def test_mark_extremes_idempotent():
    table = build_comparison([SUGARY, LIGHTER], Basis.PER_100)
    assert mark_extremes(table) == table
    assert mark_extremes(mark_extremes(table)) == mark_extremes(table)


def test_column_permutation_equivariance():
    products = [
        make_product("a", 590, [("sugar", 34), ("sodium", 120)]),
        make_product("b", 500, [("sugar", 21), ("caffeine", 50)]),
        make_product("c", 473, [("sodium", 80), ("sugar", 0)]),
    ]
    table = build_comparison(products, Basis.PER_100)
    perm = [products[2], products[0], products[1]]
    permuted = build_comparison(perm, Basis.PER_100)
    # row set is the same keys (order may differ); per-product cells identical
    by_key = {r.key: r for r in table.rows}
    for row in permuted.rows:
        original = by_key[row.key]
        for pid, value, lo, hi in zip(permuted.product_ids, row.values, row.min_marks, row.max_marks):
            i = table.product_ids.index(pid)
            assert value == original.values[i]
            assert lo == original.min_marks[i]
            assert hi == original.max_marks[i]


def test_csv_export_tokens():
    table = build_comparison([SUGARY, LIGHTER], Basis.PER_100)
    text = table_to_csv(table)
    lines = text.strip().splitlines()
    assert lines[0] == "key,unit,a,b"
    assert lines[1] == "sugar,g,5.76 max,4.20 min"


def test_csv_export_minmax_and_absent():
    left = make_product("a", 500, [("sugar", 3)])
    right = make_product("b", 500, [("sugar", 3), ("caffeine", 10)])
    text = table_to_csv(build_comparison([left, right], Basis.PER_SERVING))
    lines = text.strip().splitlines()
    assert lines[1] == "sugar,g,3 minmax,3 minmax"
    assert lines[2] == "caffeine,mg,,10"


# --- brute-force oracle -------------------------------------------------------

def test_matches_brute_force_oracle():
    rng = random.Random(96)
    for _ in range(200):
        products, basis = random_instance(rng)
        assert_matches_oracle(products, basis)
