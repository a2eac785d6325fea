"""Kernel tests: canonical forms, substitution, numeric evaluation."""

import random
from fractions import Fraction

import pytest

from invdel import (
    DomainError,
    UnboundVariable,
    UnsupportedExpression,
    canonicalize,
    equals,
    eval_numeric,
    is_zero,
    ln,
    num,
    parse,
    sin,
    substitute,
    var,
)
from invdel.expr import expression_of, form_contains, reciprocal

from _support import random_polynomial

x, y, z = var("x"), var("y"), var("z")


def test_product_of_conjugates_expands():
    left = (x + num(1)) * (x - num(1))
    right = x ** 2 - num(1)
    assert equals(left, right)


def test_commuted_products_cancel():
    assert is_zero(x * y - y * x)


def test_canonical_form_orders_terms():
    form = canonicalize(num(1) + x ** 2 - num(2))
    assert len(form.terms) == 2
    first, second = form.terms
    assert first.factors == (("x", 2),)
    assert second.factors == ()
    assert second.coefficient == Fraction(-1)


def test_like_terms_merge_exactly():
    e = num(1, 3) * x + num(1, 6) * x
    form = canonicalize(e)
    assert len(form.terms) == 1
    assert form.terms[0].coefficient == Fraction(1, 2)


def test_zero_coefficient_terms_drop():
    assert canonicalize(x - x).terms == ()
    assert canonicalize(x - x).is_zero()


def test_function_arguments_canonicalize():
    assert equals(sin(x + y), sin(y + x))
    assert not equals(sin(x + y), sin(x - y))


def test_negative_power_roundtrip():
    e = x ** -2
    form = canonicalize(e)
    assert form.terms[0].factors == (("x", -2),)


def test_reciprocal_of_multi_term_rejected():
    with pytest.raises(UnsupportedExpression):
        reciprocal(x + y)


def test_reciprocal_of_zero_rejected():
    with pytest.raises(UnsupportedExpression):
        reciprocal(x - x)


def test_substitute_with_constant_symbol():
    e = x * y + x ** 2
    shifted = substitute(e, "x", var("a"))
    assert equals(shifted, var("a") * y + var("a") ** 2)


def test_substitute_inside_function_argument():
    e = sin(x + y)
    assert equals(substitute(e, "x", num(0)), sin(y))


def test_substitute_then_eval():
    e = parse("x*y*z + y^2")
    assert eval_numeric(e, {"x": 1, "y": 2, "z": 3}) == pytest.approx(10.0)


def test_eval_log_domain_error():
    with pytest.raises(DomainError):
        eval_numeric(ln(x), {"x": -1.0})


def test_eval_zero_to_negative_power():
    with pytest.raises(DomainError):
        eval_numeric(x ** -1, {"x": 0.0})


def test_eval_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_numeric(x + y, {"x": 1.0})


def test_coefficients_stay_exact():
    e = num(1, 3) * x + num(1, 3) * x + num(1, 3) * x
    form = canonicalize(e)
    assert form.terms[0].coefficient == Fraction(1)


def test_canonicalize_is_idempotent_on_rebuilt_trees():
    rng = random.Random(7)
    for _ in range(50):
        e = random_polynomial(rng, ("x", "y", "z"))
        form = canonicalize(e)
        assert canonicalize(expression_of(form)) == form


def test_form_contains_looks_inside_functions():
    form = canonicalize(sin(x * y) + z)
    assert form_contains(form, "x")
    assert form_contains(form, "z")
    assert not form_contains(form, "w")


def test_random_equal_pairs_agree_numerically():
    rng = random.Random(2024)
    for _ in range(1000):
        e = random_polynomial(rng, ("x", "y", "z"))
        rebuilt = expression_of(canonicalize(e))
        points = [
            {n: rng.uniform(-2.0, 2.0) for n in ("x", "y", "z")}
            for _ in range(20)
        ]
        for point in points:
            a = eval_numeric(e, point)
            b = eval_numeric(rebuilt, point)
            assert abs(a - b) <= 1e-9 * max(1.0, abs(a))
