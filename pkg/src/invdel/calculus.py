"""Single-variable calculus on the closed term class.

``differentiate`` applies the usual rules on the tree and is total.
``antidifferentiate`` works term by term on the canonical form and only
accepts terms of the shape

    coefficient * monomial * (at most one sin/cos/exp factor whose argument
    is linear in the integration variable with a rational slope)

where the variable appears either in the monomial or in the function
argument, not both.  Everything else raises NotIntegrable.  The zero
integration constant is chosen everywhere, so differentiating the result
gives back the integrand exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotIntegrable
from .expr import (
    CanonicalForm,
    Expression,
    FunctionApplication,
    FunctionAtom,
    IntegerPower,
    Negation,
    Product,
    RationalConstant,
    Sum,
    Term,
    Variable,
    ZERO,
    ONE,
    canonicalize,
    expression_of,
    form_contains,
    num,
    product_of,
    sum_of,
)
from .parser import render


@dataclass(frozen=True)
class SplitPair:
    """Terms containing the split variable (plus) and the rest (minus)."""

    plus_part: Expression
    minus_part: Expression


def contains_variable(expression: Expression, name: str) -> bool:
    """True iff the variable survives in the canonical form, including
    occurrences inside function arguments."""
    return form_contains(canonicalize(expression), name)


def split_by_variable(expression: Expression, name: str) -> SplitPair:
    """Partition the canonical terms by whether they contain the variable.

    The two parts add back to the input canonically.
    """
    form = canonicalize(expression)
    plus = []
    minus = []
    for term in form.terms:
        (plus if _term_contains(term, name) else minus).append(term)
    return SplitPair(
        plus_part=expression_of(CanonicalForm(tuple(plus))),
        minus_part=expression_of(CanonicalForm(tuple(minus))),
    )


def _term_contains(term: Term, name: str) -> bool:
    for atom, _ in term.factors:
        if isinstance(atom, str):
            if atom == name:
                return True
        elif form_contains(atom.argument, name):
            return True
    return False


def differentiate(expression: Expression, name: str) -> Expression:
    """Partial derivative with respect to the named variable."""
    e = expression
    if isinstance(e, RationalConstant):
        return ZERO
    if isinstance(e, Variable):
        return ONE if e.name == name else ZERO
    if isinstance(e, Negation):
        inner = differentiate(e.child, name)
        return ZERO if inner is ZERO else Negation(inner)
    if isinstance(e, Sum):
        return sum_of([differentiate(c, name) for c in e.children])
    if isinstance(e, Product):
        pieces = []
        for i, child in enumerate(e.children):
            d = differentiate(child, name)
            if d is ZERO:
                continue
            rest = list(e.children[:i]) + [d] + list(e.children[i + 1:])
            pieces.append(product_of(rest))
        return sum_of(pieces)
    if isinstance(e, IntegerPower):
        d = differentiate(e.base, name)
        if d is ZERO:
            return ZERO
        parts: list[Expression] = [num(e.exponent)]
        if e.exponent != 1:
            parts.append(IntegerPower(e.base, e.exponent - 1))
        parts.append(d)
        return product_of(parts)
    if isinstance(e, FunctionApplication):
        d = differentiate(e.argument, name)
        if d is ZERO:
            return ZERO
        if e.tag == "sin":
            outer: Expression = FunctionApplication("cos", e.argument)
        elif e.tag == "cos":
            outer = Negation(FunctionApplication("sin", e.argument))
        elif e.tag == "exp":
            outer = e
        else:  # ln; the reciprocal is materialized on canonicalization
            outer = IntegerPower(e.argument, -1)
        return product_of([outer, d])
    raise TypeError(f"not an expression node: {e!r}")


def antidifferentiate(expression: Expression, name: str) -> Expression:
    """Antiderivative with zero integration constant.

    Raises NotIntegrable (carrying the offending term) when any canonical
    term falls outside the supported class.
    """
    form = canonicalize(expression)
    return sum_of([_integrate_term(t, name) for t in form.terms])


def _integrate_term(term: Term, name: str) -> Expression:
    rest = []
    variable_exponent = 0
    carriers = []  # function atoms whose argument contains the variable
    for atom, e in term.factors:
        if atom == name:
            variable_exponent = e
        elif isinstance(atom, FunctionAtom) and form_contains(atom.argument, name):
            carriers.append((atom, e))
        else:
            rest.append((atom, e))

    if carriers:
        if variable_exponent or len(carriers) > 1:
            raise _not_integrable(term, name)
        atom, e = carriers[0]
        if atom.tag == "ln" or e != 1:
            raise _not_integrable(term, name)
        slope = _linear_slope(atom.argument, name)
        if slope is None:
            raise _not_integrable(term, name)
        coefficient = term.coefficient / slope
        argument = expression_of(atom.argument)
        if atom.tag == "sin":
            outer: Expression = FunctionApplication("cos", argument)
            coefficient = -coefficient
        elif atom.tag == "cos":
            outer = FunctionApplication("sin", argument)
        else:
            outer = FunctionApplication("exp", argument)
        return _term_expression(coefficient, rest, outer)

    if variable_exponent == -1:
        return _term_expression(
            term.coefficient, rest, FunctionApplication("ln", Variable(name)))
    new_exponent = variable_exponent + 1
    coefficient = term.coefficient / new_exponent
    power: Expression = Variable(name)
    if new_exponent != 1:
        power = IntegerPower(power, new_exponent)
    return _term_expression(coefficient, rest, power)


def _linear_slope(argument: CanonicalForm, name: str) -> Fraction | None:
    """Rational slope of the variable when the argument is affine in it."""
    carriers = [t for t in argument.terms if _term_contains(t, name)]
    if len(carriers) != 1:
        return None
    t = carriers[0]
    if t.factors != ((name, 1),):
        return None
    return t.coefficient


def _term_expression(coefficient, factors, extra: Expression) -> Expression:
    parts: list[Expression] = []
    if coefficient != 1:
        parts.append(num(coefficient))
    for atom, e in factors:
        ae = _atom_expr(atom)
        parts.append(ae if e == 1 else IntegerPower(ae, e))
    parts.append(extra)
    return product_of(parts)


def _atom_expr(atom) -> Expression:
    if isinstance(atom, str):
        return Variable(atom)
    return FunctionApplication(atom.tag, expression_of(atom.argument))


def _not_integrable(term: Term, name: str) -> NotIntegrable:
    offender = expression_of(CanonicalForm((term,)))
    return NotIntegrable(
        f"term {render(offender)} has no antiderivative in {name} "
        "within the supported class",
        term=offender,
        variable=name,
    )


def weighted_split_integral(
    expression: Expression,
    split_var: str,
    int_var: str,
    w_plus: Union[int, Fraction],
    w_minus: Union[int, Fraction],
) -> Expression:
    """Split by one variable, integrate both parts in another, recombine.

    Returns w_plus * antiderivative(part containing split_var)
          + w_minus * antiderivative(part without split_var),
    both antiderivatives taken with respect to int_var.
    """
    pair = split_by_variable(expression, split_var)
    pieces = []
    plus = antidifferentiate(pair.plus_part, int_var)
    if plus is not ZERO:
        pieces.append(product_of([num(Fraction(w_plus)), plus]))
    minus = antidifferentiate(pair.minus_part, int_var)
    if minus is not ZERO:
        pieces.append(product_of([num(Fraction(w_minus)), minus]))
    return sum_of(pieces)
