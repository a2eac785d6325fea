"""Shared helpers for building random polynomial test fields."""

from fractions import Fraction

from invdel import ScalarField, VectorField, num, var


def random_polynomial(rng, names, max_terms=3, max_degree=3):
    """Random polynomial with small Fraction coefficients."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        coefficient = Fraction(
            rng.randint(1, 9) * rng.choice((1, -1)), rng.randint(1, 9))
        term = num(coefficient)
        for name in names:
            degree = rng.randint(0, max_degree)
            if degree:
                term = term * var(name) ** degree
        terms.append(term)
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total


def random_vector(rng, system, max_terms=3, max_degree=3):
    components = tuple(
        random_polynomial(rng, system.names, max_terms, max_degree)
        for _ in range(3))
    return VectorField(components, system)


def random_scalar(rng, system, max_terms=3, max_degree=3):
    value = random_polynomial(rng, system.names, max_terms, max_degree)
    return ScalarField(value, system)
