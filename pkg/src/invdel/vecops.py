"""Forward vector operators in orthogonal curvilinear coordinates.

With coordinates u1,u2,u3 and scale factors h1,h2,h3:

    grad(f)_i = (1/h_i) * df/du_i
    div(A)    = (1/(h1*h2*h3)) * sum_i d(h_j*h_k*A_i)/du_i      (i,j,k cyclic)
    curl(A)_i = (1/(h_j*h_k)) * (d(h_k*A_k)/du_j - d(h_j*A_j)/du_k)

Division by scale factors is realized as multiplication by the canonical
reciprocal, which exists only for single-term factors; anything else raises
UnsupportedExpression.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coords import CoordinateSystem
from .errors import ValidationError
from .expr import (
    Expression,
    Negation,
    free_variables,
    product_of,
    reciprocal,
    sum_of,
)
from .calculus import differentiate

_CYCLES = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _check_variables(parts, system: CoordinateSystem, constants: frozenset):
    allowed = set(system.names) | set(constants)
    for e in parts:
        foreign = free_variables(e) - allowed
        if foreign:
            raise ValidationError(
                "expression references variables outside the coordinate system: "
                + ", ".join(sorted(foreign)))


@dataclass(frozen=True)
class VectorField:
    """Three component expressions in a coordinate system's orthonormal frame."""

    components: tuple[Expression, Expression, Expression]
    system: CoordinateSystem
    constants: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValidationError("a vector field needs exactly three components")
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "constants", frozenset(self.constants))
        _check_variables(self.components, self.system, self.constants)


@dataclass(frozen=True)
class ScalarField:
    value: Expression
    system: CoordinateSystem
    constants: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "constants", frozenset(self.constants))
        _check_variables((self.value,), self.system, self.constants)


def gradient(f: ScalarField) -> VectorField:
    """Component-wise (1/h_i) * df/du_i."""
    system = f.system
    comps = []
    for name, h in zip(system.names, system.scale_factors):
        comps.append(product_of([reciprocal(h), differentiate(f.value, name)]))
    return VectorField(tuple(comps), system, f.constants)


def divergence(A: VectorField) -> Expression:
    """Scalar divergence; exact, with the 1/(h1*h2*h3) factor expanded."""
    system = A.system
    h = system.scale_factors
    u = A.system.names
    pieces = []
    for i, j, k in _CYCLES:
        flux = product_of([h[j], h[k], A.components[i]])
        pieces.append(differentiate(flux, u[i]))
    scale = reciprocal(product_of(list(h)))
    return product_of([scale, sum_of(pieces)])


def curl(A: VectorField) -> VectorField:
    """Curl of the field, one cyclic determinant row per component."""
    system = A.system
    h = system.scale_factors
    u = system.names
    comps = []
    for i, j, k in _CYCLES:
        upper = differentiate(product_of([h[k], A.components[k]]), u[j])
        lower = differentiate(product_of([h[j], A.components[j]]), u[k])
        scale = reciprocal(product_of([h[j], h[k]]))
        comps.append(product_of([scale, sum_of([upper, Negation(lower)])]))
    return VectorField(tuple(comps), system, A.constants)
