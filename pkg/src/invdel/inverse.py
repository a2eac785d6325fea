"""Inverse curl, inverse divergence and inverse gradient.

Inverse curl: for a solenoidal B, form the cyclic integrands
c_i = h_j*h_k*B_i, split each by its own coordinate u_i, and assemble

    A_i = (1/h_i) * [ W(c_next, u_next, du_prev) - W(c_prev, u_prev, du_next) ]

where W is the weighted split integral with weight 1/3 on the part
containing the split variable and 1/2 on the rest.  Those two weights are
what make the construction land on an exact preimage; the result is checked
by recomputing the curl and any mismatch raises ConstructionFailed instead
of returning a wrong potential.

Inverse divergence spreads the integrated source over the components with
weights summing to one.  Inverse gradient integrates A . dl along the
three-segment axis-parallel path from a base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .calculus import antidifferentiate, weighted_split_integral
from .errors import (
    BasePointSingular,
    ConstructionFailed,
    NotConservative,
    NotSolenoidal,
    UnsupportedExpression,
    ValidationError,
)
from .expr import (
    CanonicalForm,
    Expression,
    FunctionAtom,
    Negation,
    ZERO,
    canonicalize,
    eval_numeric,
    expression_of,
    form_has_variables,
    num,
    product_of,
    reciprocal,
    substitute,
    sum_of,
)
from .errors import DomainError
from .parser import render
from .vecops import ScalarField, VectorField, curl, divergence, gradient

_CYCLES = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class CurlWeights:
    """Split-integral weights; only (1/3, 1/2) yields an exact preimage."""

    w_plus: Fraction
    w_minus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "w_plus", Fraction(self.w_plus))
        object.__setattr__(self, "w_minus", Fraction(self.w_minus))


DEFAULT_CURL_WEIGHTS = CurlWeights(Fraction(1, 3), Fraction(1, 2))


@dataclass(frozen=True)
class DivergenceWeights:
    """Per-component shares of the integrated source; they must sum to 1."""

    k1: Fraction
    k2: Fraction
    k3: Fraction

    def __post_init__(self):
        for name in ("k1", "k2", "k3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.k1 + self.k2 + self.k3 != 1:
            raise ValidationError(
                f"divergence weights must sum to 1, got {self.k1} + {self.k2} + {self.k3}")

    @classmethod
    def symmetric(cls) -> "DivergenceWeights":
        third = Fraction(1, 3)
        return cls(third, third, third)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class BasePoint:
    """Lower corner (a, b, c) of the integration path plus the free constant."""

    a: Fraction
    b: Fraction
    c: Fraction
    c0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c", "c0"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


def curl_integrands(B: VectorField) -> tuple[Expression, Expression, Expression]:
    """The cyclic products c_i = h_j * h_k * B_i."""
    h = B.system.scale_factors
    return tuple(
        product_of([h[j], h[k], B.components[i]]) for i, j, k in _CYCLES)


def curl_potential_formula(
    B: VectorField, weights: CurlWeights = DEFAULT_CURL_WEIGHTS
) -> VectorField:
    """Raw assembly of the candidate potential; no gates, no verification."""
    system = B.system
    u = system.names
    h = system.scale_factors
    c = curl_integrands(B)
    comps = []
    for i, j, k in _CYCLES:
        first = weighted_split_integral(c[j], u[j], u[k], weights.w_plus, weights.w_minus)
        second = weighted_split_integral(c[k], u[k], u[j], weights.w_plus, weights.w_minus)
        bracket = sum_of([first, Negation(second)])
        comps.append(product_of([reciprocal(h[i]), bracket]))
    return VectorField(tuple(comps), system, B.constants)


def inverse_curl(B: VectorField) -> VectorField:
    """A vector potential A with curl(A) = B, exactly.

    Raises NotSolenoidal when div(B) != 0, NotIntegrable when an integrand
    falls outside the term class, and ConstructionFailed if the recomputed
    curl does not match the input.
    """
    residual = canonicalize(divergence(B))
    if not residual.is_zero():
        raise NotSolenoidal(
            f"divergence residual {render(expression_of(residual))}",
            residual=expression_of(residual),
        )
    A = curl_potential_formula(B)
    _check_roundtrip(A, B)
    return A


def inverse_curl_unchecked(
    B: VectorField, weights: CurlWeights = DEFAULT_CURL_WEIGHTS
) -> tuple[VectorField, Expression]:
    """Formula result plus the divergence residual, skipping both gates."""
    residual = expression_of(canonicalize(divergence(B)))
    return curl_potential_formula(B, weights), residual


def _check_roundtrip(A: VectorField, B: VectorField) -> None:
    diffs = [
        canonicalize(sum_of([got, Negation(expected)]))
        for got, expected in zip(curl(A).components, B.components)
    ]
    if any(not d.is_zero() for d in diffs):
        mismatch = tuple(expression_of(d) for d in diffs)
        raise ConstructionFailed(
            "curl of the constructed potential does not reproduce the input; "
            "residual (" + ", ".join(render(m) for m in mismatch) + ")",
            residual=VectorField(mismatch, A.system, A.constants),
        )


def inverse_divergence(
    f: ScalarField, weights: Optional[DivergenceWeights] = None
) -> VectorField:
    """A vector field A with div(A) = f, exactly.

    Component i is (k_i/(h_j*h_k)) * antiderivative of h1*h2*h3*f in u_i.
    Components with weight zero are left at zero without integrating.
    """
    w = (weights or DivergenceWeights.symmetric()).as_tuple()
    system = f.system
    u = system.names
    h = system.scale_factors
    source = product_of([h[0], h[1], h[2], f.value])
    comps: list[Expression] = []
    for i, j, k in _CYCLES:
        if w[i] == 0:
            comps.append(ZERO)
            continue
        integral = antidifferentiate(source, u[i])
        scale = reciprocal(product_of([h[j], h[k]]))
        comps.append(product_of([num(w[i]), scale, integral]))
    return VectorField(tuple(comps), system, f.constants)


def inverse_gradient(A: VectorField, base: Optional[BasePoint] = None) -> ScalarField:
    """The scalar potential of a conservative field.

    Integrates A . dl along the axis-parallel path from (a, b, c): first in
    u3 with u1 = a and u2 = b held, then in u2 with u1 = a held, then in u1,
    adding the free constant c0.  Gradient of the result reproduces A.
    """
    system = A.system
    curl_parts = [canonicalize(c) for c in curl(A).components]
    if any(not part.is_zero() for part in curl_parts):
        raise NotConservative(
            "curl residual ("
            + ", ".join(render(expression_of(p)) for p in curl_parts) + ")",
            residual=VectorField(
                tuple(expression_of(p) for p in curl_parts), system, A.constants),
        )
    return _path_integral(A, base or BasePoint(*system.base_point))


def inverse_gradient_unchecked(
    A: VectorField, base: Optional[BasePoint] = None
) -> tuple[ScalarField, VectorField]:
    """Path integral plus the curl residual, skipping the gate."""
    residual = VectorField(
        tuple(expression_of(canonicalize(c)) for c in curl(A).components),
        A.system, A.constants)
    return _path_integral(A, base or BasePoint(*A.system.base_point)), residual


def _path_integral(A: VectorField, base: BasePoint) -> ScalarField:
    system = A.system
    u1, u2, u3 = system.names
    h = system.scale_factors
    along = [product_of([h[i], A.components[i]]) for i in range(3)]
    for e in along:
        canonicalize(e)  # genuine Unsupported surfaces before any substitution

    g3 = substitute(substitute(along[2], u1, num(base.a)), u2, num(base.b))
    _guard_regular(g3)
    segment3 = _definite(g3, u3, base.c)

    g2 = substitute(along[1], u1, num(base.a))
    _guard_regular(g2)
    segment2 = _definite(g2, u2, base.b)

    segment1 = _definite(along[0], u1, base.a)

    value = sum_of([segment1, segment2, segment3, num(base.c0)])
    return ScalarField(value, system, A.constants)


def _definite(integrand: Expression, name: str, lower: Fraction) -> Expression:
    primitive = antidifferentiate(integrand, name)
    at_lower = substitute(primitive, name, num(lower))
    _guard_regular(at_lower)
    return sum_of([primitive, Negation(at_lower)])


def _guard_regular(expression: Expression) -> None:
    """Reject substituted expressions that are undefined at the base point."""
    try:
        form = canonicalize(expression)
    except UnsupportedExpression as exc:
        raise BasePointSingular(f"base point substitution: {exc}") from None
    _scan_form(form)


def _scan_form(form: CanonicalForm) -> None:
    for term in form.terms:
        for atom, e in term.factors:
            if not isinstance(atom, FunctionAtom):
                continue
            _scan_form(atom.argument)
            if form_has_variables(atom.argument):
                continue
            inner = expression_of(atom.argument)
            try:
                value = eval_numeric(inner, {})
            except DomainError as exc:
                raise BasePointSingular(
                    f"base point substitution: {exc}") from None
            if atom.tag == "ln" and value <= 0.0:
                raise BasePointSingular(
                    f"base point substitution: ln of non-positive value {value}")
            if e < 0 and value == 0.0:
                raise BasePointSingular(
                    "base point substitution: reciprocal of a vanishing factor")


def gauge_shift_curl(A: VectorField, f: ScalarField) -> VectorField:
    """A + grad(f); leaves the curl unchanged."""
    if f.system != A.system:
        raise ValidationError("gauge scalar lives in a different coordinate system")
    shift = gradient(f)
    comps = tuple(
        sum_of([a, s]) for a, s in zip(A.components, shift.components))
    return VectorField(comps, A.system, A.constants | f.constants)


def gauge_shift_div(A: VectorField, C: VectorField) -> VectorField:
    """A + curl(C); leaves the divergence unchanged."""
    if C.system != A.system:
        raise ValidationError("gauge vector lives in a different coordinate system")
    shift = curl(C)
    comps = tuple(
        sum_of([a, s]) for a, s in zip(A.components, shift.components))
    return VectorField(comps, A.system, A.constants | C.constants)
