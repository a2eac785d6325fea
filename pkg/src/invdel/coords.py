"""Orthogonal curvilinear coordinate systems.

A system is three coordinate names, three symbolic scale factors, a default
base point for path integrals and a box for numeric sampling.  The builtin
boxes stay away from the h = 0 surfaces (the cylindrical axis, the spherical
origin and polar axis), so every sampled point is regular.  Angular
coordinates are treated as plain real variables: constructed potentials are
valid on the local chart, not glued across the 2*pi seam.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import UnknownSystem, ValidationError
from .expr import (
    Expression,
    ONE,
    Variable,
    canonicalize,
    eval_numeric,
    free_variables,
    product_of,
    sin,
)
from .errors import DomainError, UnsupportedExpression
from . import parser


@dataclass(frozen=True)
class CoordinateSystem:
    """Names u1,u2,u3 with scale factors h1,h2,h3 and sampling defaults."""

    names: tuple[str, str, str]
    scale_factors: tuple[Expression, Expression, Expression]
    base_point: tuple[Fraction, Fraction, Fraction]
    sampling_box: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]
    label: str = "custom"

    def __post_init__(self):
        if len(self.names) != 3 or len(set(self.names)) != 3:
            raise ValidationError("exactly three distinct coordinate names required")
        for name in self.names:
            try:
                Variable(name)
            except ValueError as exc:
                raise ValidationError(str(exc)) from None
        if len(self.scale_factors) != 3:
            raise ValidationError("exactly three scale factors required")
        allowed = set(self.names)
        for i, h in enumerate(self.scale_factors, start=1):
            foreign = free_variables(h) - allowed
            if foreign:
                raise ValidationError(
                    f"h{i} references unknown variables: {', '.join(sorted(foreign))}")
            try:
                if canonicalize(h).is_zero():
                    raise ValidationError(f"h{i} is identically zero")
            except UnsupportedExpression as exc:
                raise ValidationError(f"h{i} outside the term class: {exc}") from None
        if len(self.base_point) != 3:
            raise ValidationError("base point needs three coordinates")
        try:
            object.__setattr__(
                self, "base_point", tuple(Fraction(v) for v in self.base_point))
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"base point must be rational: {exc}") from None
        if len(self.sampling_box) != 3:
            raise ValidationError("sampling box needs three intervals")
        box = []
        for lo, hi in self.sampling_box:
            lo, hi = float(lo), float(hi)
            if not lo < hi:
                raise ValidationError(f"empty sampling interval [{lo}, {hi}]")
            box.append((lo, hi))
        object.__setattr__(self, "sampling_box", tuple(box))
        at_base = {n: float(v) for n, v in zip(self.names, self.base_point)}
        for i, h in enumerate(self.scale_factors, start=1):
            try:
                value = eval_numeric(h, at_base)
            except DomainError:
                raise ValidationError(f"h{i} undefined at the base point") from None
            if value == 0.0:
                raise ValidationError(f"h{i} vanishes at the base point")


def builtin(name: str) -> CoordinateSystem:
    """One of cartesian, cylindrical, spherical."""
    if name == "cartesian":
        return CoordinateSystem(
            names=("x", "y", "z"),
            scale_factors=(ONE, ONE, ONE),
            base_point=(Fraction(0), Fraction(0), Fraction(0)),
            sampling_box=((-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0)),
            label="cartesian",
        )
    if name == "cylindrical":
        return CoordinateSystem(
            names=("rho", "phi", "z"),
            scale_factors=(ONE, Variable("rho"), ONE),
            base_point=(Fraction(1), Fraction(0), Fraction(0)),
            sampling_box=((0.5, 2.0), (0.1, 3.0), (-2.0, 2.0)),
            label="cylindrical",
        )
    if name == "spherical":
        return CoordinateSystem(
            names=("r", "theta", "phi"),
            scale_factors=(
                ONE,
                Variable("r"),
                product_of([Variable("r"), sin(Variable("theta"))]),
            ),
            base_point=(Fraction(1), Fraction(1), Fraction(0)),
            sampling_box=((0.5, 2.0), (0.1, 3.0), (0.1, 3.0)),
            label="spherical",
        )
    raise UnknownSystem(f"no builtin coordinate system named {name!r}")


BUILTIN_NAMES = ("cartesian", "cylindrical", "spherical")


def custom(
    names: Sequence[str],
    scale_factors: Sequence[Union[str, Expression]],
    base_point: Sequence[Union[int, Fraction]],
    sampling_box: Sequence[tuple[float, float]],
    label: str = "custom",
) -> CoordinateSystem:
    """Build a validated user-defined system; h entries may be source text."""
    parsed = tuple(
        parser.parse(h) if isinstance(h, str) else h for h in scale_factors)
    return CoordinateSystem(
        names=tuple(names),
        scale_factors=parsed,
        base_point=tuple(base_point),
        sampling_box=tuple(sampling_box),
        label=label,
    )
