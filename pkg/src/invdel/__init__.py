"""Symbolic inverse curl, inverse divergence and inverse gradient in
orthogonal curvilinear coordinates.

The package builds exact antiderivative-based potentials for vector and
scalar fields and checks every construction by substituting it back into
the forward operator, both symbolically and on random sample points.
"""

from .calculus import (
    SplitPair,
    antidifferentiate,
    contains_variable,
    differentiate,
    split_by_variable,
    weighted_split_integral,
)
from .coords import BUILTIN_NAMES, CoordinateSystem, builtin, custom
from .errors import (
    BasePointSingular,
    ConstructionFailed,
    DomainError,
    InvdelError,
    NotConservative,
    NotIntegrable,
    NotSolenoidal,
    SamplingExhausted,
    SourceError,
    UnboundVariable,
    UnknownSystem,
    UnsupportedExpression,
    ValidationError,
)
from .expr import (
    Expression,
    canonicalize,
    cos,
    equals,
    eval_numeric,
    exp,
    free_variables,
    is_zero,
    ln,
    num,
    sin,
    substitute,
    var,
)
from .inverse import (
    DEFAULT_CURL_WEIGHTS,
    BasePoint,
    CurlWeights,
    DivergenceWeights,
    curl_integrands,
    curl_potential_formula,
    gauge_shift_curl,
    gauge_shift_div,
    inverse_curl,
    inverse_curl_unchecked,
    inverse_divergence,
    inverse_gradient,
    inverse_gradient_unchecked,
)
from .parser import parse, render
from .vecops import ScalarField, VectorField, curl, divergence, gradient
from .verify import (
    VerificationReport,
    is_conservative,
    is_solenoidal,
    roundtrip_report,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "BasePoint",
    "BasePointSingular",
    "ConstructionFailed",
    "CoordinateSystem",
    "CurlWeights",
    "DEFAULT_CURL_WEIGHTS",
    "DivergenceWeights",
    "DomainError",
    "Expression",
    "InvdelError",
    "NotConservative",
    "NotIntegrable",
    "NotSolenoidal",
    "SamplingExhausted",
    "ScalarField",
    "SourceError",
    "SplitPair",
    "UnboundVariable",
    "UnknownSystem",
    "UnsupportedExpression",
    "ValidationError",
    "VectorField",
    "VerificationReport",
    "antidifferentiate",
    "builtin",
    "canonicalize",
    "contains_variable",
    "cos",
    "curl",
    "curl_integrands",
    "curl_potential_formula",
    "custom",
    "differentiate",
    "divergence",
    "equals",
    "eval_numeric",
    "exp",
    "free_variables",
    "gauge_shift_curl",
    "gauge_shift_div",
    "gradient",
    "inverse_curl",
    "inverse_curl_unchecked",
    "inverse_divergence",
    "inverse_gradient",
    "inverse_gradient_unchecked",
    "is_conservative",
    "is_solenoidal",
    "is_zero",
    "ln",
    "num",
    "parse",
    "render",
    "roundtrip_report",
    "sin",
    "split_by_variable",
    "substitute",
    "var",
    "weighted_split_integral",
]
