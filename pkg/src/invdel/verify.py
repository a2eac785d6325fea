"""Round-trip verification: symbolic residuals plus seeded numeric sampling.

The symbolic channel canonicalizes forward(inverse(input)) - input.  The
numeric channel evaluates that canonical residual at seeded points of the
system's sampling box, using the input's magnitude at each point as the
relative scale, so a symbolically exact result reports an error of exactly
zero.  Points where evaluation leaves the real domain are resampled, up to
ten times the requested sample count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError, SamplingExhausted, ValidationError
from .expr import (
    Expression,
    Negation,
    canonicalize,
    eval_numeric,
    expression_of,
    sum_of,
)
from .inverse import (
    BasePoint,
    DivergenceWeights,
    inverse_curl,
    inverse_divergence,
    inverse_gradient,
)
from .parser import render
from .vecops import ScalarField, VectorField, curl, divergence, gradient

RELATIVE_TOLERANCE = 1e-9
ABSOLUTE_FLOOR = 1e-12

KINDS = ("inv_curl", "inv_div", "inv_grad")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one round-trip check."""

    kind: str
    symbolic_equal: bool
    residual: Union[VectorField, Expression]
    sample_count: int
    max_abs_error: float
    max_rel_error: float
    rng_seed: int
    sampling_box: tuple
    resample_count: int
    within_tolerance: bool

    def to_dict(self) -> dict:
        if isinstance(self.residual, VectorField):
            rendered = [render(c) for c in self.residual.components]
        else:
            rendered = [render(self.residual)]
        return {
            "kind": self.kind,
            "symbolic_equal": self.symbolic_equal,
            "residual": rendered,
            "sample_count": self.sample_count,
            "max_abs_error": self.max_abs_error,
            "max_rel_error": self.max_rel_error,
            "rng_seed": self.rng_seed,
            "sampling_box": [list(iv) for iv in self.sampling_box],
            "resample_count": self.resample_count,
            "within_tolerance": self.within_tolerance,
        }


def is_solenoidal(B: VectorField) -> bool:
    return canonicalize(divergence(B)).is_zero()


def is_conservative(A: VectorField) -> bool:
    return all(canonicalize(c).is_zero() for c in curl(A).components)


def roundtrip_report(
    kind: str,
    field: Union[VectorField, ScalarField],
    *,
    weights: Optional[DivergenceWeights] = None,
    base: Optional[BasePoint] = None,
    samples: int = 100,
    seed: int = 42,
    result=None,
) -> VerificationReport:
    """Run inverse then forward and report the residual.

    ``result`` may carry an already-computed (possibly gauge-shifted)
    inverse; otherwise the inverse operator runs here and its errors
    propagate unchanged.
    """
    if kind not in KINDS:
        raise ValidationError(f"unknown verification kind {kind!r}")
    if samples < 1:
        raise ValidationError("sample count must be positive")

    system = field.system
    if kind == "inv_curl":
        result = result if result is not None else inverse_curl(field)
        forward = list(curl(result).components)
        reference = list(field.components)
    elif kind == "inv_div":
        result = result if result is not None else inverse_divergence(field, weights)
        forward = [divergence(result)]
        reference = [field.value]
    else:
        result = result if result is not None else inverse_gradient(field, base)
        forward = list(gradient(result).components)
        reference = list(field.components)

    residual_forms = [
        canonicalize(sum_of([f, Negation(r)])) for f, r in zip(forward, reference)
    ]
    symbolic_equal = all(form.is_zero() for form in residual_forms)
    residual_exprs = tuple(expression_of(form) for form in residual_forms)
    residual: Union[VectorField, Expression]
    if kind == "inv_div":
        residual = residual_exprs[0]
    else:
        residual = VectorField(residual_exprs, system, getattr(field, "constants", frozenset()))

    rng = random.Random(seed)
    box = system.sampling_box
    names = system.names
    max_abs = 0.0
    max_rel = 0.0
    within = True
    resamples = 0
    collected = 0
    while collected < samples:
        point = {n: rng.uniform(lo, hi) for n, (lo, hi) in zip(names, box)}
        try:
            pairs = [
                (eval_numeric(res, point), eval_numeric(ref, point))
                for res, ref in zip(residual_exprs, reference)
            ]
        except DomainError:
            resamples += 1
            if resamples > 10 * samples:
                raise SamplingExhausted(
                    f"more than {10 * samples} sample points fell outside the domain")
            continue
        for error_value, scale in pairs:
            error = abs(error_value)
            max_abs = max(max_abs, error)
            max_rel = max(max_rel, error / max(1.0, abs(scale)))
            if error > max(RELATIVE_TOLERANCE * abs(scale), ABSOLUTE_FLOOR):
                within = False
        collected += 1

    return VerificationReport(
        kind=kind,
        symbolic_equal=symbolic_equal,
        residual=residual,
        sample_count=samples,
        max_abs_error=max_abs,
        max_rel_error=max_rel,
        rng_seed=seed,
        sampling_box=box,
        resample_count=resamples,
        within_tolerance=within,
    )
