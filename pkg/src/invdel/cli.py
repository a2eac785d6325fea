"""Command-line interface.

Commands: curl, div, grad, inv-curl, inv-div, inv-grad, verify.
Exit codes: 0 success, 2 parse/usage error, 3 precondition violated
(NotSolenoidal / NotConservative), 4 NotIntegrable / Unsupported,
5 ConstructionFailed.

Text output prints one component per line (``e1:``/``e2:``/``e3:`` for
vectors, ``phi:`` for scalars).  JSON output always carries the fields
command, coords, input, result, verification, error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .coords import BUILTIN_NAMES, CoordinateSystem, builtin, custom
from .errors import (
    ConstructionFailed,
    InvdelError,
    NotConservative,
    NotIntegrable,
    NotSolenoidal,
    SourceError,
    UnknownSystem,
    UnsupportedExpression,
    ValidationError,
)
from .inverse import (
    BasePoint,
    DivergenceWeights,
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
from .verify import roundtrip_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_UNSUPPORTED = 4
EXIT_CONSTRUCTION = 5


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="invdel",
        description="Symbolic curl, divergence and gradient and their "
                    "inverses in orthogonal curvilinear coordinates.",
    )
    sub = root.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coords", choices=BUILTIN_NAMES, default="cartesian",
                        help="builtin coordinate system (default: cartesian)")
    common.add_argument("--coords-file", metavar="PATH",
                        help="load a custom coordinate system from a key/value file")
    common.add_argument("--format", choices=("text", "json"), default="text")

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--verify", action="store_true",
                        help="attach a round-trip verification report")
    checks.add_argument("--samples", type=int, default=100)
    checks.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("curl", parents=[common], help="curl of a vector field")
    p.add_argument("components", nargs=3)

    p = sub.add_parser("div", parents=[common], help="divergence of a vector field")
    p.add_argument("components", nargs=3)

    p = sub.add_parser("grad", parents=[common], help="gradient of a scalar field")
    p.add_argument("expression")

    p = sub.add_parser("inv-curl", parents=[common, checks],
                       help="vector potential of a solenoidal field")
    p.add_argument("components", nargs=3)
    p.add_argument("--gauge-scalar", metavar="EXPR",
                   help="add the gradient of this scalar to the result")
    p.add_argument("--unchecked", action="store_true",
                   help="skip the solenoidality gate; report the residual")

    p = sub.add_parser("inv-div", parents=[common, checks],
                       help="vector field with prescribed divergence")
    p.add_argument("expression")
    p.add_argument("--weights", metavar="K1,K2,K3",
                   help="component weights summing to 1 (default: 1/3,1/3,1/3)")
    p.add_argument("--gauge-vector", metavar="E1,E2,E3",
                   help="add the curl of this vector to the result")

    p = sub.add_parser("inv-grad", parents=[common, checks],
                       help="scalar potential of a conservative field")
    p.add_argument("components", nargs=3)
    p.add_argument("--base", metavar="A,B,C",
                   help="base point of the integration path (default: system default)")
    p.add_argument("--c0", metavar="VALUE", help="additive constant (default: 0)")
    p.add_argument("--unchecked", action="store_true",
                   help="skip the conservativeness gate; report the residual")

    p = sub.add_parser("verify", parents=[common],
                       help="run a round-trip verification report")
    p.add_argument("kind", choices=("inv-curl", "inv-div", "inv-grad"))
    p.add_argument("expressions", nargs="+")
    p.add_argument("--weights", metavar="K1,K2,K3")
    p.add_argument("--base", metavar="A,B,C")
    p.add_argument("--c0", metavar="VALUE")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)

    return root


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad {what} {text!r}: {exc}") from None


def _fraction_triple(text: str, what: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValidationError(f"{what} needs three comma-separated values")
    return tuple(_fraction(p, what) for p in parts)


def load_system_file(path: str) -> CoordinateSystem:
    """Read names/h1/h2/h3/base/box from a flat key = value file."""
    entries: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_number, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValidationError(
                        f"{path}:{line_number}: expected 'key = value'")
                key, _, value = line.partition("=")
                entries[key.strip()] = value.strip()
    except OSError as exc:
        raise ValidationError(f"cannot read coordinate file: {exc}") from None
    missing = [k for k in ("names", "h1", "h2", "h3", "base", "box") if k not in entries]
    if missing:
        raise ValidationError(
            f"coordinate file is missing keys: {', '.join(missing)}")
    names = tuple(n.strip() for n in entries["names"].split(","))
    base = tuple(_fraction(v, "base coordinate") for v in entries["base"].split(","))
    box = []
    for interval in entries["box"].split(","):
        lo, sep, hi = interval.partition(":")
        if not sep:
            raise ValidationError("box intervals use the form lo:hi")
        try:
            box.append((float(lo), float(hi)))
        except ValueError as exc:
            raise ValidationError(f"bad box interval {interval!r}: {exc}") from None
    return custom(
        names=names,
        scale_factors=(entries["h1"], entries["h2"], entries["h3"]),
        base_point=base,
        sampling_box=box,
        label=path,
    )


def _resolve_system(ns: argparse.Namespace) -> CoordinateSystem:
    if ns.coords_file:
        return load_system_file(ns.coords_file)
    return builtin(ns.coords)


def _inputs(ns: argparse.Namespace) -> list[str]:
    if hasattr(ns, "components"):
        return list(ns.components)
    if hasattr(ns, "expressions"):
        return list(ns.expressions)
    return [ns.expression]


def _vector(ns_texts: Sequence[str], system: CoordinateSystem) -> VectorField:
    return VectorField(tuple(parse(t) for t in ns_texts), system)


def _weights_arg(ns: argparse.Namespace) -> Optional[DivergenceWeights]:
    if getattr(ns, "weights", None):
        return DivergenceWeights(*_fraction_triple(ns.weights, "weight"))
    return None


def _base_arg(ns: argparse.Namespace, system: CoordinateSystem) -> Optional[BasePoint]:
    base = getattr(ns, "base", None)
    c0 = getattr(ns, "c0", None)
    if base is None and c0 is None:
        return None
    if base is not None:
        a, b, c = _fraction_triple(base, "base coordinate")
    else:
        a, b, c = system.base_point
    constant = _fraction(c0, "constant") if c0 is not None else Fraction(0)
    return BasePoint(a, b, c, constant)


def _cmd_curl(ns, system, payload):
    A = _vector(ns.components, system)
    payload["result"] = [render(c) for c in curl(A).components]


def _cmd_div(ns, system, payload):
    A = _vector(ns.components, system)
    payload["result"] = [render(divergence(A))]


def _cmd_grad(ns, system, payload):
    f = ScalarField(parse(ns.expression), system)
    payload["result"] = [render(c) for c in gradient(f).components]


def _cmd_inv_curl(ns, system, payload):
    B = _vector(ns.components, system)
    if ns.unchecked:
        A, residual = inverse_curl_unchecked(B)
        payload["residual"] = render(residual)
    else:
        A = inverse_curl(B)
    if ns.gauge_scalar:
        A = gauge_shift_curl(A, ScalarField(parse(ns.gauge_scalar), system))
    payload["result"] = [render(c) for c in A.components]
    if ns.verify:
        report = roundtrip_report(
            "inv_curl", B, samples=ns.samples, seed=ns.seed, result=A)
        payload["verification"] = report.to_dict()


def _cmd_inv_div(ns, system, payload):
    f = ScalarField(parse(ns.expression), system)
    weights = _weights_arg(ns)
    A = inverse_divergence(f, weights)
    if ns.gauge_vector:
        parts = ns.gauge_vector.split(",")
        if len(parts) != 3:
            raise ValidationError("--gauge-vector needs three comma-separated expressions")
        A = gauge_shift_div(A, _vector(parts, system))
    payload["result"] = [render(c) for c in A.components]
    if ns.verify:
        report = roundtrip_report(
            "inv_div", f, weights=weights, samples=ns.samples, seed=ns.seed, result=A)
        payload["verification"] = report.to_dict()


def _cmd_inv_grad(ns, system, payload):
    A = _vector(ns.components, system)
    base = _base_arg(ns, system)
    if ns.unchecked:
        phi, residual = inverse_gradient_unchecked(A, base)
        payload["residual"] = [render(c) for c in residual.components]
    else:
        phi = inverse_gradient(A, base)
    payload["result"] = [render(phi.value)]
    if ns.verify:
        report = roundtrip_report(
            "inv_grad", A, base=base, samples=ns.samples, seed=ns.seed, result=phi)
        payload["verification"] = report.to_dict()


def _cmd_verify(ns, system, payload):
    kind = ns.kind.replace("-", "_")
    if ns.kind == "inv-div":
        if len(ns.expressions) != 1:
            raise ValidationError("verify inv-div takes one scalar expression")
        field = ScalarField(parse(ns.expressions[0]), system)
        weights = _weights_arg(ns)
        result = inverse_divergence(field, weights)
        payload["result"] = [render(c) for c in result.components]
        report = roundtrip_report(
            kind, field, weights=weights,
            samples=ns.samples, seed=ns.seed, result=result)
    else:
        if len(ns.expressions) != 3:
            raise ValidationError(f"verify {ns.kind} takes three component expressions")
        field = _vector(ns.expressions, system)
        if ns.kind == "inv-curl":
            result = inverse_curl(field)
            payload["result"] = [render(c) for c in result.components]
            report = roundtrip_report(
                kind, field, samples=ns.samples, seed=ns.seed, result=result)
        else:
            base = _base_arg(ns, system)
            phi = inverse_gradient(field, base)
            payload["result"] = [render(phi.value)]
            report = roundtrip_report(
                kind, field, base=base,
                samples=ns.samples, seed=ns.seed, result=phi)
    payload["verification"] = report.to_dict()


_DISPATCH = {
    "curl": _cmd_curl,
    "div": _cmd_div,
    "grad": _cmd_grad,
    "inv-curl": _cmd_inv_curl,
    "inv-div": _cmd_inv_div,
    "inv-grad": _cmd_inv_grad,
    "verify": _cmd_verify,
}


def _exit_code(error: InvdelError) -> int:
    if isinstance(error, (NotSolenoidal, NotConservative)):
        return EXIT_PRECONDITION
    if isinstance(error, (NotIntegrable, UnsupportedExpression)):
        return EXIT_UNSUPPORTED
    if isinstance(error, ConstructionFailed):
        return EXIT_CONSTRUCTION
    if isinstance(error, (SourceError, ValidationError, UnknownSystem)):
        return EXIT_USAGE
    return 1


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    if payload.get("error"):
        print(f"error: {payload['error']}", file=sys.stderr)
        return
    result = payload.get("result") or []
    if len(result) == 1:
        print(f"phi: {result[0]}")
    else:
        for i, text in enumerate(result, start=1):
            print(f"e{i}: {text}")
    if "residual" in payload:
        residual = payload["residual"]
        if isinstance(residual, list):
            print("residual: (" + ", ".join(residual) + ")")
        else:
            print(f"residual: {residual}")
    report = payload.get("verification")
    if report:
        print(
            "verify: symbolic_equal={symbolic_equal} within_tolerance={within_tolerance} "
            "samples={sample_count} seed={rng_seed} max_abs_error={max_abs_error!r} "
            "max_rel_error={max_rel_error!r} resamples={resample_count}".format(**report))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    payload: dict = {
        "command": ns.command,
        "coords": ns.coords_file or ns.coords,
        "input": _inputs(ns),
        "result": None,
        "verification": None,
        "error": None,
    }
    code = EXIT_OK
    try:
        system = _resolve_system(ns)
        _DISPATCH[ns.command](ns, system, payload)
    except InvdelError as error:
        payload["error"] = f"{type(error).__name__}: {error}"
        code = _exit_code(error)
    _emit(payload, ns.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
