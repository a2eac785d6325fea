"""Round-trip verification reports and solenoidal/conservative predicates."""

import random

import pytest

from invdel import (
    SamplingExhausted,
    ScalarField,
    ValidationError,
    VectorField,
    builtin,
    curl,
    gradient,
    inverse_divergence,
    is_conservative,
    is_solenoidal,
    parse,
    roundtrip_report,
)

from _support import random_scalar, random_vector

CARTESIAN = builtin("cartesian")
SPHERICAL = builtin("spherical")


def vec(system, *texts):
    return VectorField(tuple(parse(t) for t in texts), system)


def test_solenoidal_predicate():
    assert is_solenoidal(vec(CARTESIAN, "y", "z", "x"))
    assert not is_solenoidal(vec(CARTESIAN, "x", "0", "0"))


def test_conservative_predicate():
    assert is_conservative(vec(CARTESIAN, "2*x*y", "x^2", "1"))
    assert not is_conservative(vec(CARTESIAN, "0 - y", "x", "0"))


def test_report_for_known_solenoidal_field():
    report = roundtrip_report("inv_curl", vec(CARTESIAN, "x*y*z + y^2", "x*z + y",
                                              "-z - y*z^2/2"))
    assert report.kind == "inv_curl"
    assert report.symbolic_equal
    assert report.within_tolerance
    assert report.sample_count == 100
    assert report.max_abs_error == 0.0
    assert report.max_rel_error == 0.0
    assert all(r == "0" for r in report.to_dict()["residual"])


def test_report_dict_round_trips_to_json_types():
    report = roundtrip_report(
        "inv_div", ScalarField(parse("3"), CARTESIAN), samples=10)
    payload = report.to_dict()
    assert payload["kind"] == "inv_div"
    assert payload["residual"] == ["0"]
    assert isinstance(payload["sampling_box"], list)
    assert payload["within_tolerance"] is True


def test_reports_are_deterministic_for_a_seed():
    field = vec(CARTESIAN, "y", "z", "x")
    first = roundtrip_report("inv_curl", field, seed=7)
    second = roundtrip_report("inv_curl", field, seed=7)
    assert first.to_dict() == second.to_dict()


def test_seed_is_recorded_in_the_report():
    f = random_scalar(random.Random(4), CARTESIAN)
    a = roundtrip_report("inv_div", f, seed=1)
    b = roundtrip_report("inv_div", f, seed=2)
    assert a.rng_seed == 1 and b.rng_seed == 2
    assert a.symbolic_equal and b.symbolic_equal
    assert a.within_tolerance and b.within_tolerance


def test_precomputed_result_is_verified_as_given():
    f = ScalarField(parse("3"), CARTESIAN)
    good = inverse_divergence(f)
    report = roundtrip_report("inv_div", f, result=good)
    assert report.symbolic_equal

    bad = VectorField(
        (good.components[0] + parse("x^2"),
         good.components[1], good.components[2]), CARTESIAN)
    report = roundtrip_report("inv_div", f, result=bad, samples=10)
    assert not report.symbolic_equal
    assert not report.within_tolerance
    assert report.to_dict()["residual"] == ["2*x"]


def test_points_outside_the_domain_are_resampled():
    f = ScalarField(parse("ln(x)"), CARTESIAN)
    filler = inverse_divergence(ScalarField(parse("1"), CARTESIAN))
    report = roundtrip_report("inv_div", f, result=filler, samples=20)
    assert report.resample_count > 0
    assert not report.symbolic_equal


def test_sampling_gives_up_when_the_domain_is_empty():
    f = ScalarField(parse("ln(x - 10)"), CARTESIAN)
    filler = inverse_divergence(ScalarField(parse("1"), CARTESIAN))
    with pytest.raises(SamplingExhausted):
        roundtrip_report("inv_div", f, result=filler, samples=5)


def test_unknown_kind_is_rejected():
    with pytest.raises(ValidationError):
        roundtrip_report("inverse-curl", vec(CARTESIAN, "0", "0", "0"))
    with pytest.raises(ValidationError):
        roundtrip_report("inv_curl", vec(CARTESIAN, "0", "0", "0"), samples=0)


def test_random_round_trips_stay_within_tolerance():
    rng = random.Random(41)
    for system in (CARTESIAN, builtin("cylindrical")):
        for _ in range(10):
            B = curl(random_vector(rng, system))
            report = roundtrip_report("inv_curl", B, samples=25, seed=rng.randint(0, 10**6))
            assert report.symbolic_equal
            assert report.within_tolerance

            f = random_scalar(rng, system)
            report = roundtrip_report("inv_grad", gradient(f), samples=25,
                                      seed=rng.randint(0, 10**6))
            assert report.symbolic_equal
            assert report.within_tolerance
