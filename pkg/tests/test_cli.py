"""End-to-end command-line tests driven through main()."""

import json

from invdel import equals, parse
from invdel.cli import main

GOLDEN_B = ["x*y*z + y^2", "x*z + y", "-z - y*z^2/2"]
GOLDEN_A = [
    "x*z^2/4 + y^2*z^2/12 + 2*y*z/3",
    "-x*y*z^2/3 - x*z/3 - y^2*z/2",
    "-x^2*z/4 + x*y^2*z/6 - x*y/3 + y^3/6",
]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_inverse_curl_of_golden_field(capsys):
    code, out, err = run(capsys, "inv-curl", *GOLDEN_B)
    assert code == 0
    assert err == ""
    lines = out.strip().splitlines()
    assert lines == [f"e{i}: {text}" for i, text in enumerate(GOLDEN_A, start=1)]


def test_inverse_curl_with_verification(capsys):
    code, out, _ = run(capsys, "inv-curl", *GOLDEN_B, "--verify")
    assert code == 0
    verify_line = out.strip().splitlines()[-1]
    assert verify_line.startswith("verify: symbolic_equal=True within_tolerance=True")


def test_nonsolenoidal_input_exits_3(capsys):
    code, out, err = run(capsys, "inv-curl", "x", "0", "0")
    assert code == 3
    assert out == ""
    assert "NotSolenoidal" in err


def test_inverse_gradient_with_base(capsys):
    code, out, _ = run(capsys, "inv-grad", "--base", "0,0,0", "2*x*y", "x^2", "1")
    assert code == 0
    assert out.strip() == "phi: x^2*y + z"


def test_nonconservative_input_exits_3(capsys):
    code, _, err = run(capsys, "inv-grad", "--base", "0,0,0", "--", "-y", "x", "0")
    assert code == 3
    assert "NotConservative" in err


def test_not_integrable_exits_4(capsys):
    code, _, err = run(capsys, "inv-div", "theta", "--coords", "spherical")
    assert code == 4
    assert "NotIntegrable" in err


def test_weighted_inverse_divergence_avoids_blocked_component(capsys):
    code, out, _ = run(capsys, "inv-div", "theta", "--coords", "spherical",
                       "--weights", "1,0,0")
    assert code == 0
    assert out.strip().splitlines()[0] == "e1: r*theta/3"


def test_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "inv-curl", "x +", "0", "0")
    assert code == 2
    assert "SourceError" in err


def test_bad_weights_exit_2(capsys):
    code, _, err = run(capsys, "inv-div", "3", "--weights", "1,1")
    assert code == 2
    assert "ValidationError" in err


def test_json_payload_schema(capsys):
    code, out, _ = run(capsys, "inv-curl", *GOLDEN_B, "--format", "json", "--verify")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {
        "command", "coords", "input", "result", "verification", "error"}
    assert payload["command"] == "inv-curl"
    assert payload["coords"] == "cartesian"
    assert payload["result"] == GOLDEN_A
    assert payload["error"] is None
    assert payload["verification"]["symbolic_equal"] is True
    assert payload["verification"]["within_tolerance"] is True


def test_json_error_payload(capsys):
    code, out, _ = run(capsys, "inv-curl", "x", "0", "0", "--format", "json")
    assert code == 3
    payload = json.loads(out)
    assert payload["result"] is None
    assert payload["error"].startswith("NotSolenoidal")


def test_json_output_is_deterministic(capsys):
    args = ("inv-curl", *GOLDEN_B, "--format", "json", "--verify", "--seed", "9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_forward_commands(capsys):
    code, out, _ = run(capsys, "curl", *GOLDEN_A)
    assert code == 0
    got = [line.split(": ", 1)[1] for line in out.strip().splitlines()]
    for text, want in zip(got, GOLDEN_B):
        assert equals(parse(text), parse(want))

    code, out, _ = run(capsys, "div", "x", "y", "z")
    assert code == 0
    assert out.strip() == "phi: 3"

    code, out, _ = run(capsys, "grad", "r^2", "--coords", "spherical")
    assert code == 0
    assert out.strip().splitlines()[0] == "e1: 2*r"


def test_verify_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "inv-curl", *GOLDEN_B)
    assert code == 0
    assert "verify: symbolic_equal=True" in out

    code, out, _ = run(capsys, "verify", "inv-div", "3")
    assert code == 0

    code, out, _ = run(capsys, "verify", "inv-grad", "2*x*y", "x^2", "1",
                       "--base", "0,0,0")
    assert code == 0


def test_verify_arity_mismatch_exits_2(capsys):
    code, _, err = run(capsys, "verify", "inv-div", "3", "4")
    assert code == 2
    assert "ValidationError" in err


def test_gauge_scalar_flag(capsys):
    code, out, _ = run(capsys, "inv-curl", *GOLDEN_B, "--gauge-scalar", "x*y*z",
                       "--verify")
    assert code == 0
    assert "symbolic_equal=True" in out


def test_gauge_vector_flag(capsys):
    code, out, _ = run(capsys, "inv-div", "3", "--gauge-vector", "y*z,0,0",
                       "--verify")
    assert code == 0
    assert "symbolic_equal=True" in out


def test_unchecked_flag_reports_residual(capsys):
    code, out, _ = run(capsys, "inv-curl", "x", "0", "0", "--unchecked")
    assert code == 0
    assert "residual: 1" in out


def test_coords_file(tmp_path, capsys):
    path = tmp_path / "shifted.coords"
    path.write_text(
        "# cartesian under different names\n"
        "names = u, v, w\n"
        "h1 = 1\n"
        "h2 = 1\n"
        "h3 = 1\n"
        "base = 0, 0, 0\n"
        "box = -2:2, -2:2, -2:2\n")
    code, out, _ = run(capsys, "div", "u", "v", "w", "--coords-file", str(path))
    assert code == 0
    assert out.strip() == "phi: 3"


def test_coords_file_with_missing_key_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.coords"
    path.write_text("names = u, v, w\nh1 = 1\n")
    code, _, err = run(capsys, "div", "u", "v", "w", "--coords-file", str(path))
    assert code == 2
    assert "missing keys" in err
