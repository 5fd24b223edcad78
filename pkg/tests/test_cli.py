import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planequil import ParseError, SchemaError, TrigPolySupport
from planequil.cli import (EXIT_INVALID_BODY, EXIT_NUMERICAL, EXIT_OK,
                           EXIT_USAGE, main, parse_body_spec)

OVAL = {"a0": 3, "cos": [0, 0.3], "sin": [0, 0]}


def _write(tmp_path, obj, name="body.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


# ---------------------------------------------------------------- parsing

def test_parse_unit_circle():
    s = parse_body_spec(b'{"a0": 1, "cos": [], "sin": []}')
    assert s == TrigPolySupport(1.0)


def test_parse_index_convention():
    s = parse_body_spec(json.dumps(OVAL).encode())
    assert s.cos_coeffs == (0.0, 0.3)


def test_parse_length_mismatch():
    with pytest.raises(SchemaError):
        parse_body_spec(b'{"a0": 1, "cos": [1, 2], "sin": [0]}')


def test_parse_rejects_nan():
    with pytest.raises(SchemaError):
        parse_body_spec(b'{"a0": NaN, "cos": [], "sin": []}')


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_body_spec(b'{"a0": 1,,}')


@settings(max_examples=40, deadline=None)
@given(
    a0=st.floats(0.1, 10, allow_nan=False),
    coeffs=st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), max_size=6),
)
def test_parse_serialize_roundtrip(a0, coeffs):
    spec = {"a0": a0, "cos": [c for c, _ in coeffs], "sin": [s for _, s in coeffs]}
    parsed = parse_body_spec(json.dumps(spec).encode())
    assert parsed.a0 == a0
    assert parsed.cos_coeffs == tuple(spec["cos"])
    assert parsed.sin_coeffs == tuple(spec["sin"])


# ---------------------------------------------------------------- commands

def test_validate_ok(tmp_path, capsys):
    rc = main(["validate", _write(tmp_path, OVAL)])
    assert rc == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["rho_min"] == pytest.approx(2.1)
    assert out["perimeter"] == pytest.approx(6 * math.pi, rel=1e-9)


def test_validate_nonconvex_exit_code(tmp_path, capsys):
    path = _write(tmp_path, {"a0": 1, "cos": [0, 0.5], "sin": [0, 0]})
    rc = main(["validate", path])
    assert rc == EXIT_INVALID_BODY
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "NotConvex"
    assert err["rho"] == pytest.approx(-0.5, abs=1e-9)
    assert "phi" in err


def test_schema_error_exit_code(tmp_path, capsys):
    path = _write(tmp_path, {"a0": 1, "cos": [1, 2], "sin": [0]})
    assert main(["validate", path]) == EXIT_INVALID_BODY
    assert json.loads(capsys.readouterr().err)["error"] == "SchemaError"


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.json")]) == EXIT_INVALID_BODY
    assert json.loads(capsys.readouterr().err)["error"] == "ParseError"


def test_degenerate_circle_exit_code(tmp_path, capsys):
    path = _write(tmp_path, {"a0": 1, "cos": [], "sin": []})
    rc = main(["equilibria", path, "--center", "0,0"])
    assert rc == EXIT_NUMERICAL
    assert json.loads(capsys.readouterr().err)["error"] == "DegenerateCircle"


def test_usage_error_exit_code(tmp_path, capsys):
    path = _write(tmp_path, OVAL)
    assert main(["equilibria", path, "--center", "zero"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["region-map", path, "--bbox", "1,2", "--res", "3x3"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["no-such-command"]) == EXIT_USAGE
    capsys.readouterr()


def test_equilibria_command(tmp_path, capsys):
    rc = main(["equilibria", _write(tmp_path, OVAL), "--center", "0,0"])
    assert rc == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["nDirect"] == out["nFormula"] == 4
    assert out["m"] == -1.0
    assert len(out["equilibria"]) == 4


def test_equilibria_oblique_schema(tmp_path, capsys):
    rc = main(["equilibria", _write(tmp_path, OVAL), "--center", "0,0",
               "--alpha-deg", str(math.degrees(math.atan(0.1)))])
    assert rc == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["alpha"] == pytest.approx(math.atan(0.1), rel=1e-10)
    assert out["nDirect"] == out["nFormula"] == 4
    assert out["m"] == -1.0


def test_analyze_report(tmp_path, capsys):
    rc = main(["analyze", _write(tmp_path, OVAL)])
    assert rc == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["counts"] == {"nDirect": 4, "nFormula": 4, "m": -1.0}
    assert len(out["cusps"]) == 4
    assert out["constant_width"] is None


def test_analyze_deterministic(tmp_path, capsys):
    path = _write(tmp_path, OVAL)
    main(["analyze", path])
    first = capsys.readouterr().out
    main(["analyze", path])
    assert capsys.readouterr().out == first


def test_evolute_csv(tmp_path):
    out = tmp_path / "evolute.csv"
    rc = main(["evolute", _write(tmp_path, OVAL), "--samples", "32",
               "--out", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "phi,x,y,is_cusp,kind"
    assert len(lines) == 1 + 32 + 4
    cusp_rows = [l for l in lines[1:] if l.split(",")[3] == "1"]
    assert len(cusp_rows) == 4
    assert {r.split(",")[4] for r in cusp_rows} == {"min", "max"}


def test_region_map_csv(tmp_path):
    out = tmp_path / "map.csv"
    rc = main(["region-map", _write(tmp_path, OVAL), "--bbox", "-2,-2,2,2",
               "--res", "41x41", "--delta", "0.02", "--out", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "x,y,n,near_evolute"
    assert len(lines) == 1 + 41 * 41
    counts = [int(l.split(",")[2]) for l in lines[1:] if l.split(",")[3] == "0"]
    assert set(counts) <= {2, 4}


def test_roll_csv(tmp_path):
    out = tmp_path / "trace.csv"
    rc = main(["roll", _write(tmp_path, OVAL), "--alpha-deg", "0",
               "--samples", "8", "--out", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "phi,x,y,height"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert float(first[3]) == pytest.approx(3.3)


def test_plot_unit_circle(tmp_path):
    path = _write(tmp_path, {"a0": 1, "cos": [], "sin": []})
    out = tmp_path / "scene.svg"
    assert main(["plot", path, "--out", str(out)]) == EXIT_OK
    svg = out.read_text()
    assert svg.count('id="boundary"') == 1
    assert svg.count('id="center"') == 1
    assert 'class="equilibrium' not in svg


def test_plot_oval_markers(tmp_path):
    out = tmp_path / "scene.svg"
    assert main(["plot", _write(tmp_path, OVAL), "--out", str(out)]) == EXIT_OK
    svg = out.read_text()
    assert svg.count('class="cusp') == 4
    assert svg.count('class="equilibrium') == 4


def test_plot_bytes_identical(tmp_path):
    path = _write(tmp_path, OVAL)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    main(["plot", path, "--out", str(a)])
    main(["plot", path, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
