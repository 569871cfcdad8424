import json

import pytest

from involutive_upsilon import loads_complex
from involutive_upsilon.cli import (EXIT_MISMATCH, EXIT_OK, EXIT_PARSE,
                                    KnotSpecError, main, parse_knot_spec)
from involutive_upsilon.staircase import Sign


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_torus():
    r = parse_knot_spec("torus:3,7")
    assert r.kind == "steps"
    assert r.steps == (1, 2, 1, 2, 2, 1, 2, 1)
    assert r.sign is Sign.POSITIVE


def test_parse_mirror_torus():
    r = parse_knot_spec("-torus:2,5")
    assert r.steps == (1, 1, 1, 1)
    assert r.sign is Sign.NEGATIVE


def test_parse_steps():
    r = parse_knot_spec("steps:-:2,1,1,2")
    assert r.steps == (2, 1, 1, 2)
    assert r.sign is Sign.NEGATIVE


def test_parse_file():
    r = parse_knot_spec("file:some/path.json")
    assert r.kind == "file" and r.path == "some/path.json"


@pytest.mark.parametrize("text,fragment", [
    ("torus:2,4", "coprime"),
    ("torus:2", "p,q"),
    ("torus:a,b", "integer"),
    ("steps:*:1,1", "sign"),
    ("steps:+:1,x", "integer"),
    ("steps:+:0,1", "positive"),
    ("wave:1,2", "expected torus:"),
    ("file:", "empty file path"),
])
def test_parse_errors_are_positioned(text, fragment):
    with pytest.raises(KnotSpecError, match=fragment) as exc:
        parse_knot_spec(text)
    assert "position" in str(exc.value)


def test_compute_table_t37(capsys):
    code, out, _ = run_cli(capsys, "compute", "--knot", "torus:3,7",
                           "--invariant", "upper,lower", "--output", "table")
    assert code == EXIT_OK
    assert "knot torus:3,7" in out
    assert "-6t on [0,2/3]; -4 on [2/3,2]" in out
    assert "-4 on [0,2]" in out


def test_compute_v0_integers(capsys):
    code, out, _ = run_cli(capsys, "compute", "--knot", "steps:+:1,1,1,1",
                           "--invariant", "v0")
    assert code == EXIT_OK
    assert "= 1" in out and "/" not in out.split("=")[1]


def test_compute_bare_mirror_torus_form(capsys):
    code, out, _ = run_cli(capsys, "compute", "--knot", "-torus:2,5",
                           "--invariant", "v0")
    assert code == EXIT_OK
    assert "knot -torus:2,5" in out


def test_compute_engine_both_agrees(capsys):
    code, out, _ = run_cli(capsys, "compute", "--knot", "torus:2,7",
                           "--invariant", "upper,lower,v0", "--engine", "both")
    assert code == EXIT_OK
    assert "knot torus:2,7" in out


def test_compute_engine_mismatch_exit(capsys, monkeypatch):
    from involutive_upsilon import reduction

    real = reduction.materialize_closed_form

    def corrupted(out):
        C = real(out)
        from involutive_upsilon.complexes import shift
        return shift(C, 0, -1, -1)

    monkeypatch.setattr(reduction, "materialize_closed_form", corrupted)
    code, out, err = run_cli(capsys, "compute", "--knot", "torus:2,5",
                             "--invariant", "upper", "--engine", "both")
    assert code == EXIT_MISMATCH
    assert "mismatch" in err


def test_compute_closed_form_needs_staircase(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(
        '{"mode": "ALG_ALEX", "generators": [{"id": "u", "gr": 0, "f1": 0, "f2": 0}],'
        ' "differential": [], "involution": [{"from": "u", "to": "u"}]}')
    code, _, err = run_cli(capsys, "compute", "--knot", f"file:{path}",
                           "--invariant", "upper", "--engine", "closed-form")
    assert code == EXIT_PARSE
    assert "closed-form" in err


def test_compute_parse_error_exit(capsys):
    code, _, err = run_cli(capsys, "compute", "--knot", "torus:2,4",
                           "--invariant", "v0")
    assert code == EXIT_PARSE
    assert "coprime" in err


def test_compute_missing_file_exit(capsys):
    code, _, err = run_cli(capsys, "compute", "--knot", "file:/nope/missing.json",
                           "--invariant", "classic")
    assert code == 5


def test_compute_csv_deterministic(capsys, tmp_path):
    args = ("compute", "--knot", "torus:2,5", "--invariant", "upper,v0",
            "--output", "csv", "--output-dir", str(tmp_path))
    code, out, _ = run_cli(capsys, *args)
    assert code == EXIT_OK
    csv_path = tmp_path / "torus_2_5.upper.csv"
    first = csv_path.read_bytes()
    assert first.startswith(b"t,value\n")
    v0 = (tmp_path / "torus_2_5.v0.csv").read_text()
    assert "upper_v0,1" in v0 and "lower_v0,1" in v0
    code, _, _ = run_cli(capsys, *args)
    assert code == EXIT_OK
    assert csv_path.read_bytes() == first


def test_compute_svg(capsys, tmp_path):
    args = ("compute", "--knot", "torus:3,7", "--invariant",
            "classic,folded,upper,lower", "--output", "svg",
            "--output-dir", str(tmp_path))
    code, out, _ = run_cli(capsys, *args)
    assert code == EXIT_OK
    svg = (tmp_path / "torus_3_7.svg").read_text()
    assert svg.count("<polyline") == 4
    assert "<svg" in svg and "torus:3,7" in svg
    first = svg
    run_cli(capsys, *args)
    assert (tmp_path / "torus_3_7.svg").read_text() == first


def test_dump_complex_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "dump-complex", "--knot", "torus:2,5")
    assert code == EXIT_OK
    C, inv = loads_complex(out)
    assert C.n == 5 and inv is not None
    path = tmp_path / "t25.json"
    path.write_text(out)
    code2, out2, _ = run_cli(capsys, "compute", "--knot", f"file:{path}",
                             "--invariant", "upper,lower,v0")
    assert code2 == EXIT_OK
    code3, out3, _ = run_cli(capsys, "compute", "--knot", "torus:2,5",
                             "--invariant", "upper,lower,v0")
    assert out2.splitlines()[1:] == out3.splitlines()[1:]  # same values


def test_dump_complex_stages(capsys):
    for stage, expect_n in (("base", 9), ("folded", 9), ("cone", 18), ("reduced", 10)):
        code, out, _ = run_cli(capsys, "dump-complex", "--knot", "torus:3,7",
                               "--stage", stage)
        assert code == EXIT_OK
        data = json.loads(out)
        assert len(data["generators"]) == expect_n
    code, out, _ = run_cli(capsys, "dump-complex", "--knot", "torus:3,7",
                           "--stage", "reduced", "--strip-acyclic")
    assert len(json.loads(out)["generators"]) == 6


def test_dump_complex_idempotent_bytes(capsys):
    _, out, _ = run_cli(capsys, "dump-complex", "--knot", "steps:+:2,1,1,2")
    from involutive_upsilon import dumps_complex
    C, inv = loads_complex(out)
    assert dumps_complex(C, inv) == out


def test_verify_quick(capsys):
    code, out, _ = run_cli(capsys, "verify", "--max-steps", "3")
    assert code == EXIT_OK
    assert "all" in out and "passed" in out
    assert out.count("ok  ") >= 10


def test_unknown_invariant_rejected(capsys):
    code, _, err = run_cli(capsys, "compute", "--knot", "torus:2,3",
                           "--invariant", "tau")
    assert code == EXIT_PARSE
    assert "unknown invariant" in err
