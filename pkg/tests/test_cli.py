import io as stdio
import json
import subprocess
import sys

import pytest

from tqftlab import io
from tqftlab.cli import run
from tqftlab.errors import ParseError
from tqftlab.projrep import pauli_projrep, verify_projrep


def call(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_projrep_verify_pauli(fixtures):
    code, out, _ = call("projrep", "verify", str(fixtures / "pauli.json"))
    assert code == 0
    assert out == "projective relation holds (16/16 pairs)\n"


def test_torus_on_kz2(fixtures):
    code, out, _ = call("cob", "eval", "--dim", "2", "--algebra", str(fixtures / "kz2.json"), "cup ; comul ; mul ; cap")
    assert (code, out) == (0, "2\n")


def test_type_error_exits_2(fixtures):
    code, out, err = call("cob", "eval", "--dim", "2", "--algebra", str(fixtures / "kz2.json"), "mul ; cup")
    assert code == 2 and out == ""
    assert "position 6" in err


def test_unknown_verb_rejected_before_reading(tmp_path):
    missing = tmp_path / "nope.json"
    assert call("frobnicate", "verify", str(missing))[0] == 2
    assert call("projrep", "explode", str(missing))[0] == 2


def test_missing_and_malformed_files(tmp_path):
    assert call("projrep", "verify", str(tmp_path / "nope.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "cyclic(2)", "dim": 1, "matrices": [[[1]]]}')
    assert call("projrep", "verify", str(bad))[0] == 2
    bad.write_text("{not json")
    code, _, err = call("group", "verify", str(bad))
    assert code == 2 and "position" in err


def test_verification_failure_exits_1(tmp_path):
    doc = io.projrep_to_json(pauli_projrep())
    doc["matrices"][3] = [[-x for x in row] for row in doc["matrices"][3]]
    path = tmp_path / "flipped.json"
    path.write_text(json.dumps(doc))
    code, out, _ = call("projrep", "verify", str(path))
    assert code == 1
    assert out.startswith("FAIL: projective relation fails at") and "witness:" in out


def test_json_format_and_flags_after_action(fixtures):
    code, out, _ = call("projrep", "verify", str(fixtures / "pauli.json"), "--format", "json", "--seed", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["ok"] and doc["verdict"]["total"] == 16


def test_global_flags_before_verb(fixtures):
    code, out, _ = call("--format", "json", "frob", "verify", str(fixtures / "kz2.json"))
    assert code == 0 and json.loads(out)["verdict"]["ok"]


def test_conductor_cap_flag():
    code, _, err = call("--conductor-cap", "4", "modular", "defect", "--builtin", "semion")
    assert code == 1 and "conductor" in err.lower()
    assert call("modular", "defect", "--builtin", "semion") == (0, "q8\n", "")


def test_modular_from_file(tmp_path):
    from tqftlab.anomaly import semion

    path = tmp_path / "semion.json"
    path.write_text(json.dumps(io.modular_to_json(semion())))
    assert call("modular", "defect", str(path))[1] == "q8\n"
    assert call("modular", "defect", str(path), "--relator", "S^4")[1] == "1\n"


def test_sweeps_are_seeded():
    a = call("anomaly", "sweep", "--lam", "1/2", "--count", "2", "--seed", "9")
    b = call("anomaly", "sweep", "--lam", "1/2", "--count", "2", "--seed", "9")
    assert a == b and a[0] == 0
    assert call("cocycle", "sweep", "cyclic(4)", "--count", "20")[0] == 0


def test_anomaly_reduce_writes_a_verifiable_theory(tmp_path):
    out = tmp_path / "theory.json"
    assert call("anomaly", "reduce", "--lam", "q4", "--vdim", "2", "--output", str(out))[0] == 0
    code, text, _ = call("anomaly", "verify", str(out))
    assert code == 0 and "anom2 holds (261/261 pairs)" in text


def test_cob_parse_and_normal_form():
    assert call("cob", "parse", "--dim", "1", "(coev) ; (swap ; ev)") == (0, "coev ; swap ; ev\n() -> ()\n", "")
    code, out, _ = call("cob", "normal-form", "--dim", "1", "coev ; swap ; ev")
    assert code == 0 and out == "()->(): O^1\n"


def test_console_entry_point(fixtures):
    proc = subprocess.run(
        [sys.executable, "-m", "tqftlab", "projrep", "verify", str(fixtures / "pauli.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "projective relation holds (16/16 pairs)\n"


def test_io_round_trips():
    r = pauli_projrep()
    again = io.projrep(json.loads(json.dumps(io.projrep_to_json(r))))
    assert again == r and verify_projrep(again)
    with pytest.raises(ParseError):
        io.projrep({"group": "cyclic(2)", "dim": 1, "matrices": [[[1]], [[1]]], "colour": 1})
    with pytest.raises(ParseError):
        io.scalar(1.5)
