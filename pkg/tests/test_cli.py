import csv
import io
import json
import shutil
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from cohomolab.cli import CSV_COLUMNS, main, stable_digest
from cohomolab.complexes import complex_from_json, cohomology_dims
from cohomolab.corpus import ENV_VAR, InputError, digest, load_group, load_index
from cohomolab.linalg import FieldTag
from cohomolab.shapiro import brute_force_oracle

SCHEMA = json.loads((resources.files("cohomolab") / "schema" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--output", "json")
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


def test_classes(capsys):
    code, rep = run_json(capsys, "classes", "S3")
    assert code == 0
    assert sorted(c["size"] for c in rep["result"]["classes"]) == [1, 2, 3]
    assert run_json(capsys, "classes", "C5")[1]["result"]["count"] == 5
    assert run_json(capsys, "classes", "D4")[1]["result"]["count"] == 5


def test_ct(capsys):
    assert run_json(capsys, "ct", "S3")[1]["result"]["commutative_transitive"] is True
    assert run_json(capsys, "ct", "C6")[1]["result"]["commutative_transitive"] is True
    code, rep = run_json(capsys, "ct", "D4")
    res = rep["result"]
    assert code == 0 and res["commutative_transitive"] is False
    d4 = load_index()["D4"].group()
    x = res["witness"]["x"]
    # r^2 is the only non-identity central element of D4
    assert all(d4.commute(x, y) for y in d4.elements()) and x != d4.identity


@pytest.mark.parametrize("group,action,field,dims", [
    ("S3", "conjugation", "f2", [2, 1, 1]),
    ("C2", "trivial", "f2", [1, 1, 1, 1]),
    ("S3", "conjugation", "q", [2, 0, 0]),
])
def test_disintegrate(capsys, group, action, field, dims):
    deg = str(len(dims) - 1)
    code, rep = run_json(capsys, "disintegrate", group, action, "--field", field, "--max-degree", deg)
    assert code == 0
    assert rep["result"]["dims"] == dims == rep["result"]["oracle_dims"]
    assert rep["result"]["equal"] and rep["verdict"]["ok"]
    assert {"fast_path", "oracle"} <= set(rep["timings"])
    assert [r["tag"] for r in rep["reports"]] == ["oracle", "fast path"]


def test_disintegrate_resolution_and_random_transversal(capsys):
    code, rep = run_json(capsys, "disintegrate", "S3", "conjugation", "--field", "f2", "--max-degree", "2",
                         "--random-transversal", "--seed", "4")
    assert code == 0
    assert rep["result"]["resolution"]["dims"] == [2, 1, 1]
    assert all(rep["result"]["resolution"]["checks"].values())
    assert rep["config"]["seed"] == 4 and rep["config"]["random_transversal"]
    code, rep = run_json(capsys, "disintegrate", "S3", "S3/S3_mixed", "--max-degree", "1", "--resolution")
    assert code == 0 and "resolution" in rep["result"]


def test_simplicial(capsys):
    code, rep = run_json(capsys, "simplicial-triviality", "S3", "--max-degree", "2")
    assert code == 0 and rep["verdict"]["message"] == "simplicially trivial at this scale"
    code, rep = run_json(capsys, "simplicial-triviality", "D4", "--max-degree", "1")
    assert code == 0 and rep["result"]["verdicts"]["a_ideal_dual_vanishes"]
    assert any("not necessary" in n for n in rep["result"]["notes"])
    code, rep = run_json(capsys, "simplicial-triviality", "trivial")
    assert rep["verdict"]["message"].startswith("degenerate")


def test_les(capsys):
    code, rep = run_json(capsys, "les-verify", "S3")
    assert code == 0 and rep["result"]["ok"] and rep["config"]["max_degree"] == 2


@pytest.mark.parametrize("n", [1, 10, 1000])
def test_sniper(capsys, n):
    code, rep = run_json(capsys, "sniper", str(n))
    assert code == 0 and rep["result"]["inverse_norm"] == str(n)


def test_csv_columns(capsys):
    code, out, _ = run(capsys, "disintegrate", "S3", "conjugation", "--max-degree", "1", "--output", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == CSV_COLUMNS["cohomology"]
    assert len(rows) == 1 + 2 * 2
    for cmd, argv in (("classes", ["classes", "S3"]), ("ct", ["ct", "D4"]), ("les-verify", ["les-verify", "C2"]),
                      ("sniper", ["sniper", "3"])):
        _, out, _ = run(capsys, *argv, "--output", "csv")
        assert next(csv.reader(io.StringIO(out))) == CSV_COLUMNS[cmd]


def test_text_output(capsys):
    code, out, _ = run(capsys, "ct", "S3")
    assert code == 0 and out.strip()


def test_deterministic(capsys):
    argv = ("disintegrate", "D4", "conjugation", "--field", "f2", "--max-degree", "2")
    a = run_json(capsys, *argv)[1]
    b = run_json(capsys, *argv)[1]
    assert stable_digest(a) == stable_digest(b)


def test_golden_digests(corpus):
    for name, entry in corpus.items():
        if not entry.cohomology:
            continue
        g = entry.group()
        for (aname, _), a in zip(entry.actions, entry.load_actions(g)):
            for f in ("q", "f2", "f3"):
                rep = brute_force_oracle(a, FieldTag.parse(f), 2)
                assert digest(rep.to_dict()) == entry.golden[f"{aname}@{f}"], (aname, f)


def test_dump_complex_round_trip(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, rep = run_json(capsys, "disintegrate", "S3", "conjugation", "--field", "f2", "--max-degree", "2",
                         "--dump-complex", str(path))
    c = complex_from_json(json.loads(path.read_text()))
    assert list(cohomology_dims(c).dims) == rep["result"]["dims"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "classes", "no-such-group")[0] == 1
    assert run(capsys, "disintegrate", "S3", "conjugation", "--field", "f4")[0] == 1
    code, _, err = run(capsys, "disintegrate", "S3", "conjugation", "--memory-cap", "100")
    assert code == 1 and "memory cap" in err
    with pytest.raises(SystemExit) as e:
        main(["sniper", "0"])
    assert e.value.code == 2  # argparse usage error


def test_parse_error_has_line_context(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "name": "X",\n  "mul": [[0, 1], [1 0]]\n}\n')
    code, _, err = run(capsys, "classes", str(bad))
    assert code == 1
    assert ":3:" in err and "[1 0]" in err and "^" in err
    with pytest.raises(InputError):
        load_group(bad)


def test_invalid_table_reports_witness(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "X", "mul": [[0, 1], [1, 1]]}))
    code, _, err = run(capsys, "classes", str(bad))
    assert code == 1 and "witness" in err


def test_group_and_action_files(capsys, tmp_path):
    g = tmp_path / "c3.json"
    g.write_text(json.dumps({"name": "C3", "degree": 3, "generators": [[1, 2, 0]]}))
    a = tmp_path / "act.json"
    a.write_text(json.dumps({"group": "C3", "set_size": 3, "act": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    code, rep = run_json(capsys, "disintegrate", str(g), str(a), "--field", "f3", "--max-degree", "2")
    assert code == 0 and rep["result"]["dims"] == [1, 0, 0]


def test_env_override(capsys, tmp_path, monkeypatch):
    root = resources.files("cohomolab") / "corpus"
    dst = tmp_path / "corpus"
    shutil.copytree(str(root), dst)
    idx = json.loads((dst / "index.json").read_text())
    idx["groups"]["Z7"] = {"file": "groups/Z7.json", "cohomology": False, "actions": {}, "golden": {}}
    (dst / "groups" / "Z7.json").write_text(json.dumps({"name": "Z7", "generators": [[1, 2, 3, 4, 5, 6, 0]]}))
    (dst / "index.json").write_text(json.dumps(idx))
    monkeypatch.setenv(ENV_VAR, str(dst))
    code, rep = run_json(capsys, "classes", "Z7")
    assert code == 0 and rep["result"]["count"] == 7
    monkeypatch.delenv(ENV_VAR)
    assert run(capsys, "classes", "Z7")[0] == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cohomolab", "sniper", "5", "--output", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["inverse_norm"] == "5"
