from __future__ import annotations

import io
import json


from conftest import NINE_GON
from diskgarside.cli import run
from diskgarside.disk import DiskObject, fan, validate

NINE_KEY = DiskObject.from_chords(*NINE_GON).key
BRAID4 = "v1:2,2,2,2|0,1,2;2,1,0"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_objects(capsys):
    code, out, _ = call(capsys, "objects", "--labels", "3,3")
    assert code == 0
    assert len(out.split()) == 2


def test_objects_json(capsys):
    code, out, _ = call(capsys, "objects", "--labels", "3,3,3", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 5 and data["m"] == 5


def test_weight_nine_gon(capsys):
    code, out, _ = call(capsys, "weight", "--object", NINE_KEY, "--arc", "0")
    assert code == 0 and out.strip() == "6"


def test_interval_labels(capsys, tmp_path):
    dot = tmp_path / "i.dot"
    code, out, _ = call(capsys, "interval", "--labels", "2,2,2", "--verify", "--dot", str(dot))
    assert code == 0
    assert "size: 6" in out
    assert dot.read_text().count("->") == 6


def test_tamari(capsys, tmp_path):
    dot = tmp_path / "t.dot"
    code, out, _ = call(capsys, "tamari", "--labels", "3,3,3,3", "--base", "fan", "--dot", str(dot), "--json")
    data = json.loads(out)
    assert code == 0 and data["size"] == 14 and data["covers"] == 21 and data["classical"]


def test_atoms_rotate_complement_delta(capsys):
    key = fan(validate([3, 3, 3])).key
    code, out, _ = call(capsys, "atoms", "--object", key, "--json")
    assert code == 0 and len(json.loads(out)["atoms"]) == 2
    code, out, _ = call(capsys, "rotate", "--object", key, "--arc", "0", "--json")
    assert code == 0 and json.loads(out)["target"] == DiskObject.from_chords([3, 3, 3], [(0, 3), (1, 3)]).key
    code, out, _ = call(capsys, "complement", "--object", key, "--arcs", "0,1", "--json")
    data = json.loads(out)
    assert data["kind"] == "ER3" and sorted([len(data["f_ab"]), len(data["f_ba"])]) == [1, 2]
    code, out, _ = call(capsys, "delta", "--object", BRAID4, "--json")
    assert code == 0 and len(json.loads(out)["arcs"]) == 6


def test_chargraph(capsys):
    code, out, _ = call(capsys, "chargraph", "--object", BRAID4, "--arcs", "0,1,2")
    assert code == 0 and "nodes: 24" in out


def test_cube_check(capsys):
    code, out, _ = call(capsys, "cube-check", "--labels", "2,2,2,2", "--threads", "2")
    assert code == 0 and "0 failures" in out


def test_cube_check_inconclusive_exit_code(capsys):
    code, _, _ = call(capsys, "cube-check", "--labels", "2,2,2,2", "--oracle-max-class", "1")
    assert code == 3


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_equal_and_nf(capsys, tmp_path):
    key = "v1:2,2,2|0,1;1,0"
    left = write(tmp_path, "l.json", {"source": key, "arcs": [0, 1, 0]})
    right = write(tmp_path, "r.json", {"source": key, "arcs": [1, 0, 1]})
    code, out, _ = call(capsys, "equal", "--left", left, "--right", right, "--oracle")
    assert code == 0 and out.split() == ["true", "oracle:", "yes"]
    code, out, _ = call(capsys, "nf", "--word", left, "--json")
    assert code == 0 and len(json.loads(out)) == 1


def test_stdin_word(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"source": "v1:2,2,2|0,1;1,0", "arcs": [0, 0]})))
    code, out, _ = call(capsys, "nf", "--word", "-")
    assert code == 0 and out.split("\n")[:2] == ["0", "0"]


def test_word_problem(capsys, tmp_path):
    key = "v1:2,2,2|0,1;1,0"
    f = write(tmp_path, "f.json", {"apex": key, "denominator": [0, 1], "numerator": [0, 1]})
    code, out, _ = call(capsys, "word-problem", "--fraction", f)
    assert code == 0 and "identity: true" in out
    g = write(tmp_path, "g.json", {"source": key, "letters": [[1, 0], [-1, 1]]})
    code, out, _ = call(capsys, "word-problem", "--fraction", g, "--json")
    assert code == 0 and json.loads(out)["identity"] is False


def test_usage_errors(capsys, tmp_path):
    assert call(capsys, "atoms", "--object", "nonsense")[0] == 2
    assert call(capsys, "objects", "--labels", "1,3")[0] == 2
    assert call(capsys, "rotate", "--object", BRAID4, "--arc", "7")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "nf", "--word", str(bad))[0] == 2
    assert call(capsys, "objects", "--labels", "3,3", "--step-cap", "0")[0] == 2


def test_cap_exit_code(capsys):
    assert call(capsys, "objects", "--labels", "3,3,3,3,3", "--object-cap", "3")[0] == 3
    assert call(capsys, "interval", "--labels", "2,2,2,2", "--node-cap", "4")[0] == 3


def test_config_file(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"json": True, "object-cap": 3})
    code, out, _ = call(capsys, "objects", "--labels", "3,3", "--config", cfg)
    assert code == 0 and json.loads(out)["count"] == 2
    assert call(capsys, "objects", "--labels", "3,3,3,3", "--config", cfg)[0] == 3
    assert call(capsys, "objects", "--labels", "3,3,3,3", "--config", cfg, "--object-cap", "100")[0] == 0
    bad = write(tmp_path, "b.json", {"colour": "blue"})
    assert call(capsys, "objects", "--labels", "3,3", "--config", bad)[0] == 2
