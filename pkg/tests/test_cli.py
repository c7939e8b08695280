import json
import subprocess
import sys

import pytest

from mahlerkit.cli import main
from mahlerkit.corpus import power_indicator, standard_series
from mahlerkit.equation import MahlerEquation
from mahlerkit.fields import QQ
from mahlerkit.poly import Polynomial


def P(*c):
    return Polynomial(QQ, list(c))


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, obj in [
        ("geo.series", standard_series("geometric", 3, 600)),
        ("pow2.series", power_indicator(2, 256)),
        ("e2.eq", MahlerEquation(QQ, 2, (P(1, -3), P(-1, 0, 3)))),
        ("e3.eq", MahlerEquation(QQ, 3, (P(1, -3), P(-1, 0, 0, 3)))),
        ("pow2.eq", MahlerEquation(QQ, 2, (P(-1), P(1)), P(0, 1))),
    ]:
        path = tmp_path / name
        path.write_text(obj.dumps())
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eq_verify_holds(capsys, files):
    code, out, _ = run(capsys, "eq", "verify", "--eq", files["pow2.eq"], "--series", files["pow2.series"])
    assert code == 0 and out == "holds_to: 256\n"


def test_eq_verify_fails(capsys, files):
    code, out, _ = run(capsys, "eq", "verify", "--eq", files["e2.eq"], "--series", files["pow2.series"])
    assert code == 1 and out.startswith("fails_at:")


def test_missing_file_is_usage_error(capsys, files):
    code, out, err = run(capsys, "eq", "verify", "--eq", "/nonexistent.eq", "--series", files["pow2.series"])
    assert code == 2 and out == ""
    assert err.startswith("mahlerkit: error:") and len(err.strip().splitlines()) == 1


def test_bad_arguments_exit_2(capsys):
    assert main(["eq", "verify"]) == 2
    capsys.readouterr()


def test_base_pair(capsys):
    code, out, _ = run(capsys, "base", "pair", "--k", "12", "--l", "18")
    assert code == 0 and "729" in out


def test_base_pair_dependent(capsys):
    code, _, err = run(capsys, "base", "pair", "--k", "4", "--l", "8")
    assert code == 2 and "error" in err


def test_pipeline_run(capsys, files):
    code, out, _ = run(capsys, "pipeline", "run", "--series", files["geo.series"], "--eqk", files["e2.eq"],
                       "--eql", files["e3.eq"])
    assert code == 0 and "rational" in out


def test_json_manifest(capsys, files):
    code, out, _ = run(capsys, "--json", "eq", "verify", "--eq", files["pow2.eq"], "--series", files["pow2.series"])
    data = json.loads(out)
    assert code == 0 and data["exit_code"] == 0
    assert data["result"] == {"holds": True, "holds_to": 256}
    m = data["manifest"]
    assert set(m) == {"schema", "command", "inputs", "parameters", "version", "wall_time"}
    assert m["schema"] == "mahlerkit/1" and set(m["inputs"]) == {files["pow2.eq"], files["pow2.series"]}


def test_manifests_are_reproducible(capsys, files):
    argv = ["--json", "eq", "normalize", "--eq", files["pow2.eq"]]
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    for d in (first, second):
        d["manifest"].pop("wall_time")
    assert first == second


def test_series_gen_round_trips(capsys):
    code, out, _ = run(capsys, "series", "gen", "--name", "geometric", "--param", "3", "--terms", "5")
    assert code == 0 and out.split()[-5:] == ["1", "3", "9", "27", "81"]


def test_asym_group_search(capsys):
    code, out, _ = run(capsys, "asym", "group-search", "--moduli", "4 9", "--gens", "1 3;2 1")
    assert code == 0 and "3" in out and "4" in out


def test_asym_nilpotent(capsys):
    assert run(capsys, "asym", "nilpotent", "--row", "0 0 0")[0] == 0
    assert run(capsys, "asym", "nilpotent", "--row", "0 1 0")[0] == 1


def test_corpus_thue_morse(capsys):
    code, out, _ = run(capsys, "corpus", "thue-morse", "--terms", "14")
    assert code == 0 and out.split()[-14:] == ["0", "1", "1", "0", "1", "0", "0", "1", "1", "0", "0", "1", "0", "1"]


def test_console_module_entry(files):
    proc = subprocess.run([sys.executable, "-m", "mahlerkit.cli", "base", "pair", "--k", "2", "--l", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
