import json

import pytest

from twotrunc.cli import main
from twotrunc.report import ScriptExecutionError, run, to_json, to_text
from twotrunc.verify import verify

PENTAGON = "cube 2\ntruncate x1+ x2+\n"


def write(tmp_path, text, name="s.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_pentagon():
    rep = run(PENTAGON)
    assert rep["f_vector"] == [5, 5, 1]
    assert rep["h_vector"] == [1, 3, 1]
    assert rep["gamma_vector"] == [1, 1]
    assert rep["delta"]["vertices"] == ["w1"]
    assert rep["delta"]["maximal_faces"] == [["w1"]]
    assert rep["passed"]


def test_run_cube3_edge():
    rep = run("cube 3\ntruncate x1+ x2+\n")
    assert rep["gamma_vector"] == [1, 1]
    assert rep["delta"]["maximal_faces"] == [["w1"]]


def test_run_cube_only():
    rep = run("cube 4\n")
    assert rep["gamma_vector"] == [1, 0, 0]
    assert rep["delta"] == {"vertices": [], "maximal_faces": [], "f_polynomial": [1], "components": 0}
    assert rep["passed"]


def test_run_all_faces_listing():
    rep = run(PENTAGON, faces="all")
    assert len(rep["faces"]) == 11
    assert rep["faces"][0]["facets"] == [] and rep["faces"][0]["gamma_vector"] == [1, 1]
    assert "face {x1+,s1}" in to_text(rep) or "face {x1+,x2-}" in to_text(rep)


def test_step_errors_name_the_step():
    with pytest.raises(ScriptExecutionError, match=r"step 2 \(truncate x1\+ x2\+\)"):
        run("cube 3\ntruncate x1+ x2+\ntruncate x1+ x2+\n")
    with pytest.raises(ScriptExecutionError, match="step 1"):
        run("cube 2\ntruncate s1 x1+\n")


def test_report_is_deterministic():
    text = "cube 4\ntruncate x1+ x2+\ntruncate s1 x3+\ntruncate x4- s2\n"
    a, b = to_json(run(text, faces="all")), to_json(run(text, faces="all"))
    assert a == b
    assert to_text(run(text)) == to_text(run(text))


def test_cli_run(tmp_path, capsys):
    path = write(tmp_path, PENTAGON)
    assert main(["run", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["gamma_vector"] == [1, 1]
    assert main(["run", path, "--format", "text"]) == 0
    assert "result: PASS" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["run", write(tmp_path, "truncate x1+ x2+\n")]) == 2
    assert "missing cube directive" in capsys.readouterr().err
    assert main(["run", write(tmp_path, "cube 2\ntruncate x1+ x1-\n")]) == 2
    assert main(["run", str(tmp_path / "absent.txt")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert main(["run", write(tmp_path, PENTAGON), "--inject-fault"]) == 1


def test_cli_ffk(capsys):
    assert main(["ffk", "--gamma", "1,3,2", "--dim", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]
    assert main(["ffk", "--gamma", "1,1,1", "--dim", "4"]) == 1


def test_cli_verify(capsys):
    assert main(["verify", "--dim", "2", "--steps", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and out["polytopes_checked"] == 1 + 4 + 4 * 5
    assert main(["verify", "--dim", "4-5", "--steps", "3", "--mode", "random", "--count", "3", "--seed", "1"]) == 0
    assert main(["verify", "--dim", "7", "--steps", "2"]) == 2


def test_verify_exhaustive_dim2():
    s = verify((2,), 3)
    assert s.ok and s.sequences == 4 * 5 * 6
    assert s.passes["gamma_equals_f_delta"] == s.nodes


def test_verify_random_is_seeded():
    a = verify((4,), 6, "random", 8, seed=3).as_dict()
    b = verify((4,), 6, "random", 8, seed=3).as_dict()
    assert a == b


def test_fault_injection_is_reported_and_reproducible(tmp_path, capsys):
    s = verify((2, 3), 2, fault=True)
    assert not s.ok
    c = s.failures[0]
    assert "gamma_equals_f_delta" in c.invariants
    rep = run(c.script(), fault=True)
    assert not rep["passed"] and not rep["checks"]["gamma_equals_f_delta"]["pass"]
    assert run(c.script())["passed"]
    assert main(["verify", "--dim", "2", "--steps", "1", "--inject-fault"]) == 1
    assert "counterexample" in capsys.readouterr().err
