import json

from kempeflip.cli import main


def test_flags_and_config_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"trials": 7, "seed": 3}))
    assert main(["couple", "--trials", "100", "--seed", "9", "--config", str(cfg),
                 "--out", str(tmp_path / "run")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["metadata"]["config"]["trials"] == 7
    assert out["metadata"]["seed"] == 3
    assert (tmp_path / "run.csv").read_text().count("\n") == 8


def test_preset_and_k_flags(capsys):
    assert main(["construct", "--graph", "G2:4", "--k", "8", "--preset", "cm_eq12"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["summary"]["states_sing_bad_good"] == [0, 2, 0]


def test_errors_exit_with_status_two(capsys):
    assert main(["stages", "--graph", "G2:3"]) == 2
    assert "even" in capsys.readouterr().err
    assert main(["construct", "--preset", "missing"]) == 2
