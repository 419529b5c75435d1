import json
import math

import pytest

from sjslab.cli import (EXIT_ACCURACY, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, MODES_CSV_COLUMNS,
                        RunConfig, main, run)


def read_outputs(path):
    return {p.name: p.read_bytes() for p in sorted(path.iterdir())}


def test_config_round_trip():
    cfg = RunConfig(geometry="torus", period=2.0, tau_prime=0.3, formats=["json"])
    assert RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_modes_single_row(tmp_path):
    assert main(["modes", "--levels", "0", "--out", str(tmp_path), "--format", "csv"]) == EXIT_OK
    lines = (tmp_path / "modes.csv").read_text().strip().split("\n")
    assert lines[0].split(",") == list(MODES_CSV_COLUMNS)
    assert len(lines) == 2
    assert lines[1].split(",")[1] == "1"


def test_hadamard_divergent_sphere(tmp_path):
    code = main(["hadamard", "--radius", "1", "--mass", "2", "--tau", repr(math.pi / 2),
                 "--levels", "1000", "--out", str(tmp_path)])
    assert code == EXIT_OK
    doc = json.loads((tmp_path / "hadamard.json").read_text())
    for key in ("nec_C", "nec_S"):
        assert doc[key]["verdict"]["outcome"] == "DIVERGENCE_INDICATED"
        assert 1.8 <= doc[key]["growth_ratio"] <= 2.2
    assert doc["config"]["mass"] == 2.0
    assert "asymptotic_ratio" in doc["sphere"]
    assert (tmp_path / "hadamard_C.csv").exists()


def test_hadamard_exact_zero(capsys):
    assert main(["hadamard", "--mass", "1", "--tau", repr(math.pi / 2), "--levels", "200",
                 "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["nec_C"]["verdict"]["outcome"] == "EXACT_ZERO"
    assert doc["nec_S"]["verdict"]["outcome"] == "EXACT_ZERO"


def test_hadamard_torus(capsys):
    assert main(["hadamard", "--geometry", "torus", "--period", "1", "--tau", "0.25",
                 "--levels", "200", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["torus"]["verdict"]["evidence"]["tail_sup_axis"] == 0.0


def test_custom_geometry(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"levels": [{"omega": 2.0, "multiplicity": 1},
                                           {"omega": 1.5, "multiplicity": 2}]}))
    assert main(["spectrum", "--geometry", "custom", "--custom-file", str(spec),
                 "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [lv["omega"] for lv in doc["spectrum"]["levels"]] == [1.5, 2.0]


def test_config_file(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"tau": 1.0, "tau_prime": 0.5, "levels": 300}))
    out = tmp_path / "out"
    assert main(["disjoint", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    doc = json.loads((out / "disjoint.json").read_text())
    assert doc["sj_sj"]["verdict"]["outcome"] == "DIVERGENCE_INDICATED"
    assert (out / "disjoint_sj_sj.csv").exists()


def test_exit_codes(tmp_path, monkeypatch):
    assert main(["modes", "--mass", "-1"]) == EXIT_VALIDATION
    assert main(["modes", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["modes", "--config", str(bad)]) == EXIT_USAGE
    bad.write_text(json.dumps({"nonsense": 1}))
    assert main(["modes", "--config", str(bad)]) == EXIT_USAGE
    assert main(["modes", "--format", "xml"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
    import sjslab.smearing as smearing
    monkeypatch.setattr(smearing, "N_MAX", 16)
    assert run("limit", RunConfig(taus=[2.0, 3.0])) == EXIT_ACCURACY


@pytest.mark.parametrize("sub,extra", [
    ("spectrum", ["--levels", "30"]),
    ("modes", ["--levels", "30"]),
    ("hadamard", ["--levels", "200"]),
    ("disjoint", ["--levels", "200", "--tau-prime", "0.5"]),
    ("limit", []),
    ("oracle", ["--oracle-n", "48"]),
    ("scan", ["--levels", "300", "--tau-step", "0.1"]),
])
def test_determinism(tmp_path, sub, extra):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([sub, *extra, "--out", str(a)]) == EXIT_OK
    assert main([sub, *extra, "--out", str(b)]) == EXIT_OK
    out_a = read_outputs(a)
    assert out_a and out_a == read_outputs(b)
