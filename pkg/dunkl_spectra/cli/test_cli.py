import json
import sys

import numpy as np
import pytest

from ..config import OutputPaths
from ..errors import DomainError
from . import verify as verify_module
from .main import main
from .run import RunConfig, Runner, parse_pairs

# the package re-exports the run function under the module name
run_module = sys.modules[Runner.__module__]


def run_to_file(tmp_path, command, *pairs, name="out.json"):
    path = tmp_path / name
    config = RunConfig.from_pairs(command, list(pairs) + [f"output={path}"])
    status = Runner().run(config)
    return status, path


def test_parse_pairs():
    assert parse_pairs(["sigma=1", "u=0.5", "sigma=2"]) == {"sigma": "2", "u": "0.5"}
    with pytest.raises(DomainError):
        parse_pairs(["sigma"])
    with pytest.raises(DomainError):
        parse_pairs(["=1"])


def test_unknown_keys_and_commands_are_rejected():
    with pytest.raises(DomainError, match="Unknown parameters"):
        RunConfig.from_pairs("coeffs", ["sigma=1", "colour=red"])
    with pytest.raises(DomainError, match="Unknown command"):
        RunConfig("plot")
    with pytest.raises(DomainError):
        RunConfig.from_pairs("coeffs", ["format=xml"])


def test_sweep_expansion():
    config = RunConfig.from_pairs("coeffs", ["sigma=0.5,1", "u=0.25,0.5,0.75", "N=8"])
    sets = config.parameter_sets()
    assert len(sets) == 6
    assert sets[0] == {"N": 8, "sigma": 0.5, "u": 0.25}
    assert sets[-1] == {"N": 8, "sigma": 1.0, "u": 0.75}
    with pytest.raises(DomainError):
        RunConfig.from_pairs("coeffs", ["N=8.5"]).parameter_sets()


def test_coeffs_json(tmp_path):
    status, path = run_to_file(tmp_path, "coeffs", "family=c", "sigma=1", "u=0.5", "N=8")
    data = json.loads(path.read_text())
    assert status == 0
    assert data["schema"] == 1
    assert data["method"] == "closed_form"
    assert np.array(data["entries"]).shape == (8, 8)


def test_coeffs_csv(tmp_path):
    path = tmp_path / "c.csv"
    config = RunConfig.from_pairs("coeffs", ["family=c", "sigma=1", "u=0.5", "s=1", "N=64",
                                             "method=closed", "format=csv", f"output={path}"])
    assert Runner().run(config) == 0
    table = np.loadtxt(path, delimiter=",")
    assert table.shape == (64, 64)
    assert path.read_text().startswith("# schema: 1")


def test_csv_needs_a_path():
    config = RunConfig.from_pairs("coeffs", ["sigma=1", "u=0.5", "N=4", "format=csv"])
    with pytest.raises(DomainError):
        Runner().run(config)


def test_regions_to_stdout(capsys):
    config = RunConfig.from_pairs("regions", ["set=J1", "sigma=0.5", "tau=0.4"])
    assert Runner().run(config) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["member"] is True
    assert data["region"] == "J1"
    assert all("margin" in clause for clause in data["clauses"])


def test_regions_theorem_hypotheses(capsys):
    config = RunConfig.from_pairs("regions", ["set=V", "sigma=0.5", "tau=0.5", "theta=0.5", "u=0.5"])
    Runner().run(config)
    data = json.loads(capsys.readouterr().out)
    assert data["hypotheses"]["ok"] is True


def test_spectrum_with_sandwich(tmp_path):
    status, path = run_to_file(tmp_path, "spectrum", "kind=U", "sigma=1", "u=0.5", "xi=1", "s=1", "N=64")
    data = json.loads(path.read_text())
    assert status == 0, data["sandwich"]["violations"]
    assert len(data["spectrum"]["eigenvalues"]) == 64
    assert data["sandwich"]["ok"] is True
    assert data["operator"]["kind"] == "U"


def test_identical_configs_give_identical_bytes(tmp_path):
    pairs = ("kind=V", "sigma=0.5", "tau=0.5", "theta=0.5", "u=0.5", "xi=1", "eta=0.3", "N=16")
    _, first = run_to_file(tmp_path, "spectrum", *pairs, name="a.json")
    _, second = run_to_file(tmp_path, "spectrum", *pairs, name="b.json")
    assert first.read_bytes() == second.read_bytes()


def test_debug_adds_timings(tmp_path):
    path = tmp_path / "debug.json"
    config = RunConfig.from_pairs("regions", ["set=J1", "sigma=0.5", "tau=0.4", f"output={path}"])
    Runner(debug=True).run(config)
    assert "seconds" in json.loads(path.read_text())


def test_checkpointed_sweep(tmp_path, monkeypatch):
    monkeypatch.setattr(run_module, "OUTPUT_PATHS", OutputPaths(output_root=tmp_path))
    config = RunConfig.from_pairs("coeffs", ["sigma=0.5,1", "u=0.5", "N=4", "checkpoint=1"])
    assert Runner().run(config) == 0
    files = sorted((tmp_path / "checkpoints" / "coeffs").glob("*.json"))
    assert len(files) == 2

    files[0].write_text("{}")
    Runner().run(config)
    assert files[0].read_text() == "{}", "existing checkpoints are skipped"


def test_witten_command(tmp_path):
    status, path = run_to_file(tmp_path, "witten", "kappa=1", "u=0.5", "length=1", "N=16")
    data = json.loads(path.read_text())
    assert status == 0
    assert abs(data["spectra"]["delta_r/row1"]["eigenvalues"][0]) <= 1e-8
    assert data["model"]["length"] == 1
    assert "pairing" not in data


def test_bounds_command(tmp_path):
    status, path = run_to_file(tmp_path, "bounds", "constant=C0", "t=0.5", "p_max=1000")
    fit = json.loads(path.read_text())["fit"]
    assert fit["constant_name"] == "C0"
    assert 0 < fit["fitted_value"] < 1


def test_verify_all_single_criterion(tmp_path):
    status, path = run_to_file(tmp_path, "verify-all", "only=1")
    data = json.loads(path.read_text())
    assert status == 0
    assert data["ok"] is True
    assert [c["number"] for c in data["criteria"]] == [1]


def test_failed_verification_exits_one(tmp_path, monkeypatch):
    monkeypatch.setitem(verify_module.CRITERIA, 99, ("always fails", lambda: (False, {})))
    assert main(["verify-all", "only=99", f"output={tmp_path / 'v.json'}"]) == 1


@pytest.mark.parametrize("argv, code", [
    (["spectrum", "kind=U", "sigma=-1", "xi=1", "N=8"], 2),
    (["coeffs", "sigma=1", "shade=3"], 2),
    (["spectrum", "kind=V", "sigma=0", "tau=0.6", "theta=0", "u=0.4", "xi=1", "N=8"], 4),
    (["regions", "set=J9", "sigma=0.5", "tau=0.4"], 2),
])
def test_exit_codes(argv, code):
    assert main(argv) == code


@pytest.mark.slow
def test_verify_all_passes():
    summary = verify_module.verify_all()
    assert summary.ok, f"failed criteria: {summary.failed}"
    print(f"\n✓ {len(summary.results)} acceptance criteria passed")
