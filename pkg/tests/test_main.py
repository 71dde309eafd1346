import json

import pytest

from reggelab import config
from reggelab.main import main


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    yield
    config.settings = config.Settings(_env_file=None)


def records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_sixj(capsys):
    assert main(["sixj", "1", "1", "1", "1", "2", "2"]) == 0
    (record,) = records(capsys)
    assert record["type"] == "record"
    assert record["valid"] is True
    assert record["value"] == {"sign": 1, "square_num": 1, "square_den": 36}
    assert record["u"] == {"sign": 1, "square_num": 1, "square_den": 4}
    assert record["float"] == pytest.approx(1 / 6)


def test_trivial_sixj(capsys):
    assert main(["sixj", "0", "0", "0", "0", "0", "0"]) == 0
    (record,) = records(capsys)
    assert record["value"] == {"sign": 1, "square_num": 1, "square_den": 1}


def test_invalid_sixj_names_the_triads(capsys):
    assert main(["sixj", "1", "1", "1", "1", "2", "1"]) == 0
    (record,) = records(capsys)
    assert record["valid"] is False
    assert record["failing_triads"] == ["adf", "bcf"]
    assert record["value"]["sign"] == 0


def test_malformed_labels():
    assert main(["sixj", "1", "1", "1"]) == 2
    assert main(["sixj", "1", "1", "1", "1", "2", "x"]) == 2
    assert main(["sixj", "-1", "1", "1", "1", "2", "2"]) == 2


def test_u(capsys):
    assert main(["u", "1", "1", "1", "1", "2", "2"]) == 0
    (record,) = records(capsys)
    assert record["u"] == {"sign": 1, "square_num": 1, "square_den": 4}


def test_orbit(capsys):
    assert main(["orbit", "4", "2", "2", "2", "4", "2"]) == 0
    (record,) = records(capsys)
    assert [1, 3, 3, 3, 4, 2] in record["orbit"]
    assert record["constant"] is True
    assert record["size"] == len(record["orbit"])


def test_orbit_of_invalid_labels():
    assert main(["orbit", "1", "1", "1", "1", "2", "1"]) == 2


def test_verify(capsys, tmp_path):
    path = tmp_path / "regge.jsonl"
    assert main(["verify", "regge", "--max", "3", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    (summary,) = [json.loads(line) for line in out.splitlines()]
    assert summary["type"] == "summary"
    assert summary["passed"] is True
    assert summary["failures"] == 0
    assert summary["config"]["max_label"] == 3
    assert path.read_text() == out


def test_verify_is_deterministic(capsys):
    assert main(["verify", "cm", "--samples", "5", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "cm", "--samples", "5", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first


def test_unknown_suite():
    assert main(["verify", "nothing"]) == 2


def test_settings_file(tmp_path, capsys):
    (tmp_path / ".env").write_text("REGGELAB_SEED=42\n")
    assert main(["verify", "cm", "--samples", "1", "--root", str(tmp_path)]) == 0
    (summary,) = records(capsys)
    assert summary["config"]["seed"] == 42


def test_tetra_cm(capsys):
    assert main(["tetra", "cm", "--exact", "1", "1", "1", "1", "1", "1"]) == 0
    (record,) = records(capsys)
    assert record["det"] == "4/1"
    assert record["euclidean"] is True


def test_tetra_regge(capsys):
    assert main(["tetra", "regge", "--exact", "2", "3", "6", "7", "4", "5"]) == 0
    (record,) = records(capsys)
    assert record["regge"][:4] == ["7/1", "6/1", "3/1", "2/1"]
    assert record["det"] == record["regge_det"]


def test_tetra_realize(capsys):
    assert main(["tetra", "realize", "1", "1", "1", "1", "1", "1"]) == 0
    (record,) = records(capsys)
    assert len(record["vectors"]) == 3


def test_tetra_rejects_bad_lengths():
    assert main(["tetra", "cm", "1", "1", "1", "1", "1", "one"]) == 2
    assert main(["tetra", "realize", "1", "1", "1", "1", "2", "2"]) == 2


def test_pvi_solve(capsys):
    args = ["pvi", "solve", "--t0", "3", "--y0", "2", "--y1", "0.5", "--theta", "0.5", "0.3", "0.2", "0.7"]
    assert main(args + ["--order", "8"]) == 0
    (record,) = records(capsys)
    assert len(record["coeffs"]) == 9
    assert record["coeffs"][0] == [2.0, 0.0]


def test_pvi_okamoto(capsys):
    args = ["pvi", "okamoto", "--t0", "3", "--y0", "2", "--y1", "0.5", "--theta", "0.5", "0.3", "0.2", "0.7"]
    assert main(args + ["--precision-bits", "96"]) == 0
    (record,) = records(capsys)
    assert record["failures"] == []
    assert [t[0] for t in record["okamoto_theta"]] == pytest.approx([-0.35, -0.55, -0.65, -0.15])


def test_pvi_singular_data():
    args = ["pvi", "solve", "--t0", "1", "--y0", "2", "--y1", "0.5", "--theta", "0", "0", "0", "1"]
    assert main(args) == 2


def test_fuchs_okamoto(capsys):
    assert main(["fuchs", "okamoto", "--exact", "--vectors", "2", "0", "0", "0", "3", "0", "0", "0", "6"]) == 0
    (record,) = records(capsys)
    assert record["failures"] == []
    assert record["coords"]["theta"] == ["2", "3", "6", "7"]
    assert record["okamoto_coords"]["theta"] == ["-7", "-6", "-3", "-2"]
    assert record["okamoto_lengths"]["e"] == {"sign": 1, "square_num": 13, "square_den": 1}


def test_fuchs_reconstruct(capsys):
    assert main(["fuchs", "reconstruct", "--random", "--seed", "5"]) == 0
    (record,) = records(capsys)
    assert set(record["reconstructed"]) == {"A1", "A2", "A3", "A4"}


def test_fuchs_needs_a_source():
    assert main(["fuchs", "coords"]) == 2


@pytest.mark.parametrize("flags", [["--precision-bits", "0"], ["--precision-bits", "59"], ["--workers", "0"]])
def test_unusable_bounds_are_usage_errors(flags):
    args = ["pvi", "okamoto", "--t0", "3", "--y0", "2", "--y1", "0.5", "--theta", "0.5", "0.3", "0.2", "0.7"]
    assert main(args + flags) == 2


def test_pvi_okamoto_fails_when_the_residual_is_too_large(capsys, tmp_path):
    (tmp_path / ".env").write_text("REGGELAB_TOLERANCE=0\n")
    args = ["pvi", "okamoto", "--t0", "3", "--y0", "2", "--y1", "0.5", "--theta", "0.5", "0.3", "0.2", "0.7"]
    assert main(args + ["--root", str(tmp_path)]) == 1
    (record,) = records(capsys)
    assert record["failures"]


def test_unexpected_errors_are_reported(capsys, monkeypatch):
    def broken(labels):
        raise RuntimeError("lost track of a triad")

    monkeypatch.setattr("reggelab.racah.sixj", broken)
    assert main(["sixj", "1", "1", "1", "1", "2", "2"]) == 1
    (record,) = records(capsys)
    assert record == {"type": "error", "command": "sixj", "error": "RuntimeError", "message": "lost track of a triad"}
