import csv
from pathlib import Path

from rough_sheet.cli import main
from rough_sheet.noise import read_sheet
from rough_sheet.solver import read_field


def only_run_dir(tmp_path) -> Path:
    dirs = list((tmp_path / "runs").iterdir())
    assert len(dirs) == 1
    return dirs[0]


def test_noise_roundtrip(tmp_path):
    code = main(["noise", "--out", str(tmp_path / "runs"), "--nx", "64",
                 "--nt", "8", "--seed", "3"])
    assert code == 0
    root = only_run_dir(tmp_path)
    assert (root / "manifest.json").exists()
    sheet = read_sheet(str(root / "fields" / "sheet.bin"))
    assert sheet.increments.shape == (1, 8, 64)


def test_noise_rejects_bad_hurst(tmp_path):
    assert main(["noise", "--out", str(tmp_path / "runs"), "--H", "0.7"]) == 2


def test_variance_table(tmp_path, capsys):
    code = main(["variance-table", "--out", str(tmp_path / "runs"),
                 "--op", "heat", "--num", "5"])
    assert code == 0
    out = capsys.readouterr().out
    assert "fitted_exponent" in out and "theory 0.25" in out
    csv_path = only_run_dir(tmp_path) / "tables" / "variance.csv"
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "variance", "local_log_slope"]
    assert len(rows) == 6
    slopes = [float(r[2]) for r in rows[1:]]
    assert all(abs(s - 0.25) < 1e-6 for s in slopes)


def test_variance_table_bad_num(tmp_path):
    assert main(["variance-table", "--out", str(tmp_path / "runs"),
                 "--num", "0"]) == 2


def test_isometry_guards(tmp_path, capsys):
    assert main(["isometry", "--out", str(tmp_path / "runs"),
                 "--replicas", "10"]) == 2
    capsys.readouterr()
    assert main(["isometry", "--out", str(tmp_path / "runs"),
                 "--phi", "zero"]) == 0
    assert "z = 0" in capsys.readouterr().out
    assert main(["isometry", "--out", str(tmp_path / "runs"),
                 "--replicas", "100", "--phi", "nosuch"]) == 2


def test_isometry_small_run(tmp_path, capsys):
    code = main(["isometry", "--out", str(tmp_path / "runs"),
                 "--replicas", "400", "--phi", "gauss-box", "--seed", "90000"])
    out = capsys.readouterr().out
    assert code == 0, out
    assert "pass: max |z|" in out
    assert (only_run_dir(tmp_path) / "tables" / "isometry.csv").exists()


SIM_ARGS = ["simulate", "--op", "wave", "--xmin", "-3", "--xmax", "3",
            "--nx", "256", "--nt", "32", "--replicas", "3", "--seed", "17"]


def test_simulate_writes_ensemble(tmp_path):
    code = main([*SIM_ARGS, "--out", str(tmp_path / "runs")])
    assert code == 0
    root = only_run_dir(tmp_path)
    index = (root / "fields" / "index.txt").read_text().splitlines()
    assert len(index) == 3
    assert index[0].startswith("0,17,")
    fld = read_field(str(root / "fields" / "replica_00000.bin"))
    assert fld.values.shape == (1, 33, 256)
    assert fld.seed == 17


def test_simulate_deterministic_across_runs(tmp_path):
    main([*SIM_ARGS, "--out", str(tmp_path / "a")])
    main([*SIM_ARGS, "--out", str(tmp_path / "b")])
    pa = next((tmp_path / "a").iterdir()) / "fields" / "replica_00002.bin"
    pb = next((tmp_path / "b").iterdir()) / "fields" / "replica_00002.bin"
    assert pa.read_bytes() == pb.read_bytes()


def test_simulate_threads_bit_identical(tmp_path):
    main([*SIM_ARGS, "--out", str(tmp_path / "a"), "--threads", "1"])
    main([*SIM_ARGS, "--out", str(tmp_path / "b"), "--threads", "2"])
    for name in ("replica_00000.bin", "replica_00001.bin"):
        pa = next((tmp_path / "a").iterdir()) / "fields" / name
        pb = next((tmp_path / "b").iterdir()) / "fields" / name
        assert pa.read_bytes() == pb.read_bytes()


def test_simulate_rejects_drift_with_spectral(tmp_path):
    assert main(["simulate", "--out", str(tmp_path / "runs"),
                 "--drift", "sin", "--nx", "256", "--nt", "8"]) == 2


def test_simulate_rejects_bad_sigma(tmp_path):
    assert main(["simulate", "--out", str(tmp_path / "runs"),
                 "--sigma", "1,0;0,1", "--nx", "256", "--nt", "8"]) == 2


def test_holder_reports_on_ensemble(tmp_path, capsys):
    sim = ["simulate", "--op", "wave", "--xmin", "-3", "--xmax", "3",
           "--nx", "512", "--nt", "64", "--replicas", "6", "--seed", "40",
           "--out", str(tmp_path / "runs")]
    assert main(sim) == 0
    root = only_run_dir(tmp_path)
    code = main(["holder", "--ensemble", str(root), "--direction", "spatial"])
    out = capsys.readouterr().out
    assert code in (0, 1)
    assert "fitted_exponent" in out and "theoretical_exponent: 0.500000" in out
    assert (root / "charts" / "holder_spatial.svg").exists()
    with open(root / "tables" / "structure_spatial.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["lag", "value", "samples"]
    assert len(rows) > 4


def test_holder_missing_manifest(tmp_path):
    assert main(["holder", "--ensemble", str(tmp_path)]) == 2


def test_verify_only_fast_criterion(tmp_path, capsys):
    assert main(["verify", "--only", "scaling", "--quick"]) == 0
    assert "scaling: pass" in capsys.readouterr().out
    assert main(["verify", "--only", "nosuch"]) == 2


def test_config_overrides_and_validation(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("H = 0.4  # comment\nseed = 9\n")
    code = main(["noise", "--config", str(cfg), "--out",
                 str(tmp_path / "runs"), "--nx", "64", "--nt", "4"])
    assert code == 0
    manifest = (only_run_dir(tmp_path) / "manifest.json").read_text()
    assert '"H": 0.4' in manifest
    assert '"base_seed": 9' in manifest
    bad = tmp_path / "bad.cfg"
    bad.write_text("unknown_key = 1\n")
    assert main(["noise", "--config", str(bad),
                 "--out", str(tmp_path / "runs2")]) == 2


def test_flag_beats_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 9\n")
    code = main(["noise", "--config", str(cfg), "--seed", "123", "--out",
                 str(tmp_path / "runs"), "--nx", "64", "--nt", "4"])
    assert code == 0
    manifest = (only_run_dir(tmp_path) / "manifest.json").read_text()
    assert '"base_seed": 123' in manifest
