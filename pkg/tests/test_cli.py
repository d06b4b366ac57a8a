import numpy as np

from timebin_tomography.cli import main

PHASE_CFG = """
sample = qubit-phase
sample_points = 4
lengths = 200
jitters = 1e-12
methods = LS
seed = 9
"""


def _write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_sweep_command_writes_csv(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, PHASE_CFG)
    out = tmp_path / "out"
    assert main(["--config", cfg, "--out", str(out), "sweep"]) == 0
    text = (out / "sweep.csv").read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "length_m,jitter_s,method,f_min,d_max,worst_state,seconds"
    assert len(lines) == 2


def test_phase_sweep_with_svg(tmp_path):
    cfg = _write_cfg(tmp_path, """
sample = qubit-phase
sample_points = 3
lengths_log = 100, 10000, 3
jitters = 1e-12
methods = MLE
""", name="log.cfg")
    out = tmp_path / "out"
    assert main(["--config", cfg, "--out", str(out), "--format", "both", "phase-sweep"]) == 0
    assert (out / "phase_sweep.csv").exists()
    svg = (out / "phase_sweep_fmin.svg").read_text()
    assert svg.startswith("<svg")


def test_povm_and_simulate_outputs(tmp_path):
    out = tmp_path / "files"
    assert main(["--out", str(out), "povm", "--length", "300", "--jitter", "4e-12"]) == 0
    povm_lines = (out / "povm_elements.csv").read_text().strip().split("\n")
    assert len(povm_lines) == 14  # header + 13 grid instants
    assert (out / "bloch.csv").exists()

    assert main(["--out", str(out), "simulate", "--length", "300",
                 "--jitter", "1e-12", "--phi", "0.7"]) == 0
    counts = (out / "counts.csv").read_text().strip().split("\n")
    assert counts[0] == "t_seconds,n_expected,n_measured"
    assert len(counts) == 14
    expected = np.array([float(l.split(",")[1]) for l in counts[1:]])
    measured = np.array([float(l.split(",")[2]) for l in counts[1:]])
    assert np.all(expected >= 0) and np.all(measured >= 0)
    assert np.max(np.abs(expected - measured)) > 0  # jitter is active


def test_reconstruct_prints_fidelity(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "reconstruct", "--length", "500",
                 "--jitter", "1e-12", "--phi", "1.0", "--method", "LS"]) == 0
    printed = capsys.readouterr().out
    assert "rho_out" in printed
    assert "fidelity" in printed


def test_config_errors_exit_one(tmp_path, capsys):
    bad = _write_cfg(tmp_path, "lengths = abc\n")
    assert main(["--config", bad, "sweep"]) == 1
    unknown = _write_cfg(tmp_path, "fiber = 12\n", name="unknown.cfg")
    assert main(["--config", unknown, "sweep"]) == 1
    missing = str(tmp_path / "nope.cfg")
    assert main(["--config", missing, "sweep"]) == 1


def test_runtime_errors_exit_two(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    assert main(["--out", str(blocker / "sub"), "povm"]) == 2


def test_seed_and_workers_overrides(tmp_path):
    cfg = _write_cfg(tmp_path, PHASE_CFG)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["--config", cfg, "--seed", "123", "--out", str(out_a), "sweep"]) == 0
    assert main(["--config", cfg, "--seed", "123", "--workers", "2",
                 "--out", str(out_b), "sweep"]) == 0
    strip = lambda text: ["," .join(line.split(",")[:-1])
                          for line in text.strip().split("\n")]
    assert strip((out_a / "sweep.csv").read_text()) == strip((out_b / "sweep.csv").read_text())
