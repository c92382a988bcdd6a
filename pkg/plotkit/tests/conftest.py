import json
import subprocess
import sys

import pytest

CONFIG = {
    "rho_M": 1e4,
    "rho_mu": 1.116987882409631e6,
    "k_a": 1e4,
    "R": 2e-9,
    "B0": 1e-2,
    "Bp": 1e4,
    "Bpp": 1e6,
    "omega_S": 0.0,
}

SWEEP_HEADER = "B0_T,R_m,classification,max_offaxis,omega_L,omega_D,omega_I"
STATE_HEADER = "B0_T,P_bR,P_bL,P_m,P_k,P_s,entanglement,squeezing"


def run_maglev(*args):
    """Invoke the producer CLI; plotkit only consumes its file artifacts."""
    proc = subprocess.run([sys.executable, "-m", "maglev.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def config_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cfg") / "config.json"
    path.write_text(json.dumps(CONFIG), encoding="utf-8")
    return str(path)


@pytest.fixture(scope="session")
def sweep_artifacts(tmp_path_factory, config_path):
    """Full-size sweep CSV + borders JSON produced by the CLI."""
    out = tmp_path_factory.mktemp("sweep") / "sweep.csv"
    run_maglev("sweep", config_path, "--B0-min", "1e-5", "--B0-max", "1e-1",
               "--R-min", "5e-10", "--R-max", "1e-8", "--grid", "200x200",
               "--out", str(out))
    return str(out), str(out.with_suffix("")) + ".borders.json"


@pytest.fixture(scope="session")
def state_artifact(tmp_path_factory, config_path):
    """400-point state-scan CSV produced by the CLI."""
    out = tmp_path_factory.mktemp("state") / "state.csv"
    run_maglev("state", config_path, "--R", "2e-9",
               "--B0-scan", "1e-5:1e-1:400", "--out", str(out))
    return str(out)


def write_sweep_csv(path, rows):
    lines = [SWEEP_HEADER] + [",".join(str(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def write_state_csv(path, rows):
    lines = [STATE_HEADER] + [",".join(str(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)
