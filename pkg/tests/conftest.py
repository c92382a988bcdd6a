import json

import pytest

from maglev import PhysicalConstants, SystemParams

# reference material/trap values used throughout the suite
RHO_M = 1e4
K_A = 1e4
BP = 1e4
BPP = 1e6


@pytest.fixture(scope="session")
def constants():
    return PhysicalConstants()


def make_params(R, B0, omega_S=0.0, *, constants=None, Bpp=BPP):
    c = constants or PhysicalConstants()
    rho_mu = RHO_M * c.mu_B / (50.0 * c.amu)
    return SystemParams(rho_M=RHO_M, rho_mu=rho_mu, k_a=K_A, R=R, B0=B0,
                        Bp=BP, Bpp=Bpp, omega_S=omega_S)


@pytest.fixture(scope="session")
def params_factory():
    return make_params


@pytest.fixture()
def config_file(tmp_path, constants):
    """Write a config JSON for the reference parameters and return its path."""
    def _write(R=2e-9, B0=1e-2, omega_S=0.0, **overrides):
        cfg = {
            "rho_M": RHO_M,
            "rho_mu": RHO_M * constants.mu_B / (50.0 * constants.amu),
            "k_a": K_A, "R": R, "B0": B0, "Bp": BP, "Bpp": BPP,
            "omega_S": omega_S,
        }
        cfg.update(overrides)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(cfg), encoding="utf-8")
        return str(path)
    return _write
