import hashlib

import numpy as np
import pytest

from kdvwhitham.cli import (ConfigError, build_config, default_params, main,
                            parse_config_file, run_params)


class Args:
    def __init__(self, **kw):
        self.config = None
        self.epsilon = None
        self.times = None
        self.nmodes = None
        self.L = None
        self.dt = None
        self.nx_whitham = None
        self.precision = False
        self.long = False
        self.out = None
        self.profile = None
        self.__dict__.update(kw)


def test_default_params_follow_reference_rows():
    assert default_params(1e-1) == (2**10, 5.0, 4e-4)
    assert default_params(10**-1.5) == (2**12, 5.0, 2e-4)
    assert default_params(1e-2) == (2**14, 5.0, 5e-5)
    assert default_params(10**-2.25) == (2**16, 4.0, 2.5e-5)


def test_config_validation():
    cfg = build_config(Args(epsilon="0.1,0.01", times="0.4"))
    assert cfg["eps_list"] == [0.1, 0.01]
    with pytest.raises(ConfigError):
        build_config(Args(epsilon="0.001"))  # gated behind --long
    cfg = build_config(Args(epsilon="0.001", long=True))
    assert cfg["long"]
    with pytest.raises(ConfigError):
        build_config(Args(epsilon="2.0"))
    with pytest.raises(ConfigError):
        build_config(Args(epsilon="abc"))


def test_dt_constraint_enforced():
    cfg = build_config(Args(epsilon="0.1", dt=0.01))
    with pytest.raises(ConfigError):
        run_params(cfg, 0.1)  # dt > 1/N
    cfg = build_config(Args(epsilon="0.1"))
    N, L, dt = run_params(cfg, 0.1)
    assert dt <= 1.0 / N
    assert abs(round(0.4 / dt) * dt - 0.4) < 1e-12


def test_config_file_parsing(tmp_path):
    path = tmp_path / "cfg.txt"
    path.write_text("epsilon = 0.1\ntimes = 0.4  # snapshot\n\nnx_whitham = 40\n")
    cfg = parse_config_file(str(path))
    assert cfg == {"epsilon": "0.1", "times": "0.4", "nx_whitham": "40"}
    bad = tmp_path / "bad.txt"
    bad.write_text("epsilon 0.1\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad))
    unknown = tmp_path / "unknown.txt"
    unknown.write_text("flux_capacitor = 1\n")
    with pytest.raises(ConfigError):
        build_config(Args(config=str(unknown)))


def test_exit_code_for_invalid_config(tmp_path):
    rc = main(["run", "--epsilon", "0.002", "--out", str(tmp_path / "x")])
    assert rc == 2


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "results"
    rc = main(["run", "--epsilon", "0.1", "--times", "0.4",
               "--nx-whitham", "40", "--out", str(out)])
    assert rc == 0
    return out


def test_run_artifacts(run_dir):
    names = {p.name for p in run_dir.iterdir()}
    for expected in ("zone_t0.4.dat", "snapshot_eps0.1_t0.4.dat",
                     "diff_eps0.1_t0.4.dat", "metrics.dat", "metrics.kv",
                     "manifest.txt", "overlay_eps0.1_t0.4.svg",
                     "envelope_t0.4.dat", "edges.dat"):
        assert expected in names
    manifest = (run_dir / "manifest.txt").read_text()
    assert "FAILED" not in manifest
    listed = [l.split()[2] for l in manifest.splitlines()
              if l.startswith("artifact ")]
    assert "metrics.dat" in listed


def test_tables_round_trip(run_dir):
    data = np.loadtxt(run_dir / "zone_t0.4.dat")
    assert data.shape[1] == 6
    b1, b2, b3 = data[:, 1], data[:, 2], data[:, 3]
    assert np.all(b1[1:-1] > b2[1:-1])
    # text format preserves the doubles exactly
    rewritten = np.fromstring(" ".join(f"{v:.16e}" for v in data[:, 1]),
                              sep=" ")
    np.testing.assert_array_equal(rewritten, b1)


def test_manifest_checksums_match(run_dir):
    manifest = (run_dir / "manifest.txt").read_text()
    for line in manifest.splitlines():
        if not line.startswith("artifact "):
            continue
        _, digest, name = line.split()
        actual = hashlib.sha256((run_dir / name).read_bytes()).hexdigest()
        assert actual == digest


def test_plot_regeneration(run_dir):
    rc = main(["plot", "--from", str(run_dir)])
    assert rc == 0
    assert (run_dir / "diff_eps0.1_t0.4.svg").exists()
    rc = main(["plot", "--from", str(run_dir / "missing")])
    assert rc == 2


def test_reruns_bit_identical(tmp_path):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        rc = main(["run", "--epsilon", "0.1", "--times", "0.4",
                   "--nx-whitham", "40", "--out", str(out)])
        assert rc == 0
        outs.append({p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                     for p in out.iterdir()})
    assert outs[0] == outs[1]
