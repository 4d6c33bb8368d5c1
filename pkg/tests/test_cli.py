"""Command-line interface: config handling, outputs, determinism."""

import json
import os

import numpy as np
import pytest

from netdefend import Graph, load_edge_list
from netdefend.cli import main
from netdefend.config import PRESETS, beta_range, load_config, parse_beta_grid


SMALL_TOML = """
[network]
model = "ba"
n = 80
mean_degree = 4.0

[experiment]
alpha = 0.3
beta_grid = [0.0, 1.0, 2.0]
k_ca = 1
master_seed = 9
load_convention = "endpoint"

[realizations]
network = 2
attack = 2

[crossover]
bracket = [0.0, 2.5]
tol = 0.2

[output]
workers = 1
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.toml"
    path.write_text(SMALL_TOML)
    return str(path)


def read_summary(outdir):
    with open(os.path.join(outdir, "summary.json")) as fh:
        return json.load(fh)


class TestConfig:
    def test_parse_beta_grid_forms(self):
        assert parse_beta_grid("0:1:0.5") == (0.0, 0.5, 1.0)
        assert parse_beta_grid("0.3,0.7") == (0.3, 0.7)
        assert beta_range(0.0, 2.5, 0.1)[-1] == 2.5
        assert len(beta_range(0.0, 2.5, 0.1)) == 26

    def test_presets_are_valid(self):
        for name in PRESETS:
            if name in ("fig3", "fig4"):
                continue  # these need a user-supplied dataset path
            cfg = load_config(preset=name)
            cfg.validate()

    def test_validation_names_offending_field(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text(
            SMALL_TOML.replace("beta_grid = [0.0, 1.0, 2.0]", "beta_grid = [2.0, 1.0]")
        )
        with pytest.raises(ValueError, match="beta_grid"):
            load_config(path=str(bad)).validate()

    def test_unknown_key_is_rejected(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text(SMALL_TOML + "\n[experiment2]\nx = 1\n")
        with pytest.raises(ValueError, match="experiment2"):
            load_config(path=str(bad))

    def test_config_echo_roundtrips(self, small_config):
        cfg = load_config(path=small_config)
        echo = cfg.to_dict()
        assert echo["experiment"]["alpha"] == 0.3
        assert echo["realizations"] == {"network": 2, "attack": 2}
        assert echo["network"] == {"model": "ba", "n": 80, "mean_degree": 4.0}


class TestSweepCommand:
    def test_writes_records_and_summary(self, small_config, tmp_path, capsys):
        out = str(tmp_path / "out")
        code = main(["sweep", "--config", small_config, "--output", out])
        assert code == 0
        captured = capsys.readouterr()
        assert captured.err  # progress goes to stderr
        header = open(os.path.join(out, "records.csv")).readline().strip()
        assert header == "beta,strategy,network_seed,attack_seed,G,B,E,rho_g,rho_b"
        summary = read_summary(out)
        assert set(summary) == {
            "config_echo",
            "crossovers",
            "efficiency_argmin",
            "runtime_seconds",
        }
        assert set(summary["crossovers"]) == {"G", "B"}
        assert set(summary["efficiency_argmin"]) == {"G", "B"}
        assert summary["config_echo"]["experiment"]["master_seed"] == 9

    def test_identical_runs_byte_identical(self, small_config, tmp_path, capsys):
        out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
        assert main(["sweep", "--config", small_config, "--output", out1, "--quiet"]) == 0
        assert main(["sweep", "--config", small_config, "--output", out2, "--quiet"]) == 0
        rec1 = open(os.path.join(out1, "records.csv"), "rb").read()
        rec2 = open(os.path.join(out2, "records.csv"), "rb").read()
        assert rec1 == rec2
        s1, s2 = read_summary(out1), read_summary(out2)
        s1.pop("runtime_seconds"), s2.pop("runtime_seconds")
        s1["config_echo"]["output"].pop("directory")
        s2["config_echo"]["output"].pop("directory")
        assert s1 == s2

    def test_worker_count_invariance(self, small_config, tmp_path, capsys):
        out1, out2 = str(tmp_path / "w1"), str(tmp_path / "w2")
        assert main(
            ["sweep", "--config", small_config, "--output", out1, "--workers", "1", "--quiet"]
        ) == 0
        assert main(
            ["sweep", "--config", small_config, "--output", out2, "--workers", "2", "--quiet"]
        ) == 0
        rec1 = open(os.path.join(out1, "records.csv"), "rb").read()
        rec2 = open(os.path.join(out2, "records.csv"), "rb").read()
        assert rec1 == rec2
        s1, s2 = read_summary(out1), read_summary(out2)
        assert s1["crossovers"] == s2["crossovers"]
        assert s1["efficiency_argmin"] == s2["efficiency_argmin"]

    def test_flag_overrides_config(self, small_config, tmp_path, capsys):
        out = str(tmp_path / "out")
        code = main(
            ["sweep", "--config", small_config, "--output", out,
             "--master-seed", "123", "--beta-grid", "0.0,1.5", "--quiet"]
        )
        assert code == 0
        summary = read_summary(out)
        assert summary["config_echo"]["experiment"]["master_seed"] == 123
        assert summary["config_echo"]["experiment"]["beta_grid"] == [0.0, 1.5]

    def test_validation_failure_names_field_and_writes_nothing(
        self, small_config, tmp_path, capsys
    ):
        out = str(tmp_path / "nope")
        code = main(
            ["sweep", "--config", small_config, "--output", out, "--alpha", "-1"]
        )
        assert code == 2
        assert "alpha" in capsys.readouterr().err
        assert not os.path.exists(out)

    def test_descending_beta_grid_is_named(self, small_config, tmp_path, capsys):
        code = main(
            ["sweep", "--config", small_config, "--beta-grid", "2.0,1.0",
             "--output", str(tmp_path / "x")]
        )
        assert code == 2
        assert "beta_grid" in capsys.readouterr().err

    def test_no_config_at_all_fails(self, capsys):
        assert main(["sweep"]) == 2
        assert "config" in capsys.readouterr().err


class TestRealnetCommand:
    def test_defaults_and_run(self, tmp_path, capsys):
        net = tmp_path / "net.txt"
        assert main(
            ["gen", "--model", "ba", "--n", "70", "--mean-degree", "4",
             "--seed", "2", "--output", str(net)]
        ) == 0
        out = str(tmp_path / "out")
        code = main(
            ["realnet", str(net), "--beta-grid", "0.0,1.0", "--tol", "0.3",
             "--output", out, "--quiet"]
        )
        assert code == 0
        summary = read_summary(out)
        assert summary["config_echo"]["experiment"]["k_ca"] == 10
        assert summary["config_echo"]["realizations"] == {"network": 1, "attack": 10}
        assert summary["config_echo"]["network"] == {"path": str(net)}

    def test_missing_file_no_partial_output(self, tmp_path, capsys):
        out = str(tmp_path / "out")
        code = main(["realnet", str(tmp_path / "ghost.txt"), "--output", out])
        assert code == 2
        assert "network.path" in capsys.readouterr().err
        assert not os.path.exists(out)


class TestTrendsCommand:
    def test_series_csv(self, tmp_path, capsys):
        out = str(tmp_path / "out")
        code = main(
            ["trends", "--axis", "N", "--values", "60,90",
             "--model", "ba", "--n", "60", "--mean-degree", "4",
             "--alpha", "0.3", "--beta-grid", "0,1,2",
             "--load-convention", "endpoint",
             "--realizations-network", "3", "--master-seed", "4",
             "--tol", "0.2", "--output", out, "--workers", "1", "--quiet"]
        )
        assert code == 0
        lines = open(os.path.join(out, "trends.csv")).read().splitlines()
        assert lines[0] == "axis,value,beta_star,stderr"
        assert len(lines) == 3
        assert lines[1].startswith("N,60,") and lines[2].startswith("N,90,")
        summary = read_summary(out)
        assert summary["axis"] == "N"
        assert len(summary["series"]) == 2

    def test_empty_values_rejected(self, capsys):
        assert main(["trends", "--axis", "N", "--values", ",", "--preset", "fig2"]) == 2
        assert "values" in capsys.readouterr().err

    def test_bad_axis_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            main(["trends", "--axis", "voltage", "--values", "1", "--preset", "fig2"])


class TestGenCommand:
    def test_deterministic_canonical_output(self, tmp_path, capsys):
        a, b = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
        for path in (a, b):
            assert main(
                ["gen", "--model", "er", "--n", "50", "--mean-degree", "3",
                 "--seed", "7", "--output", path]
            ) == 0
        assert open(a, "rb").read() == open(b, "rb").read()
        g = load_edge_list(a)
        assert g.to_canonical_text() == open(a).read()

    def test_stdout_matches_file(self, tmp_path, capsys):
        path = str(tmp_path / "g.txt")
        main(["gen", "--model", "ba", "--n", "20", "--mean-degree", "2",
              "--seed", "1", "--output", path])
        main(["gen", "--model", "ba", "--n", "20", "--mean-degree", "2", "--seed", "1"])
        assert capsys.readouterr().out == open(path).read()

    def test_invalid_parameters_fail(self, capsys):
        assert main(["gen", "--model", "ba", "--n", "20", "--mean-degree", "3"]) == 2
        assert "mean_degree" in capsys.readouterr().err


class TestLoadCheckCommand:
    def test_verifies_against_oracle(self, tmp_path, capsys):
        net = tmp_path / "net.txt"
        main(["gen", "--model", "ba", "--n", "40", "--mean-degree", "4",
              "--seed", "3", "--output", str(net)])
        capsys.readouterr()
        for convention in ("count", "fractional", "endpoint"):
            assert main(["load-check", str(net), "--convention", convention]) == 0
            captured = capsys.readouterr()
            assert "verified 40 loads" in captured.err
            assert len(captured.out.splitlines()) == 40

    def test_size_guard(self, tmp_path, capsys):
        net = tmp_path / "big.txt"
        main(["gen", "--model", "ba", "--n", "300", "--mean-degree", "2",
              "--seed", "0", "--output", str(net)])
        assert main(["load-check", str(net)]) == 2
        assert "300" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["load-check", str(tmp_path / "none.txt")]) == 2
