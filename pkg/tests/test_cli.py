import csv
import json

import numpy as np
import pytest

from eigendesign.cli import EXIT_CERTIFICATE, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, main, parse_prior
from eigendesign.documents import DesignDocument, write_matrix
from eigendesign.utils.errors import MatrixFormatError
from eigendesign.utils.rng import SEED_ENV


@pytest.fixture
def prior_file(tmp_path, staircase_t):
    path = tmp_path / "prior.csv"
    write_matrix(path, np.diag(staircase_t))
    return path


def run_design(prior, out, k=2, criterion="d-opt"):
    return main(["-q", "design", "--input", str(prior), "--k", str(k), "--criterion", criterion, "--output", str(out)])


class TestDesign:
    def test_staircase_prior(self, prior_file, tmp_path, capsys):
        out = tmp_path / "design.json"
        assert run_design(prior_file, out) == EXIT_OK
        doc = DesignDocument.load(out)
        assert np.allclose(doc.eigenvalues_after, [1.1, 1.3, 2.05, 2.05, 3.0], atol=1e-10)
        assert "eigenvalues_after=" in capsys.readouterr().out

    def test_custom_criterion(self, prior_file, tmp_path):
        descriptor = tmp_path / "harmonic.json"
        descriptor.write_text(json.dumps({"name": "harmonic", "kind": "power-sum", "exponent": -1}))
        out = tmp_path / "design.json"
        assert run_design(prior_file, out, criterion=f"custom:{descriptor}") == EXIT_OK
        assert DesignDocument.load(out).criterion == f"custom:{descriptor}"
        verify = ["-q", "verify", "--input", str(prior_file), "--design", str(out), "--samples", "50"]
        assert main(verify) == EXIT_OK

    def test_infeasible(self, tmp_path):
        prior = tmp_path / "zero.csv"
        write_matrix(prior, np.zeros((3, 3)))
        assert run_design(prior, tmp_path / "d.json", criterion="a-opt") == EXIT_INFEASIBLE

    def test_bad_matrix(self, tmp_path):
        prior = tmp_path / "bad.csv"
        prior.write_text("1,2\n3,4\n")
        assert run_design(prior, tmp_path / "d.json") == EXIT_INPUT

    def test_missing_file(self, tmp_path):
        assert run_design(tmp_path / "nope.csv", tmp_path / "d.json") == EXIT_INPUT

    def test_unknown_criterion(self, prior_file, tmp_path):
        assert run_design(prior_file, tmp_path / "d.json", criterion="g-opt") == EXIT_INPUT

    def test_usage(self):
        assert main(["design", "--k", "2"]) == EXIT_INPUT
        assert main([]) == EXIT_INPUT


class TestVerify:
    def test_round_trip(self, prior_file, tmp_path, capsys):
        out = tmp_path / "design.json"
        run_design(prior_file, out)
        code = main(["-q", "verify", "--input", str(prior_file), "--design", str(out), "--samples", "500"])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "weyl_ok=True" in printed
        assert "sampled_better_designs=0" in printed

    def test_zero_design_fails(self, prior_file, tmp_path, capsys):
        out = tmp_path / "design.json"
        run_design(prior_file, out)
        doc = DesignDocument.load(out)
        doc.X = np.zeros((5, 2)).tolist()
        doc.dump(out)
        code = main(["-q", "verify", "--input", str(prior_file), "--design", str(out), "--samples", "20"])
        assert code == EXIT_CERTIFICATE
        assert "weyl_ok=True" in capsys.readouterr().out

    def test_dimension_mismatch(self, prior_file, tmp_path):
        other = tmp_path / "small.csv"
        write_matrix(other, np.eye(2))
        out = tmp_path / "design.json"
        run_design(prior_file, out)
        assert main(["-q", "verify", "--input", str(other), "--design", str(out)]) == EXIT_INPUT


class TestDemo2d:
    def test_flat_prior(self, tmp_path, capsys):
        svg, csv_path = tmp_path / "d.svg", tmp_path / "d.csv"
        args = ["demo2d", "--prior", "", "--k", "3", "--criterion", "a-opt"]
        code = main(args + ["--svg", str(svg), "--csv", str(csv_path)])
        assert code == EXIT_OK
        assert svg.read_text(encoding="utf8").startswith("<svg")
        assert csv_path.read_text(encoding="utf8").splitlines()[0] == "x,y,multiplicity"
        assert "objective=1.33333333333" in capsys.readouterr().out

    def test_closed_form(self, capsys):
        assert main(["demo2d", "--prior", "1,0;0,1", "--k", "3", "--closed-form"]) == EXIT_OK
        assert capsys.readouterr().out.count("point ") == 3

    def test_repeated_vectors(self, capsys):
        assert main(["demo2d", "--prior", "1,0", "--k", "3", "--criterion", "a-opt"]) == EXIT_OK
        assert "point" in capsys.readouterr().out

    def test_bad_prior(self):
        assert main(["demo2d", "--prior", "1,0,3", "--k", "1"]) == EXIT_INPUT
        assert main(["demo2d", "--k", "0"]) == EXIT_INPUT

    def test_parse_prior(self):
        assert parse_prior("1,2; 3,4").tolist() == [[1, 2], [3, 4]]
        with pytest.raises(MatrixFormatError):
            parse_prior("1,a")


class TestDfoBench:
    def test_small_run(self, tmp_path, capsys):
        out = tmp_path / "profiles.csv"
        svg = tmp_path / "profiles.svg"
        args = ["-q", "dfo-bench", "--sigma", "0", "--seeds", "1", "--budget-multiplier", "10"]
        args += ["--problems", "sphere", "--dims", "2", "--workers", "2", "--out", str(out), "--svg", str(svg)]
        assert main(args) == EXIT_OK
        assert out.read_text(encoding="utf8").startswith("method,alpha,fraction_solved")
        assert (tmp_path / "profiles_runs.csv").exists()
        assert "<polyline" in svg.read_text(encoding="utf8")
        assert "spectral: final fraction solved 1" in capsys.readouterr().out

    def test_bad_tau(self, tmp_path):
        args = ["-q", "dfo-bench", "--tau", "2", "--problems", "sphere", "--dims", "2"]
        args += ["--out", str(tmp_path / "p.csv")]
        assert main(args) == EXIT_INPUT

    @pytest.mark.parametrize(("env", "expected"), [(None, {"3", "4"}), ("7", {"7", "8"})])
    def test_seed(self, tmp_path, monkeypatch, env, expected):
        if env is not None:
            monkeypatch.setenv(SEED_ENV, env)
        out = tmp_path / "profiles.csv"
        args = ["-q", "dfo-bench", "--sigma", "1e-3", "--seeds", "2", "--seed", "3", "--budget-multiplier", "5"]
        args += ["--problems", "sphere", "--dims", "2", "--out", str(out)]
        assert main(args) == EXIT_OK
        with open(tmp_path / "profiles_runs.csv", encoding="utf8") as f:
            seeds = {row["seed"] for row in csv.DictReader(f)}
        assert seeds == expected
