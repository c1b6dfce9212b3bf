"""CLI configuration layering, validation diagnostics, and run outputs."""

import csv
import json

import pytest

from colts.cli import _build_parser, load_config, main

CORPUS_TEXT = "The\tDT\ncat\tNN\n.\t.\n\nIt\tPRP\nran\tVBD\n.\t.\n"


def parse(argv):
    return _build_parser().parse_args(argv)


class TestConfigLayering:
    def test_defaults(self):
        cfg = load_config(parse(["run", "--synthetic", "20,0.4,97"]))
        assert cfg.kernel == 5000 and cfg.eta == 5000
        assert cfg.nu == 2e-5 and cfg.varsigma == 1 and cfg.lookahead == 5
        assert cfg.folds == 10 and cfg.psis == (0.5,)

    def test_config_file_overrides_default(self, tmp_path):
        conf = tmp_path / "exp.conf"
        conf.write_text("eta = 2000\nschedules = arithmetic,colts\n")
        cfg = load_config(parse(["run", "--config", str(conf)]))
        assert cfg.eta == 2000
        assert cfg.schedules == ("arithmetic", "colts")

    def test_env_overrides_config(self, tmp_path, monkeypatch):
        conf = tmp_path / "exp.conf"
        conf.write_text("eta = 2000\n")
        monkeypatch.setenv("COLTS_ETA", "3000")
        cfg = load_config(parse(["run", "--config", str(conf)]))
        assert cfg.eta == 3000

    def test_flag_overrides_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("COLTS_ETA", "3000")
        cfg = load_config(parse(["run", "--eta", "4000"]))
        assert cfg.eta == 4000

    def test_malformed_config_line(self, tmp_path):
        conf = tmp_path / "exp.conf"
        conf.write_text("this line has no equals sign\n")
        assert main(["run", "--config", str(conf)]) == 1


class TestValidate:
    def test_clean_synthetic(self, capsys):
        assert main(["validate", "--synthetic", "20,0.4,97"]) == 0
        assert "configuration ok" in capsys.readouterr().out

    def test_kernel_exceeds_corpus(self, tmp_path, capsys):
        corpus = tmp_path / "tiny.tsv"
        corpus.write_text(CORPUS_TEXT)
        assert main(["validate", "--corpus", str(corpus)]) == 1
        assert "kernel exceeds corpus" in capsys.readouterr().out

    def test_port_out_of_range(self, capsys):
        assert main(["validate", "--synthetic", "20,0.4,97",
                     "--psi", "1.5"]) == 1
        assert "PORT out of (0,1]" in capsys.readouterr().out

    def test_missing_learner(self, capsys):
        assert main(["validate"]) == 1

    def test_unknown_schedule(self, capsys):
        assert main(["validate", "--synthetic", "20,0.4,97",
                     "--schedules", "quadratic"]) == 1


RUN_ARGS = ["--synthetic", "20,0.4,97", "--total", "200000",
            "--kernel", "5000", "--eta", "5000", "--tau", "0.2",
            "--psi", "0.5"]


class TestRun:
    def test_outputs(self, tmp_path):
        out = tmp_path / "out"
        assert main(["run", *RUN_ARGS, "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        runs = summary["frame"]["runs"]
        assert set(runs) == {"arithmetic", "geometric", "colts[0.5]"}
        for entry in runs.values():
            for key in ("wlevel", "plevel", "clevel", "dacsr", "icsr", "lcsr"):
                assert key in entry
        with (out / "iterations.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert rows and rows[0]["position"] == "5000"
        assert {r["run"] for r in rows} == set(runs)
        assert (out / "plotdata").is_dir()

    def test_accuracy_serialized_to_four_decimals(self, tmp_path):
        out = tmp_path / "out"
        main(["run", *RUN_ARGS, "--out", str(out)])
        with (out / "iterations.csv").open() as fh:
            for row in csv.DictReader(fh):
                whole, _, frac = row["accuracy"].partition(".")
                assert len(frac) == 4

    def test_inflate_section(self, tmp_path):
        out = tmp_path / "out"
        assert main(["run", *RUN_ARGS, "--inflate", "1", "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        assert "inflated_frame" in summary
        assert not summary["inflated_frame"]["non_viable"]
        assert "runs" in summary["inflated_frame"]

    def test_summary_recomputable_from_csv(self, tmp_path):
        """Audit property: metrics in the JSON follow from CSV positions."""
        out = tmp_path / "out"
        main(["run", *RUN_ARGS, "--out", str(out)])
        summary = json.loads((out / "summary.json").read_text())
        with (out / "iterations.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        positions = {}
        for row in rows:
            positions.setdefault(row["run"], {})[int(row["level"])] = \
                int(row["position"])
        base = summary["frame"]["runs"]["arithmetic"]
        p = base["plevel"]
        base_pos = positions["arithmetic"]
        for name, entry in summary["frame"]["runs"].items():
            run_pos = positions[name]
            cl = entry["clevel"]
            delta = run_pos[cl] - base_pos[base["clevel"]]
            assert entry["delta"] == delta
            expected_dacsr = 0.0 if delta < -5000 else base_pos[p] / run_pos[cl]
            assert entry["dacsr"] == pytest.approx(expected_dacsr)
            num = sum(base_pos[lv] for lv in range(1, p + 1))
            den = sum(base_pos[lv] for lv in range(1, p)) + \
                sum(run_pos[lv] for lv in range(p, cl + 1))
            assert entry["icsr"] == pytest.approx(num / den)
            assert entry["lcsr"] == entry["dacsr"] * entry["icsr"]

    def test_invalid_config_exits_one(self, tmp_path):
        assert main(["run", "--synthetic", "nonsense",
                     "--out", str(tmp_path / "x")]) == 1
