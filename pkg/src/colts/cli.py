"""Command-line experiment orchestration: `colts run` and `colts validate`.

Configuration comes from a flat `key = value` file, overridden by COLTS_*
environment variables, overridden by command-line flags. Exit status is 0 on
success, 1 on validation failure, 2 on runtime error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .convergence import ConvergenceParams
from .errors import ColtsError, NonViableInflation
from .harness import LocalFrame, Run, build_frame, inflate_frame
from .learners import MostFrequentTagger, SyntheticLearner, fold_partition, measure
from .scheme import SentenceCorpus

DEFAULTS = {
    "kernel": 5000,
    "eta": 5000,
    "nu": 2e-5,
    "varsigma": 1,
    "lambda": 5,
    "tau": 1.0,
    "schedules": "arithmetic,geometric,colts",
    "psi": "0.5",
    "folds": 10,
    "seed": 0,
    "total": 800000,
    "out": "colts-out",
}

CSV_COLUMNS = ["run", "level", "position", "accuracy", "fit_a", "fit_b",
               "fit_c", "alpha", "anchored_alpha", "mu", "step", "port",
               "chi", "halted"]


@dataclass
class ExperimentConfig:
    corpus: Optional[str] = None
    synthetic: Optional[str] = None
    kernel: int = 5000
    eta: int = 5000
    nu: float = 2e-5
    varsigma: int = 1
    lookahead: int = 5
    tau: float = 1.0
    schedules: tuple[str, ...] = ("arithmetic", "geometric", "colts")
    psis: tuple[float, ...] = (0.5,)
    inflate: Optional[float] = None
    folds: int = 10
    seed: int = 0
    total: int = 800000
    scope_end: Optional[int] = None
    out: str = "colts-out"
    diagnostics: list[str] = field(default_factory=list)


def _read_config_file(path: str) -> dict:
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed config line: {raw!r}")
        values[key.strip()] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colts",
        description="Adaptive sampling schedule experiments on learning curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "validate"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--corpus", help="word<TAB>tag corpus file")
        p.add_argument("--synthetic",
                       help="a,b,c[,noise] parameters of a synthetic learner")
        p.add_argument("--kernel", type=int)
        p.add_argument("--eta", type=int)
        p.add_argument("--nu", type=float)
        p.add_argument("--varsigma", type=int)
        p.add_argument("--lambda", dest="lookahead", type=int)
        p.add_argument("--tau", type=float)
        p.add_argument("--schedules", help="comma list of schedule kinds")
        p.add_argument("--psi", help="comma list of trial PORT values")
        p.add_argument("--inflate", type=float)
        p.add_argument("--folds", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--total", type=int,
                       help="synthetic training data size in items")
        p.add_argument("--scope-end", dest="scope_end", type=int)
        p.add_argument("--out")
    return parser


def _merged_value(key: str, cli_value, file_values: dict):
    """Precedence: flag > COLTS_<KEY> env var > config file > default."""
    if cli_value is not None:
        return cli_value
    env = os.environ.get(f"COLTS_{key.upper()}")
    if env is not None:
        return env
    if key in file_values:
        return file_values[key]
    return DEFAULTS.get(key)


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    file_values = _read_config_file(args.config) if args.config else {}
    get = lambda key, cli: _merged_value(key, cli, file_values)

    cfg = ExperimentConfig()
    cfg.corpus = get("corpus", args.corpus)
    cfg.synthetic = get("synthetic", args.synthetic)
    cfg.kernel = int(get("kernel", args.kernel))
    cfg.eta = int(get("eta", args.eta))
    cfg.nu = float(get("nu", args.nu))
    cfg.varsigma = int(get("varsigma", args.varsigma))
    cfg.lookahead = int(get("lambda", args.lookahead))
    cfg.tau = float(get("tau", args.tau))
    cfg.schedules = tuple(
        s.strip() for s in str(get("schedules", args.schedules)).split(",") if s.strip())
    cfg.psis = tuple(
        float(s) for s in str(get("psi", args.psi)).split(",") if s.strip())
    inflate = get("inflate", args.inflate)
    cfg.inflate = None if inflate in (None, "") else float(inflate)
    cfg.folds = int(get("folds", args.folds))
    cfg.seed = int(get("seed", args.seed))
    cfg.total = int(get("total", args.total))
    scope = get("scope_end", args.scope_end)
    cfg.scope_end = None if scope in (None, "") else int(scope)
    cfg.out = str(get("out", args.out))
    return cfg


def validate_config(cfg: ExperimentConfig) -> list[str]:
    problems = []
    if cfg.corpus is None and cfg.synthetic is None:
        problems.append("neither a corpus nor synthetic learner parameters given")
    if cfg.synthetic is not None:
        parts = cfg.synthetic.split(",")
        if len(parts) not in (3, 4):
            problems.append("synthetic needs a,b,c[,noise]")
        else:
            try:
                a, b, c = (float(p) for p in parts[:3])
                noise = float(parts[3]) if len(parts) == 4 else 0.0
                if a <= 0 or b <= 0:
                    problems.append("synthetic a and b must be positive")
                if not 0 < c <= 100:
                    problems.append("synthetic c must lie in (0, 100]")
                if noise < 0:
                    problems.append("synthetic noise must be nonnegative")
            except ValueError:
                problems.append("synthetic parameters must be numeric")
    if cfg.kernel < 1:
        problems.append("kernel must be >= 1")
    if cfg.eta < 1:
        problems.append("eta must be >= 1")
    if not 0 < cfg.nu < 1:
        problems.append("nu outside (0, 1)")
    if cfg.varsigma < 1:
        problems.append("varsigma must be a positive integer")
    if cfg.lookahead < 0:
        problems.append("lambda must be nonnegative")
    if cfg.tau <= 0:
        problems.append("tau must be positive")
    for kind in cfg.schedules:
        if kind not in ("arithmetic", "geometric", "colts"):
            problems.append(f"unknown schedule {kind!r}")
    for psi in cfg.psis:
        if not 0 < psi <= 1:
            problems.append(f"PORT out of (0,1]: {psi}")
    if cfg.inflate is not None and not 0 < cfg.inflate <= 100:
        problems.append("inflation index outside (0, 100]")
    if cfg.folds < 2:
        problems.append("folds must be >= 2")
    if cfg.corpus is not None:
        path = Path(cfg.corpus)
        if not path.exists():
            problems.append(f"corpus file not found: {cfg.corpus}")
        else:
            try:
                corpus = SentenceCorpus.from_text(path.read_text(encoding="utf-8"))
            except ValueError as exc:
                problems.append(f"corpus parse error: {exc}")
            else:
                if corpus.total_words == 0:
                    problems.append("corpus is empty")
                elif cfg.kernel >= corpus.total_words:
                    problems.append("kernel exceeds corpus")
                if len(corpus.sentences) < cfg.folds:
                    problems.append("fewer sentences than folds")
    elif cfg.kernel >= cfg.total:
        problems.append("kernel exceeds corpus")
    return problems


def _make_experiment(cfg: ExperimentConfig):
    """Returns (curve, total, align) for the configured learner."""
    if cfg.corpus is not None:
        corpus = SentenceCorpus.from_file(cfg.corpus).scramble(cfg.seed)
        splits = fold_partition(corpus, cfg.folds, cfg.seed)
        learner = MostFrequentTagger()
        total = min(train.total_words for train, _ in splits)

        def curve(position: int) -> float:
            accs = [measure(learner, train.prefix(position), held).accuracy
                    for train, held in splits]
            return sum(accs) / len(accs)

        return curve, total, None
    parts = [float(p) for p in cfg.synthetic.split(",")]
    noise = parts[3] if len(parts) == 4 else 0.0
    learner = SyntheticLearner(parts[0], parts[1], parts[2],
                               noise=noise, seed=cfg.seed)
    return learner.accuracy_at, cfg.total, None


def _fmt(value, decimals: Optional[int] = None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if decimals is not None:
        return f"{value:.{decimals}f}"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _write_iterations(path: Path, frames: Sequence[tuple[str, LocalFrame]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for prefix, frame in frames:
            for name, run in frame.runs.items():
                label = f"{prefix}{name}"
                for r in run.records:
                    writer.writerow([
                        label, r.level, r.position, _fmt(r.accuracy, 4),
                        _fmt(r.fit_a), _fmt(r.fit_b), _fmt(r.fit_c),
                        _fmt(r.alpha), _fmt(r.anchored_alpha), _fmt(r.mu),
                        _fmt(r.step), _fmt(r.port), _fmt(r.chi),
                        _fmt(r.halted),
                    ])


def _run_summary(frame: LocalFrame, name: str, run: Run) -> dict:
    entry = {
        "kind": run.kind,
        "parameter": run.parameter,
        "wlevel": run.wlevel,
        "plevel": run.plevel,
        "clevel": run.clevel,
        "clevel_position": run.clevel_position,
        "exhausted": run.exhausted,
        "non_viable": run.non_viable,
        "reason": run.reason,
    }
    report = frame.metrics.get(name)
    if report is not None:
        entry.update(delta=report.delta, dacsr=report.dacsr,
                     icsr=report.icsr, lcsr=report.lcsr)
    return entry


def _write_plotdata(outdir: Path, prefix: str, frame: LocalFrame) -> None:
    plotdir = outdir / "plotdata"
    plotdir.mkdir(parents=True, exist_ok=True)
    for name, run in frame.runs.items():
        stem = f"{prefix}{name}".replace("[", "_").replace("]", "")
        with (plotdir / f"{stem}_curve.dat").open("w", encoding="utf-8") as fh:
            for r in run.records:
                fh.write(f"{r.position} {r.accuracy:.4f}\n")
        with (plotdir / f"{stem}_backbone.dat").open("w", encoding="utf-8") as fh:
            for r in run.records:
                if r.alpha is not None:
                    fh.write(f"{r.position} {_fmt(r.alpha)}\n")
        final = max(run.trace.trends) if run.trace.trends else None
        if final is not None:
            trend = run.trace.trend_at(final)
            with (plotdir / f"{stem}_trend.dat").open("w", encoding="utf-8") as fh:
                for r in run.records:
                    fh.write(f"{r.position} {trend.value(r.position):.4f}\n")


def cmd_run(cfg: ExperimentConfig) -> int:
    curve, total, align = _make_experiment(cfg)
    params = ConvergenceParams(threshold=cfg.tau, verticality=cfg.nu,
                               slowdown=cfg.varsigma, lookahead=cfg.lookahead,
                               scope_end=cfg.scope_end)
    frame = build_frame(curve, total, kernel=cfg.kernel, eta=cfg.eta,
                        params=params, schedules=cfg.schedules,
                        psis=cfg.psis, align=align)
    frames = [("", frame)]
    summary = {
        "config": {
            "kernel": cfg.kernel, "eta": cfg.eta, "nu": cfg.nu,
            "varsigma": cfg.varsigma, "lambda": cfg.lookahead, "tau": cfg.tau,
            "schedules": list(cfg.schedules), "psi": list(cfg.psis),
            "folds": cfg.folds, "seed": cfg.seed, "total": total,
            "scope_end": cfg.scope_end, "inflate": cfg.inflate,
        },
        "frame": {
            "non_viable": frame.non_viable,
            "reason": frame.reason,
            "omega": frame.omega,
            "plevel": frame.plevel,
            "tolerance_interval": frame.tolerance_interval,
            "tuned": frame.tuned,
            "runs": {n: _run_summary(frame, n, r) for n, r in frame.runs.items()},
        },
    }
    if cfg.inflate is not None and not frame.non_viable:
        try:
            inflated = inflate_frame(frame, cfg.inflate)
        except NonViableInflation as exc:
            summary["inflated_frame"] = {"non_viable": True, "reason": str(exc)}
        else:
            frames.append(("inflated/", inflated))
            summary["inflated_frame"] = {
                "non_viable": inflated.non_viable,
                "reason": inflated.reason,
                "omega": inflated.omega,
                "plevel": inflated.plevel,
                "runs": {n: _run_summary(inflated, n, r)
                         for n, r in inflated.runs.items()},
            }

    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_iterations(outdir / "iterations.csv", frames)
    with (outdir / "summary.json").open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for prefix, fr in frames:
        _write_plotdata(outdir, prefix.replace("/", "_"), fr)

    for name in sorted(frame.runs):
        report = frame.metrics.get(name)
        if report is None:
            print(f"{name}: non-viable ({frame.runs[name].reason})")
        else:
            print(f"{name}: dacsr={report.dacsr:.4f} icsr={report.icsr:.4f} "
                  f"lcsr={report.lcsr:.4f}")
    return 0


def cmd_validate(cfg: ExperimentConfig) -> int:
    problems = validate_config(cfg)
    for p in problems:
        print(f"diagnostic: {p}")
    if problems:
        return 1
    print("configuration ok")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "validate":
        return cmd_validate(cfg)
    problems = validate_config(cfg)
    if problems:
        for p in problems:
            print(f"diagnostic: {p}", file=sys.stderr)
        return 1
    try:
        return cmd_run(cfg)
    except (ColtsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
