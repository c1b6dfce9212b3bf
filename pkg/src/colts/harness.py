"""Runs, local testing frames, inflated variants, and cost-saving metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

from . import convergence as conv
from .errors import NoCLevel, NonViableInflation
from .pattern import Observation
from .schedule import colts_step, mu, tune_geometric, tune_port
from .trace import FIRST_TREND_LEVEL, LearningTrace

Curve = Callable[[int], float]
Align = Callable[[int], int]

MAX_LEVELS = 100_000


@dataclass(frozen=True)
class LevelRecord:
    """One row of the iteration log."""

    level: int
    position: int
    accuracy: float
    fit_a: Optional[float]
    fit_b: Optional[float]
    fit_c: Optional[float]
    alpha: Optional[float]
    anchored_alpha: Optional[float]
    mu: Optional[float]
    step: Optional[int]
    port: Optional[float]
    chi: Optional[float]
    halted: bool


@dataclass
class Run:
    """One schedule's full trajectory through the training data."""

    name: str
    kind: str
    parameter: float
    trace: LearningTrace
    records: list[LevelRecord]
    wlevel: Optional[int]
    plevel: Optional[int]
    clevel: Optional[int]
    exhausted: bool = False
    non_viable: bool = False
    reason: str = ""

    def position_of(self, level: int) -> int:
        return self.trace.position(level)

    @property
    def clevel_position(self) -> Optional[int]:
        return None if self.clevel is None else self.position_of(self.clevel)


@dataclass(frozen=True)
class MetricsReport:
    """Signed discrepancy plus the three cost-saving ratios."""

    delta: int
    dacsr: float
    icsr: float
    lcsr: float


def execute_run(curve: Curve, total: int, *, kernel: int, eta: int,
                params: conv.ConvergenceParams, kind: str = "arithmetic",
                ratio: Optional[float] = None, port: Optional[float] = None,
                plevel_known: Optional[int] = None,
                omega_known: Optional[int] = None,
                align: Optional[Align] = None,
                overrides: Optional[Dict[int, float]] = None,
                anchoring: bool = True, name: Optional[str] = None) -> Run:
    """Iterate one schedule until the layered halting condition or exhaustion.

    Observes accuracy at each (sentence-aligned) position, extends the trace,
    detects the working and prediction levels when they are not supplied by a
    frame baseline, engages canonical anchoring past the working level, and
    switches from the uniform step to the run's own step function once the
    prediction level is reached.
    """
    if kind not in ("arithmetic", "geometric", "colts"):
        raise ValueError(f"unknown schedule kind {kind!r}")
    if kind == "geometric" and (ratio is None or ratio <= 1):
        raise ValueError("geometric runs need ratio > 1")
    if kind == "colts" and (port is None or not 0 < port <= 1):
        raise ValueError("colts runs need port in (0, 1]")
    do_align = align if align is not None else (lambda p: p)
    overrides = overrides or {}

    trace = LearningTrace()
    omega, plevel = omega_known, plevel_known
    clevel: Optional[int] = None
    exhausted = False
    reason = ""
    chis: Dict[int, float] = {}
    steps: Dict[int, tuple[int, Optional[float], Optional[float]]] = {}
    checked = 0

    pos = do_align(min(kernel, total))
    level = 1
    while True:
        acc = overrides.get(level)
        if acc is None:
            acc = curve(pos)
        trace.extend(Observation(position=pos, accuracy=acc))

        if omega is None or plevel is None:
            backbone = trace.backbone()
            levels = sorted(backbone)
            values = [backbone[lv] for lv in levels]
            positions = [trace.position(lv) for lv in levels]
            if omega is None:
                omega = conv.wlevel(values, positions, params,
                                    first_level=FIRST_TREND_LEVEL)
            if omega is not None and plevel is None:
                plevel = conv.plevel(values, omega, first_level=FIRST_TREND_LEVEL)
        if (anchoring and omega is not None and trace.omega is None
                and trace.level >= omega):
            trace.enable_anchoring(omega)

        if plevel is not None:
            start = max(plevel, FIRST_TREND_LEVEL, checked + 1)
            for lv in range(start, trace.level + 1):
                chis[lv] = _chi(trace, lv, params, align)
                checked = lv
                if clevel is None and conv.halted(chis[lv], params.threshold):
                    clevel = lv
                    break
        if clevel is not None:
            break
        if exhausted or level >= MAX_LEVELS:
            reason = "corpus exhausted before convergence" if exhausted \
                else "level budget exceeded"
            break

        step = eta
        mu_val: Optional[float] = None
        port_val: Optional[float] = None
        if plevel is not None and trace.level >= max(plevel, FIRST_TREND_LEVEL):
            if kind == "geometric":
                step = math.ceil(pos * (ratio - 1.0))
            elif kind == "colts":
                trend = trace.trend_at(trace.level)
                mu_val = mu(trend, pos)
                step = colts_step(trend, pos, port)
                port_val = port
        steps[level] = (step, mu_val, port_val)

        target = pos + step
        if target >= total:
            nxt = total
            exhausted = True
        else:
            nxt = do_align(target)
            if nxt >= total:
                nxt = total
                exhausted = True
        if nxt <= pos:
            reason = "corpus exhausted before convergence"
            break
        pos = nxt
        level += 1

    records = _build_records(trace, steps, chis, clevel)
    run = Run(
        name=name or kind,
        kind=kind,
        parameter={"arithmetic": float(eta), "geometric": ratio,
                   "colts": port}[kind],
        trace=trace,
        records=records,
        wlevel=omega,
        plevel=plevel,
        clevel=clevel,
        exhausted=exhausted,
    )
    if clevel is None:
        run.non_viable = True
        run.reason = reason or "no convergence level"
    return run


def _chi(trace: LearningTrace, level: int, params: conv.ConvergenceParams,
         align: Optional[Align] = None) -> float:
    trend = trace.trend_at(level)
    x = trace.position(level)
    if params.scope_end is not None:
        end = align(params.scope_end) if align else params.scope_end
        if x >= end:
            return 0.0
        return conv.layer(trend, x, scope_end=end)
    return conv.layer(trend, x)


def _build_records(trace: LearningTrace, steps, chis, clevel) -> list[LevelRecord]:
    records = []
    backbone = trace.backbone()
    anchored = trace.backbone(anchored=True)
    for lv, obs in enumerate(trace.observations, start=1):
        trend = trace.trends.get(lv)
        step, mu_val, port_val = steps.get(lv, (None, None, None))
        records.append(LevelRecord(
            level=lv,
            position=obs.position,
            accuracy=obs.accuracy,
            fit_a=trend.a if trend else None,
            fit_b=trend.b if trend else None,
            fit_c=trend.c if trend else None,
            alpha=backbone.get(lv),
            anchored_alpha=anchored.get(lv),
            mu=mu_val,
            step=step,
            port=port_val,
            chi=chis.get(lv),
            halted=clevel is not None and lv >= clevel,
        ))
    return records


# --- metrics --------------------------------------------------------------

def discrepancy(run: Run, baseline: Run) -> int:
    """Signed distance between the run's and the baseline's convergence cases."""
    if run.clevel is None or baseline.clevel is None:
        raise NoCLevel("both runs need a convergence level")
    return run.clevel_position - baseline.clevel_position


def dacsr(run: Run, baseline: Run, eta: int) -> float:
    """Data-acquisition cost saving ratio; 0 when the run converges too early."""
    delta = discrepancy(run, baseline)
    if delta < -eta:
        return 0.0
    return baseline.position_of(baseline.plevel) / run.clevel_position


def icsr(run: Run, baseline: Run) -> float:
    """Induction cost saving ratio over the cycles from the prediction level."""
    if run.clevel is None:
        raise NoCLevel("run needs a convergence level")
    p = baseline.plevel
    num = sum(baseline.position_of(lv) for lv in range(1, p + 1))
    den = sum(baseline.position_of(lv) for lv in range(1, p)) + \
        sum(run.position_of(lv) for lv in range(p, run.clevel + 1))
    return num / den


def metrics(run: Run, baseline: Run, eta: int) -> MetricsReport:
    d = dacsr(run, baseline, eta)
    i = icsr(run, baseline)
    return MetricsReport(delta=discrepancy(run, baseline),
                         dacsr=d, icsr=i, lcsr=d * i)


# --- local testing frames -------------------------------------------------

@dataclass
class FrameContext:
    curve: Curve
    total: int
    kernel: int
    eta: int
    params: conv.ConvergenceParams
    align: Optional[Align]
    anchoring: bool


@dataclass
class LocalFrame:
    """A baseline run plus competitors sharing kernel, prediction level and tau."""

    baseline: Run
    runs: Dict[str, Run]
    metrics: Dict[str, MetricsReport]
    tuned: Dict[str, float]
    eta: int
    tau: float
    omega: Optional[int]
    plevel: Optional[int]
    inflation: Optional[float] = None
    non_viable: bool = False
    reason: str = ""
    context: Optional[FrameContext] = field(default=None, repr=False)

    @property
    def tolerance_interval(self) -> Optional[tuple[int, int]]:
        if self.baseline.clevel is None:
            return None
        end = self.baseline.clevel_position
        return (end - self.eta, end)


def colts_run_name(psi: float) -> str:
    return f"colts[{psi:g}]"


def build_frame(curve: Curve, total: int, *, kernel: int, eta: int,
                params: conv.ConvergenceParams,
                schedules: Sequence[str] = ("arithmetic", "geometric", "colts"),
                psis: Sequence[float] = (0.5,),
                align: Optional[Align] = None,
                anchoring: bool = True) -> LocalFrame:
    """Execute the baseline, tune the competitors from it, and score everything.

    The baseline runs first: its working/prediction levels and convergence
    case fix the tolerance interval and the tuning inputs for the geometric
    ratio and the adaptive PORT values.
    """
    ctx = FrameContext(curve, total, kernel, eta, params, align, anchoring)
    baseline = execute_run(curve, total, kernel=kernel, eta=eta, params=params,
                           kind="arithmetic", align=align, anchoring=anchoring,
                           name="arithmetic")
    frame = LocalFrame(baseline=baseline, runs={"arithmetic": baseline},
                       metrics={}, tuned={}, eta=eta, tau=params.threshold,
                       omega=baseline.wlevel, plevel=baseline.plevel,
                       context=ctx)
    if baseline.plevel is None or baseline.clevel is None:
        frame.non_viable = True
        frame.reason = baseline.reason or "baseline has no prediction level"
        return frame

    p_pos = baseline.position_of(baseline.plevel)
    if "geometric" in schedules:
        rho = tune_geometric(eta, p_pos)
        frame.tuned["geometric"] = rho
        frame.runs["geometric"] = execute_run(
            curve, total, kernel=kernel, eta=eta, params=params,
            kind="geometric", ratio=rho, plevel_known=baseline.plevel,
            omega_known=baseline.wlevel, align=align, anchoring=anchoring,
            name="geometric")
    if "colts" in schedules:
        trend = baseline.trace.trend_at(baseline.plevel)
        mu_p = mu(trend, p_pos)
        remaining = total - p_pos
        for psi in psis:
            trial_step = max(1, math.ceil(psi * mu_p))
            port = tune_port(psi, eta, trial_step, max(remaining, 1))
            name = colts_run_name(psi)
            frame.tuned[name] = port
            frame.runs[name] = execute_run(
                curve, total, kernel=kernel, eta=eta, params=params,
                kind="colts", port=port, plevel_known=baseline.plevel,
                omega_known=baseline.wlevel, align=align, anchoring=anchoring,
                name=name)

    for name, run in frame.runs.items():
        if run.clevel is not None:
            frame.metrics[name] = metrics(run, baseline, eta)
    return frame


def _inflated_accuracy(run: Run, level: int, iota: float) -> float:
    original = run.trace.observations[level - 1].accuracy
    cap = run.trace.trends[run.clevel].asymptote()
    return min((1.0 + iota / 100.0) * original, cap, 100.0)


def inflate_frame(frame: LocalFrame, iota: float) -> LocalFrame:
    """Re-execute every run with one pre-convergence observation inflated.

    The inflated level of each run is the greatest one whose position stays
    below both its own and the baseline's convergence case; it must exceed
    the shared prediction level, otherwise the variant cannot exist.
    """
    if not 0.0 < iota <= 100.0:
        raise ValueError("inflation index must lie in (0, 100]")
    if frame.non_viable or frame.context is None:
        raise NonViableInflation("cannot inflate a non-viable frame")
    ctx = frame.context
    base_cl_pos = frame.baseline.clevel_position

    def inflated_level(run: Run) -> int:
        if run.clevel is None:
            raise NonViableInflation(f"run {run.name} has no convergence level")
        cutoff = min(run.clevel_position, base_cl_pos)
        best = None
        for lv in range(1, run.trace.level + 1):
            if run.position_of(lv) < cutoff:
                best = lv
        if best is None or best <= frame.plevel:
            raise NonViableInflation(
                f"run {run.name} converges too close to the prediction level")
        return best

    new_runs: Dict[str, Run] = {}
    for name, run in frame.runs.items():
        lv = inflated_level(run)
        overrides = {lv: _inflated_accuracy(run, lv, iota)}
        if run.kind == "arithmetic":
            new_run = execute_run(ctx.curve, ctx.total, kernel=ctx.kernel,
                                  eta=ctx.eta, params=ctx.params,
                                  kind="arithmetic", align=ctx.align,
                                  overrides=overrides, anchoring=ctx.anchoring,
                                  name=name)
            if new_run.plevel != frame.plevel:
                raise NonViableInflation(
                    "inflation shifted the baseline prediction level")
        else:
            kw = {"ratio": run.parameter} if run.kind == "geometric" \
                else {"port": run.parameter}
            new_run = execute_run(ctx.curve, ctx.total, kernel=ctx.kernel,
                                  eta=ctx.eta, params=ctx.params,
                                  kind=run.kind, plevel_known=frame.plevel,
                                  omega_known=frame.omega, align=ctx.align,
                                  overrides=overrides, anchoring=ctx.anchoring,
                                  name=name, **kw)
        new_runs[name] = new_run

    new_baseline = new_runs["arithmetic"]
    inflated = LocalFrame(baseline=new_baseline, runs=new_runs, metrics={},
                          tuned=dict(frame.tuned), eta=frame.eta, tau=frame.tau,
                          omega=new_baseline.wlevel, plevel=frame.plevel,
                          inflation=iota, context=ctx)
    if new_baseline.clevel is None:
        inflated.non_viable = True
        inflated.reason = "inflated baseline does not converge"
        return inflated
    for name, run in new_runs.items():
        if run.clevel is not None:
            inflated.metrics[name] = metrics(run, new_baseline, frame.eta)
    return inflated
