"""Sweeps and searches over beam-splitter settings.

The "one knob" search varies ``eta_va = eta_vb = eta_v`` with both horizontal
coefficients left at 1. The "all four" search runs derivative-free coordinate
descent over ``(eta_va, eta_ha, eta_vb, eta_hb)`` starting from the identity
settings; it only claims a local optimum.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .measures import EntanglementMetrics, metrics
from .protocol import BeamSplitterSettings, DegeneratePostselectionError, bs_transform
from .states import DensityMatrix, StateFamilyParams, mixed_family

log = logging.getLogger(__name__)

DEFAULT_POINTS = 512
GOLDEN_TOL = 1e-6
IMPROVEMENT_TOL = 1e-12
DESCENT_TOL = 1e-9
DESCENT_SEED_POINTS = 64
MAX_DESCENT_ROUNDS = 50
MODES = ("one_knob", "all_four")
CSV_HEADER = ("eta_v", "entropy", "eof", "probability")

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepPoint:
    eta_v: float
    settings: BeamSplitterSettings
    entropy: float
    eof: float
    probability: float


@dataclass
class SweepCurve:
    """Sweep samples in grid order, plus the grid values skipped as degenerate."""

    points: list[SweepPoint]
    skipped: list[float] = field(default_factory=list)

    def __iter__(self) -> Iterator[SweepPoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, idx):
        return self.points[idx]

    def write_csv(self, fh) -> None:
        write_csv(self.points, fh)


@dataclass(frozen=True)
class ConcentrationReport:
    initial: EntanglementMetrics
    best: SweepPoint
    classification: str
    achievable: bool

    def __post_init__(self):
        if self.classification == "concentration":
            assert self.best.eof > self.initial.eof and self.best.entropy < self.initial.entropy


def evaluate(rho: DensityMatrix, settings: BeamSplitterSettings, eta_v: float | None = None) -> SweepPoint:
    """Apply ``settings`` to ``rho`` and measure the post-selected state."""
    outcome = bs_transform(rho, settings)
    m = metrics(outcome.output)
    return SweepPoint(
        eta_v=settings.eta_va if eta_v is None else eta_v,
        settings=settings,
        entropy=m.entropy,
        eof=m.eof,
        probability=outcome.success_probability,
    )


def _try_evaluate(rho, settings, eta_v=None) -> SweepPoint | None:
    try:
        return evaluate(rho, settings, eta_v)
    except DegeneratePostselectionError:
        return None


def _resolve(state) -> DensityMatrix:
    if isinstance(state, StateFamilyParams):
        return mixed_family(state)
    if isinstance(state, DensityMatrix):
        return state
    raise TypeError(f"expected DensityMatrix or StateFamilyParams, got {type(state).__name__}")


def sweep(state, n_points: int = DEFAULT_POINTS, eta_h: float = 1.0) -> SweepCurve:
    """Trace the (entropy, EOF) curve over ``eta_v = k / n_points``, ``k = 1..n_points``."""
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    rho = _resolve(state)
    points, skipped = [], []
    for k in range(1, n_points + 1):
        eta_v = k / n_points
        pt = _try_evaluate(rho, BeamSplitterSettings.symmetric(eta_v, eta_h), eta_v)
        if pt is None:
            skipped.append(eta_v)
        else:
            points.append(pt)
    if skipped:
        log.warning("skipped %d degenerate sweep points (eta_v <= %g)", len(skipped), max(skipped))
    return SweepCurve(points, skipped)


def turning_point(curve) -> SweepPoint:
    """Maximal-EOF point; ties go to lower entropy, then larger ``eta_v``."""
    pts = list(curve)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 sweep points, got {len(pts)}")
    top = max(p.eof for p in pts)
    tied = [p for p in pts if p.eof >= top - IMPROVEMENT_TOL]
    low = min(p.entropy for p in tied)
    tied = [p for p in tied if p.entropy <= low + IMPROVEMENT_TOL]
    return max(tied, key=lambda p: p.eta_v)


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float = GOLDEN_TOL):
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns the best ``(x, f(x))`` evaluated."""
    best_x, best_f = lo, f(lo)
    fhi = f(hi)
    if fhi > best_f:
        best_x, best_f = hi, fhi
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def _score(pt: SweepPoint | None, objective) -> float:
    return -math.inf if pt is None else objective(pt)


def _eof(pt: SweepPoint) -> float:
    return pt.eof


def _search_one_knob(rho, objective, n_points: int = DEFAULT_POINTS) -> SweepPoint | None:
    curve = sweep(rho, n_points)
    scores = [objective(p) for p in curve]
    if not scores or max(scores) == -math.inf:
        return None
    k = int(np.argmax(scores))
    best = curve[k]
    lo = curve[k - 1].eta_v if k > 0 else best.eta_v / 2.0
    hi = curve[k + 1].eta_v if k + 1 < len(curve) else best.eta_v

    cache: dict[float, SweepPoint | None] = {}

    def f(eta):
        if eta not in cache:
            cache[eta] = _try_evaluate(rho, BeamSplitterSettings.symmetric(eta), eta)
        return _score(cache[eta], objective)

    x, fx = golden_section_max(f, lo, hi)
    if fx > scores[k]:
        best = cache[x]
    return best


def _search_all_four(rho, objective, seed_points: int = DESCENT_SEED_POINTS) -> SweepPoint | None:
    x = [1.0, 1.0, 1.0, 1.0]

    def point_at(coords):
        return _try_evaluate(rho, BeamSplitterSettings(*coords))

    best = point_at(x)
    best_score = _score(best, objective)
    grid = np.arange(1, seed_points + 1) / seed_points
    for _ in range(MAX_DESCENT_ROUNDS):
        start = best_score
        for i in range(4):
            cache = {}

            def f(value, i=i):
                if value not in cache:
                    trial = list(x)
                    trial[i] = value
                    cache[value] = point_at(trial)
                return _score(cache[value], objective)

            scores = [f(float(g)) for g in grid]
            k = int(np.argmax(scores))
            lo = grid[k - 1] if k > 0 else grid[0] / 2.0
            hi = grid[k + 1] if k + 1 < len(grid) else 1.0
            v, fv = golden_section_max(f, float(lo), float(hi))
            if scores[k] > fv:
                v, fv = float(grid[k]), scores[k]
            if fv > best_score:
                x[i] = v
                best, best_score = cache[v], fv
        if best_score - start < DESCENT_TOL:
            break
    if best_score == -math.inf:
        return None
    return best


def _search(rho, objective, mode: str, n_points: int):
    if mode == "one_knob":
        return _search_one_knob(rho, objective, n_points)
    if mode == "all_four":
        return _search_all_four(rho, objective)
    raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")


def optimize_eof(rho: DensityMatrix, mode: str = "one_knob", n_points: int = DEFAULT_POINTS) -> SweepPoint:
    """Best EOF reachable by the chosen search; identity settings if nothing improves."""
    rho = _resolve(rho)
    initial = evaluate(rho, BeamSplitterSettings(), 1.0)
    found = _search(rho, _eof, mode, n_points)
    if found is not None and found.eof > initial.eof + IMPROVEMENT_TOL:
        return found
    return initial


def classify(initial, final) -> str:
    """Place a change of (EOF, entropy) in the distillation/purification/concentration taxonomy."""
    d_eof = final.eof - initial.eof
    d_s = final.entropy - initial.entropy
    if d_eof > IMPROVEMENT_TOL and d_s < -IMPROVEMENT_TOL:
        return "concentration"
    if d_eof > IMPROVEMENT_TOL:
        return "distillation"
    if d_s < -IMPROVEMENT_TOL:
        return "purification"
    if d_eof < -IMPROVEMENT_TOL or d_s > IMPROVEMENT_TOL:
        return "degradation"
    return "none"


def find_concentration(rho: DensityMatrix, mode: str = "one_knob", n_points: int = DEFAULT_POINTS) -> ConcentrationReport:
    """Look for settings that raise EOF while lowering entropy.

    If none exist, the report falls back to the best-EOF settings and
    classifies what that point does to the state.
    """
    rho = _resolve(rho)
    initial = metrics(rho)

    def lower_entropy_eof(pt):
        return pt.eof if pt.entropy < initial.entropy - IMPROVEMENT_TOL else -math.inf

    found = _search(rho, lower_entropy_eof, mode, n_points)
    if found is not None and classify(initial, found) == "concentration":
        return ConcentrationReport(initial, found, "concentration", True)
    best = optimize_eof(rho, mode, n_points)
    return ConcentrationReport(initial, best, classify(initial, best), False)


def write_csv(points, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        writer.writerow([repr(float(p.eta_v)), repr(p.entropy), repr(p.eof), repr(p.probability)])
