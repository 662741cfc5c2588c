"""
Coherent-field ensembles and collapse/revival detection.

A coherent field of mean photon number |alpha|^2 weights photon-number
blocks with Poisson probabilities. Two weightings are available:

``twin_diagonal``
    only blocks n_A = n_B = n, weight p_n. With g_A = g_B = g the per-block
    Bell signal is cos(2 g sqrt(n+1) t), the textbook single-JCM series.
``independent_product``
    all blocks (n_A, n_B), weight p_{n_A} p_{n_B}. Two independent draws
    of sqrt(n+1) have half the variance of one draw doubled, so the spread
    of Omega_A + Omega_B is narrower and the signal collapses later.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special, stats

from .evolution import InitialAmplitudes, evolve, initial_block_state
from .measurement import InversionConvention, excited_populations, inversion_paper
from .model import BlockHamiltonian, BlockIndex, Scenario, SystemParams, interaction_block

__all__ = [
    "ModeCoupling",
    "CoherentCase",
    "CoherentConfig",
    "InversionSeries",
    "RevivalAnalysis",
    "TAIL_TOL",
    "default_cutoff",
    "poisson_weights",
    "case_amplitudes",
    "ensemble_inversion",
    "detect_collapse_revival",
]

TAIL_TOL = 1e-10


class ModeCoupling(str, enum.Enum):
    TWIN_DIAGONAL = "twin_diagonal"
    INDEPENDENT_PRODUCT = "independent_product"


class CoherentCase(str, enum.Enum):
    """Which Bell weight carries the coherent field: I -> Phi member, II -> Psi member."""

    I = "I"
    II = "II"


def default_cutoff(alpha_sq: float) -> int:
    return int(math.ceil(alpha_sq + 10 * math.sqrt(alpha_sq) + 10))


def _tail_mass(alpha_sq: float, cutoff: int) -> float:
    return float(stats.poisson.sf(cutoff, alpha_sq))


def _suggest_cutoff(alpha_sq: float) -> int:
    n = max(0, int(stats.poisson.isf(TAIL_TOL, alpha_sq)))
    while _tail_mass(alpha_sq, n) >= TAIL_TOL:
        n += 1
    return n


def poisson_weights(alpha_sq: float, cutoff: int) -> np.ndarray:
    """Photon-number probabilities p_0..p_cutoff of a coherent state.

    Evaluated in log space and renormalized after truncation.

    Raises
    ------
    ValueError
        If ``alpha_sq <= 0`` or the discarded tail mass is >= 1e-10; the
        message names the smallest cutoff that would pass.
    """
    if not alpha_sq > 0:
        raise ValueError(f"alpha_sq must be positive, got {alpha_sq!r}")
    if int(cutoff) != cutoff or cutoff < 0:
        raise ValueError(f"cutoff must be a nonnegative integer, got {cutoff!r}")
    cutoff = int(cutoff)
    tail = _tail_mass(alpha_sq, cutoff)
    if tail >= TAIL_TOL:
        raise ValueError(
            f"cutoff {cutoff} drops Poisson tail mass {tail:.3e} >= {TAIL_TOL:g}; "
            f"use cutoff >= {_suggest_cutoff(alpha_sq)}")
    n = np.arange(cutoff + 1)
    log_p = -alpha_sq + n * math.log(alpha_sq) - special.gammaln(n + 1)
    p = np.exp(log_p)
    return p / p.sum()


@dataclass(frozen=True)
class CoherentConfig:
    alpha_sq: float = 20.0
    cutoff: int | None = None
    mode_coupling: ModeCoupling = ModeCoupling.TWIN_DIAGONAL
    case: CoherentCase = CoherentCase.I

    def __post_init__(self):
        if not self.alpha_sq > 0:
            raise ValueError(f"alpha_sq must be positive, got {self.alpha_sq!r}")
        object.__setattr__(self, "mode_coupling", ModeCoupling(self.mode_coupling))
        object.__setattr__(self, "case", CoherentCase(self.case))
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", default_cutoff(self.alpha_sq))
        # validates the tail rule
        poisson_weights(self.alpha_sq, self.cutoff)

    @property
    def weights(self) -> np.ndarray:
        return poisson_weights(self.alpha_sq, self.cutoff)


@dataclass(frozen=True, eq=False)
class InversionSeries:
    times: np.ndarray
    W_A: np.ndarray
    W_B: np.ndarray
    convention: InversionConvention
    weighting: ModeCoupling | None = None


@dataclass(frozen=True)
class RevivalAnalysis:
    """Detected and predicted collapse/revival times (None = feature absent)."""

    t_collapse_est: float | None
    t_revival_est: float | None
    t_collapse_pred: float | None
    t_revival_pred: float | None
    window: float
    threshold: float
    revival_window: tuple[float, float] | None
    convention: InversionConvention = InversionConvention.PAPER_BELL
    weighting: ModeCoupling | None = None
    notes: tuple[str, ...] = field(default=())

    def summary(self) -> dict:
        return {
            "t_collapse_est": self.t_collapse_est,
            "t_revival_est": self.t_revival_est,
            "t_collapse_pred": self.t_collapse_pred,
            "t_revival_pred": self.t_revival_pred,
            "convention": InversionConvention(self.convention).value,
            "weighting": None if self.weighting is None else ModeCoupling(self.weighting).value,
        }


def case_amplitudes(case, scenario=Scenario.I) -> InitialAmplitudes:
    """Unit Bell weights of one block for Case I / Case II."""
    case, scenario = CoherentCase(case), Scenario(scenario)
    first = case is CoherentCase.I
    if scenario is Scenario.I:
        return InitialAmplitudes(c00=1.0 if first else 0.0, c01=0.0 if first else 1.0)
    return InitialAmplitudes(c10=1.0 if first else 0.0, c11=0.0 if first else 1.0)


def _block_signal(params: SystemParams, block: BlockIndex, amps: InitialAmplitudes,
                  times: np.ndarray, convention: InversionConvention) -> np.ndarray:
    """(W_A, W_B) of one block, stacked as shape (2, len(times))."""
    ham = interaction_block(params, block)
    if convention is InversionConvention.PAPER_BELL:
        return np.stack(inversion_paper(amps, ham.omega_Rabi_A, ham.omega_Rabi_B, times))
    # full excitation-conserving Hamiltonian with its mean removed; at delta = 0
    # the diagonal is constant and drops out entirely
    ham = BlockHamiltonian(interaction=ham.interaction,
                           diagonal=ham.diagonal - ham.diagonal.mean(),
                           omega_Rabi_A=ham.omega_Rabi_A, omega_Rabi_B=ham.omega_Rabi_B,
                           block=block)
    state = initial_block_state(params.scenario, amps, block)
    amps_t = evolve(state, ham, times, include_diagonal=True)
    probs = np.abs(amps_t) ** 2
    p_a, p_b = excited_populations(amps_t)
    g_a = probs[:, 0] + probs[:, 1]
    g_b = probs[:, 0] + probs[:, 2]
    return np.stack([p_a - g_a, p_b - g_b])


def ensemble_inversion(params: SystemParams, config: CoherentConfig, times,
                       convention=InversionConvention.PAPER_BELL) -> InversionSeries:
    """Poisson-weighted site inversion over photon-number blocks.

    The sum runs over blocks in a fixed order (n_A outer, n_B inner) with
    numpy reductions over stacked rows, so results are bitwise reproducible.
    """
    convention = InversionConvention(convention)
    if convention is InversionConvention.PAPER_BELL:
        params.require_resonant()
    times = np.asarray(times, dtype=float)
    amps = case_amplitudes(config.case, params.scenario)
    p = config.weights
    if config.mode_coupling is ModeCoupling.TWIN_DIAGONAL:
        rows = np.stack([_block_signal(params, BlockIndex(n, n), amps, times, convention)
                         for n in range(len(p))])
        total = np.sum(p[:, None, None] * rows, axis=0)
    else:
        partial = np.empty((len(p), 2, len(times)))
        for na in range(len(p)):
            rows = np.stack([_block_signal(params, BlockIndex(na, nb), amps, times, convention)
                             for nb in range(len(p))])
            partial[na] = np.sum(p[:, None, None] * rows, axis=0)
        total = np.sum(p[:, None, None] * partial, axis=0)
    return InversionSeries(times=times, W_A=total[0], W_B=total[1], convention=convention,
                           weighting=config.mode_coupling)


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive index ranges of consecutive True entries."""
    edges = np.diff(np.concatenate([[0], mask.astype(np.int8), [0]]))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1) - 1
    return list(zip(starts.tolist(), stops.tolist()))


def _crossing(t, y, i, j, level):
    """Linear-interpolated time where y crosses ``level`` between samples i and j."""
    if y[j] == y[i]:
        return float(t[i])
    return float(t[i] + (level - y[i]) * (t[j] - t[i]) / (y[j] - y[i]))


def _collapse_time(t, amp, threshold, window):
    """Earliest centre of a width-``window`` interval in which max|W| < threshold.

    The set {|W| >= threshold} is a union of intervals whose ends are located
    by linear interpolation; the envelope first drops below threshold at the
    end of the first interval followed by a gap wider than ``window``, plus
    half a window.
    """
    runs = _runs(amp >= threshold)
    last = len(t) - 1
    bounds = []
    for i0, i1 in runs:
        start = float(t[0]) if i0 == 0 else _crossing(t, amp, i0 - 1, i0, threshold)
        stop = float(t[last]) if i1 == last else _crossing(t, amp, i1, i1 + 1, threshold)
        bounds.append((start, stop, i1 == last))
    for k, (_, stop, at_end) in enumerate(bounds):
        if at_end:
            return None
        nxt = bounds[k + 1][0] if k + 1 < len(bounds) else np.inf
        if nxt - stop > window and stop + window <= t[last]:
            return stop + window / 2
    return None


def _refined_argmax(t, amp, idx):
    """Parabolic-vertex refinement of a sampled maximum at index ``idx``."""
    y0, y1, y2 = amp[idx - 1], amp[idx], amp[idx + 1]
    denom = y0 - 2 * y1 + y2
    shift = 0.0 if denom == 0 else 0.5 * (y0 - y2) / denom
    step = t[idx + 1] - t[idx] if shift >= 0 else t[idx] - t[idx - 1]
    return float(t[idx] + shift * step)


def detect_collapse_revival(series: InversionSeries, g: float, alpha_sq: float) -> RevivalAnalysis:
    """Estimate collapse and revival times from the site-A signal.

    Collapse: the running envelope max|W| over a centred window of one Rabi
    period 2 pi / (2 g sqrt(alpha_sq + 1)) first drops below |W(0)|/e.
    Revival: the largest |W| within [0.5, 1.5] x 2 pi sqrt(alpha_sq) / g,
    accepted only if a collapse was found and the maximum is interior to
    that window.
    """
    t = np.asarray(series.times, dtype=float)
    amp = np.abs(np.asarray(series.W_A, dtype=float))
    if amp[0] <= 1e-12:
        raise ValueError("collapse/revival detection needs a nonzero initial inversion")
    threshold = float(amp[0] / np.e)
    if not g > 0:
        return RevivalAnalysis(None, None, None, None, window=np.inf, threshold=threshold,
                               revival_window=None, convention=series.convention,
                               weighting=series.weighting, notes=("no coupling",))
    t_c_pred = math.sqrt(2) / g
    t_r_pred = 2 * math.pi * math.sqrt(alpha_sq) / g
    window = 2 * math.pi / (2 * g * math.sqrt(alpha_sq + 1))
    lo, hi = 0.5 * t_r_pred, 1.5 * t_r_pred
    notes = []

    t_collapse = _collapse_time(t, amp, threshold, window)
    if t_collapse is None:
        notes.append("envelope never decays below threshold")

    t_revival = None
    inside = np.flatnonzero((t >= lo) & (t <= hi))
    if t_collapse is None:
        notes.append("revival requires a preceding collapse")
    elif inside.size < 3:
        notes.append("series does not cover the revival window")
    else:
        k = inside[np.argmax(amp[inside])]
        if k in (inside[0], inside[-1]) or k == 0 or k == len(t) - 1:
            notes.append("no interior maximum in the revival window")
        else:
            t_revival = _refined_argmax(t, amp, k)

    return RevivalAnalysis(t_collapse_est=t_collapse, t_revival_est=t_revival,
                           t_collapse_pred=t_c_pred, t_revival_pred=t_r_pred,
                           window=window, threshold=threshold, revival_window=(lo, hi),
                           convention=series.convention, weighting=series.weighting,
                           notes=tuple(notes))
