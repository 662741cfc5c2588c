"""
Single-site observables.

Two inversion signals are kept side by side and always labelled:

``exact``
    sigma_z of one atom after tracing out the other atom and both fields.
    The four block states carry four different field-occupation pairs, so
    the reduced atomic state is diagonal. For Bell-pair initial states the
    result is identically zero.
``paper_bell``
    The Bell-population imbalance |c_phi|^2 - |c_psi|^2 at site A, with the
    opposite sign at site B. This is the signal whose oscillation, collapse
    and revival the published figures show.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .evolution import BlockState, InitialAmplitudes, paper_amplitudes

__all__ = [
    "Site",
    "InversionConvention",
    "ReducedAtomState",
    "InversionSample",
    "reduce_atom",
    "excited_populations",
    "inversion_exact",
    "inversion_paper",
]

# which of e1..e4 has the atom excited
_EXCITED = {
    "A": np.array([False, False, True, True]),
    "B": np.array([False, True, False, True]),
}


class Site(str, enum.Enum):
    A = "A"
    B = "B"


class InversionConvention(str, enum.Enum):
    EXACT = "exact"
    PAPER_BELL = "paper_bell"


@dataclass(frozen=True, eq=False)
class ReducedAtomState:
    """2x2 atomic density matrix, ordered (ground, excited)."""

    matrix: np.ndarray
    site: Site

    @property
    def excited_population(self) -> float:
        return float(self.matrix[1, 1].real)


@dataclass(frozen=True)
class InversionSample:
    W_A: float
    W_B: float
    convention: InversionConvention


def excited_populations(amplitudes) -> tuple[np.ndarray, np.ndarray]:
    """Excited-state probabilities of atoms A and B for amplitude arrays (..., 4)."""
    probs = np.abs(np.asarray(amplitudes)) ** 2
    return probs[..., _EXCITED["A"]].sum(-1), probs[..., _EXCITED["B"]].sum(-1)


def reduce_atom(state: BlockState, site) -> ReducedAtomState:
    site = Site(site)
    probs = np.abs(state.amplitudes) ** 2
    p_exc = float(probs[_EXCITED[site.value]].sum())
    p_gnd = float(probs[~_EXCITED[site.value]].sum())
    return ReducedAtomState(matrix=np.diag([p_gnd, p_exc]).astype(complex), site=site)


def inversion_exact(state: BlockState) -> InversionSample:
    rho_a = reduce_atom(state, Site.A).matrix.real
    rho_b = reduce_atom(state, Site.B).matrix.real
    return InversionSample(W_A=float(rho_a[1, 1] - rho_a[0, 0]),
                           W_B=float(rho_b[1, 1] - rho_b[0, 0]),
                           convention=InversionConvention.EXACT)


def inversion_paper(amps: InitialAmplitudes, omega_A: float, omega_B: float, t):
    """Bell-basis inversion; scalar ``t`` gives an :class:`InversionSample`.

    For an array ``t`` the result is a pair ``(W_A, W_B)`` of arrays. With
    real weights W_A = (c_phi^2 - c_psi^2) cos((Omega_A + Omega_B) t).
    """
    bell = paper_amplitudes(amps, omega_A, omega_B, t)
    w_a = np.abs(bell.c_phi) ** 2 - np.abs(bell.c_psi) ** 2
    w_b = -w_a
    if np.ndim(t) == 0:
        return InversionSample(W_A=float(w_a), W_B=float(w_b),
                               convention=InversionConvention.PAPER_BELL)
    return w_a, w_b
