"""
Exact evolution of Bell-Fock block states and the closed-form Bell amplitudes.

Within one block the Hamiltonian (resonant, interaction picture) is

    H = Omega_A/2 (X x I) + Omega_B/2 (I x X),

so the propagator is both ``V diag(exp(-iEt)) V^T`` from the block spectrum
and the product of two commuting single-flip rotations. Both are provided;
the second is the independent check of the first.

Scenario-I states live in the X x X = +1 subspace, where the two flip terms
act identically and the Bell weights rotate at (Omega_A + Omega_B)/2.
Scenario-II states live in the X x X = -1 subspace, where the two terms
cancel partially and the exact rotation rate is (Omega_B - Omega_A)/2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import BlockHamiltonian, BlockIndex, Scenario, block_spectrum

__all__ = [
    "InitialAmplitudes",
    "BlockState",
    "BellAmplitudes",
    "BellDensityMatrix",
    "initial_block_state",
    "propagator",
    "propagate",
    "evolve",
    "propagator_product_form",
    "bell_components",
    "paper_amplitudes",
    "exact_bell_amplitudes",
    "paper_density_matrix",
    "bell_outer_product",
]

NORM_TOL = 1e-12
_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class InitialAmplitudes:
    """Bell-basis weights at t = 0: c00 (Phi+), c01 (Psi+), c10 (Phi-), c11 (Psi-)."""

    c00: complex = 0.0
    c01: complex = 0.0
    c10: complex = 0.0
    c11: complex = 0.0

    def __post_init__(self):
        norm = sum(abs(complex(c)) ** 2 for c in (self.c00, self.c01, self.c10, self.c11))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"Bell amplitudes must be normalized (|c|^2 sum = {norm!r})")

    @classmethod
    def from_theta(cls, theta: float, scenario=Scenario.I) -> "InitialAmplitudes":
        """cos(theta), sin(theta) on the Phi and Psi members of the chosen pair."""
        c, s = float(np.cos(theta)), float(np.sin(theta))
        if Scenario(scenario) is Scenario.I:
            return cls(c00=c, c01=s)
        return cls(c10=c, c11=s)

    @property
    def scenario(self) -> Scenario | None:
        """Scenario the weights belong to, or None for a mixture of both pairs."""
        in_i = abs(self.c00) ** 2 + abs(self.c01) ** 2
        in_ii = abs(self.c10) ** 2 + abs(self.c11) ** 2
        if in_ii <= NORM_TOL:
            return Scenario.I
        if in_i <= NORM_TOL:
            return Scenario.II
        return None

    def pair(self, scenario=None) -> tuple[complex, complex]:
        """(Phi weight, Psi weight) of the given (or inferred) scenario."""
        scenario = self._resolve(scenario)
        if scenario is Scenario.I:
            return complex(self.c00), complex(self.c01)
        return complex(self.c10), complex(self.c11)

    def _resolve(self, scenario) -> Scenario:
        own = self.scenario
        if scenario is None:
            if own is None:
                raise ValueError("amplitudes mix both Bell pairs; pass a scenario")
            return own
        scenario = Scenario(scenario)
        if own is not scenario:
            raise ValueError(f"amplitudes {self} are not valid for scenario {scenario.value}")
        return scenario


@dataclass(frozen=True, eq=False)
class BlockState:
    """Amplitudes over e1..e4 of one block at a given time."""

    amplitudes: np.ndarray
    block: BlockIndex
    time: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise ValueError("a block state has four amplitudes")
        if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError("block state must be normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class BellAmplitudes:
    """Time-dependent weights on the Phi and Psi members of one Bell pair.

    ``c_phi``/``c_psi`` are c00/c01 for Scenario I and c10/c11 for
    Scenario II. ``times`` may be a scalar or an array; the amplitudes share
    its shape.
    """

    c_phi: np.ndarray
    c_psi: np.ndarray
    times: np.ndarray
    scenario: Scenario = Scenario.I

    @property
    def weight(self) -> np.ndarray:
        return np.abs(self.c_phi) ** 2 + np.abs(self.c_psi) ** 2


@dataclass(frozen=True, eq=False)
class BellDensityMatrix:
    """4x4 matrix laid out as in the published Scenario-I density matrix.

    Rows/columns 1 and 4 carry the Phi weight, 2 and 3 the Psi weight, with
    no 1/sqrt(2) factor, so the trace is twice the Bell-pair weight.
    """

    matrix: np.ndarray
    time: float

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def initial_block_state(scenario, amps: InitialAmplitudes, block: BlockIndex) -> BlockState:
    """Expand a Bell-pair superposition on the product basis of ``block``.

    Scenario I gives (c01, c00, c00, c01)/sqrt(2); Scenario II gives
    (c11, c10, -c10, -c11)/sqrt(2).
    """
    c_phi, c_psi = amps.pair(scenario)
    if Scenario(scenario) is Scenario.I:
        vec = np.array([c_psi, c_phi, c_phi, c_psi])
    else:
        vec = np.array([c_psi, c_phi, -c_phi, -c_psi])
    return BlockState(amplitudes=vec / _SQRT2, block=block, time=0.0)


def propagator(H: BlockHamiltonian, t: float, include_diagonal: bool = False) -> np.ndarray:
    """Spectral propagator V diag(exp(-i E t)) V^T of one block."""
    spec = block_spectrum(H, include_diagonal=include_diagonal)
    v = spec.eigenvectors
    return (v * np.exp(-1j * spec.eigenvalues * t)) @ v.T


def propagate(state: BlockState, H: BlockHamiltonian, t: float,
              include_diagonal: bool = False) -> BlockState:
    """Advance ``state`` by ``t``.

    By default the free diagonal is dropped; on resonance it only adds a
    block-global phase.
    """
    if H.block is not None and H.block != state.block:
        raise ValueError(f"state block {state.block} does not match Hamiltonian block {H.block}")
    u = propagator(H, t, include_diagonal=include_diagonal)
    return BlockState(amplitudes=u @ state.amplitudes, block=state.block,
                      time=state.time + t)


def evolve(state: BlockState, H: BlockHamiltonian, times,
           include_diagonal: bool = False) -> np.ndarray:
    """Amplitude vectors at each of ``times`` (shape ``(len(times), 4)``)."""
    spec = block_spectrum(H, include_diagonal=include_diagonal)
    v = spec.eigenvectors
    times = np.asarray(times, dtype=float)
    dressed = v.T @ state.amplitudes
    phases = np.exp(-1j * np.multiply.outer(times, spec.eigenvalues))
    return (phases * dressed) @ v.T


def _flip_rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -1j * s], [-1j * s, c]])


def propagator_product_form(omega_A: float, omega_B: float, t: float) -> np.ndarray:
    """exp(-i t H) as the Kronecker product of the two commuting flip rotations."""
    return np.kron(_flip_rotation(omega_A * t / 2), _flip_rotation(omega_B * t / 2))


def bell_components(amplitudes, scenario=Scenario.I) -> tuple[np.ndarray, np.ndarray]:
    """Project product-basis amplitudes (..., 4) on the Phi/Psi pair of ``scenario``."""
    v = np.asarray(amplitudes)
    sign = 1.0 if Scenario(scenario) is Scenario.I else -1.0
    c_phi = (v[..., 1] + sign * v[..., 2]) / _SQRT2
    c_psi = (v[..., 0] + sign * v[..., 3]) / _SQRT2
    return c_phi, c_psi


def _rotate(c_phi, c_psi, angle):
    c, s = np.cos(angle), np.sin(angle)
    return c_phi * c - 1j * c_psi * s, c_psi * c - 1j * c_phi * s


def paper_amplitudes(amps: InitialAmplitudes, omega_A: float, omega_B: float, t) -> BellAmplitudes:
    """Closed-form Bell weights with half-angle (Omega_A + Omega_B) t / 2.

    c_phi(t) = c_phi cos(S t/2) - i c_psi sin(S t/2) and the mirror for
    c_psi, with S = Omega_A + Omega_B. For Scenario-II weights the same
    formula is applied to (c10, c11); that is the published claim that the
    second pair behaves identically, which :func:`exact_bell_amplitudes`
    shows is not what the block dynamics does unless Omega_A = Omega_B = 0.
    """
    scenario = amps.scenario
    if scenario is None:
        raise ValueError("closed-form amplitudes need weights on a single Bell pair")
    c_phi, c_psi = amps.pair(scenario)
    t = np.asarray(t, dtype=float)
    a, b = _rotate(c_phi, c_psi, 0.5 * (omega_A + omega_B) * t)
    return BellAmplitudes(c_phi=a, c_psi=b, times=t, scenario=scenario)


def exact_bell_amplitudes(amps: InitialAmplitudes, omega_A: float, omega_B: float,
                          t) -> BellAmplitudes:
    """Bell weights of the exact block evolution in closed form.

    Scenario I rotates at (Omega_A + Omega_B)/2, Scenario II at
    (Omega_B - Omega_A)/2.
    """
    scenario = amps.scenario
    if scenario is None:
        raise ValueError("closed-form amplitudes need weights on a single Bell pair")
    c_phi, c_psi = amps.pair(scenario)
    rate = omega_A + omega_B if scenario is Scenario.I else omega_B - omega_A
    t = np.asarray(t, dtype=float)
    a, b = _rotate(c_phi, c_psi, 0.5 * rate * t)
    return BellAmplitudes(c_phi=a, c_psi=b, times=t, scenario=scenario)


def paper_density_matrix(amps: InitialAmplitudes, omega_A: float, omega_B: float,
                         t: float) -> BellDensityMatrix:
    """Published closed-form density matrix for real, nonnegative weights."""
    scenario = amps.scenario
    if scenario is None:
        raise ValueError("density matrix needs weights on a single Bell pair")
    c_phi, c_psi = amps.pair(scenario)
    if c_phi.imag != 0 or c_psi.imag != 0 or c_phi.real < 0 or c_psi.real < 0:
        raise ValueError("the closed-form density matrix assumes real nonnegative weights")
    a, b = c_phi.real, c_psi.real
    total = (omega_A + omega_B) * float(t)
    cos2, sin2 = np.cos(total / 2) ** 2, np.sin(total / 2) ** 2
    r11 = a * a * cos2 + b * b * sin2
    r22 = b * b * cos2 + a * a * sin2
    r12 = a * b - 0.5j * (a * a - b * b) * np.sin(total)
    r21 = np.conj(r12)
    # entries the closed form leaves unstated (2-4, 3-4 and transposes) follow
    # the same outer-product structure
    rho = np.array([
        [r11, r12, r12, r11],
        [r21, r22, r22, r21],
        [r21, r22, r22, r21],
        [r11, r12, r12, r11],
    ], dtype=complex)
    return BellDensityMatrix(matrix=rho, time=float(t))


def bell_outer_product(bell: BellAmplitudes) -> np.ndarray:
    """rho_ij = conj(psi_i) psi_j for psi = (c_phi, c_psi, c_psi, c_phi).

    The published off-diagonal sign matches this ordering of the conjugate,
    i.e. the transpose of |psi><psi|.
    """
    psi = np.array([bell.c_phi, bell.c_psi, bell.c_psi, bell.c_phi], dtype=complex)
    return np.outer(psi.conj(), psi)
