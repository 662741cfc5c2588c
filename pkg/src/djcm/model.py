"""
Block Hamiltonians of the double Jaynes-Cummings model.

Two atom-cavity pairs (sites A and B) evolve without mutual coupling. With
the per-site excitation numbers N_A = n_A + 1 and N_B = n_B + 1 fixed, the
dynamics closes on four product states, always ordered as

    e1 = |0_A 0_B; n_A+1, n_B+1>
    e2 = |0_A 1_B; n_A+1, n_B  >
    e3 = |1_A 0_B; n_A,   n_B+1>
    e4 = |1_A 1_B; n_A,   n_B  >

(atom label 0 = ground, 1 = excited). In this ordering the atom-A bit is the
most significant one, so site-A flips pair (e1, e3) and (e2, e4) and site-B
flips pair (e1, e2) and (e3, e4).

Units: hbar = 1, frequencies in rad per unit time.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Scenario",
    "DiagonalConvention",
    "SystemParams",
    "BlockIndex",
    "BlockHamiltonian",
    "Spectrum",
    "EigensolverError",
    "PAULI_X",
    "rabi_frequency",
    "interaction_block",
    "free_diagonal",
    "block_spectrum",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])

# sigma_z eigenvalue of each atom in e1..e4 (ground = -1, excited = +1)
_SIGMA_Z_A = np.array([-1.0, -1.0, 1.0, 1.0])
_SIGMA_Z_B = np.array([-1.0, 1.0, -1.0, 1.0])

EIGEN_TOL = 1e-12


class Scenario(str, enum.Enum):
    """Which Bell pair the initial state is built from.

    ``I`` superposes Phi+ and Psi+ (weights c00, c01); ``II`` superposes
    Phi- and Psi- (weights c10, c11).
    """

    I = "I"
    II = "II"


class DiagonalConvention(str, enum.Enum):
    PAPER_PRINTED = "paper_printed"
    EXCITATION_CONSERVING = "excitation_conserving"


class EigensolverError(RuntimeError):
    """The 4x4 eigensolver failed or returned an inaccurate decomposition."""


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of both sites.

    Parameters
    ----------
    omega_A, omega_B : float
        Field-mode angular frequencies (>= 0; zero only makes sense for
        inspecting the interaction part on its own).
    g_A, g_B : float
        Atom-field couplings (>= 0).
    delta : float
        Common atom-field detuning.
    scenario : Scenario
        Bell-pair family used for the initial state.
    """

    omega_A: float = 1.0
    omega_B: float = 1.0
    g_A: float = 1.0
    g_B: float = 1.0
    delta: float = 0.0
    scenario: Scenario = Scenario.I

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        for name in ("omega_A", "omega_B", "g_A", "g_B", "delta"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.g_A < 0 or self.g_B < 0:
            raise ValueError("couplings g_A, g_B must be nonnegative")
        if self.omega_A < 0 or self.omega_B < 0:
            raise ValueError("frequencies omega_A, omega_B must be nonnegative")

    def require_resonant(self) -> "SystemParams":
        """Return self, or raise if the detuning is nonzero.

        The closed-form amplitudes and the Bell-basis inversion signal are
        only defined on resonance.
        """
        if self.delta != 0:
            raise ValueError(
                f"the analytic pipeline requires delta = 0 (got {self.delta!r})")
        return self


@dataclass(frozen=True, order=True)
class BlockIndex:
    """Photon-number sector (n_A, n_B); see the module docstring for the basis."""

    n_A: int
    n_B: int

    def __post_init__(self):
        for name in ("n_A", "n_B"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def excitations(self) -> tuple[int, int]:
        """Conserved per-site excitation numbers (N_A, N_B)."""
        return self.n_A + 1, self.n_B + 1

    def photon_numbers(self) -> np.ndarray:
        """Field occupations (shape (4, 2)) of e1..e4."""
        a, b = self.n_A, self.n_B
        return np.array([[a + 1, b + 1], [a + 1, b], [a, b + 1], [a, b]])


@dataclass(frozen=True, eq=False)
class BlockHamiltonian:
    """Interaction matrix and free diagonal of one block."""

    interaction: np.ndarray
    diagonal: np.ndarray
    omega_Rabi_A: float
    omega_Rabi_B: float
    block: BlockIndex | None = None
    convention: DiagonalConvention = DiagonalConvention.EXCITATION_CONSERVING

    def __post_init__(self):
        inter = np.array(self.interaction, dtype=float)
        diag = np.array(self.diagonal, dtype=float)
        if inter.shape != (4, 4) or diag.shape != (4,):
            raise ValueError("block Hamiltonian must be 4x4 with a 4-vector diagonal")
        if not np.array_equal(inter, inter.T):
            raise ValueError("interaction matrix must be symmetric")
        inter.setflags(write=False)
        diag.setflags(write=False)
        object.__setattr__(self, "interaction", inter)
        object.__setattr__(self, "diagonal", diag)

    def matrix(self, include_diagonal: bool = False) -> np.ndarray:
        if include_diagonal:
            return self.interaction + np.diag(self.diagonal)
        return self.interaction.copy()


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues, orthogonal eigenvectors (columns) and mean energy."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    free_offset: float = 0.0
    residual: float = field(default=0.0, compare=False)


def rabi_frequency(g, n):
    """Single-site Rabi frequency g * sqrt(n + 1)."""
    if np.any(np.asarray(g) < 0):
        raise ValueError("coupling must be nonnegative")
    return np.multiply(g, np.sqrt(np.add(n, 1.0)))


def interaction_block(params: SystemParams, block: BlockIndex,
                      convention=DiagonalConvention.EXCITATION_CONSERVING) -> BlockHamiltonian:
    """Build the block Hamiltonian of sector ``block``.

    The interaction is Omega_A/2 (X x I) + Omega_B/2 (I x X) in the e1..e4
    basis. The free diagonal follows ``convention`` (see :func:`free_diagonal`).
    """
    om_a = float(rabi_frequency(params.g_A, block.n_A))
    om_b = float(rabi_frequency(params.g_B, block.n_B))
    h = np.zeros((4, 4))
    # site-B flips: e1<->e2, e3<->e4 ; site-A flips: e1<->e3, e2<->e4
    h[0, 1] = h[1, 0] = h[2, 3] = h[3, 2] = om_b / 2
    h[0, 2] = h[2, 0] = h[1, 3] = h[3, 1] = om_a / 2
    convention = DiagonalConvention(convention)
    return BlockHamiltonian(
        interaction=h,
        diagonal=free_diagonal(params, block, convention),
        omega_Rabi_A=om_a,
        omega_Rabi_B=om_b,
        block=block,
        convention=convention,
    )


def free_diagonal(params: SystemParams, block: BlockIndex,
                  convention=DiagonalConvention.EXCITATION_CONSERVING) -> np.ndarray:
    """Free (non-interacting) energies of e1..e4.

    ``paper_printed`` reproduces the published expressions term by term,
    including the doubled photon sum in the first entry and the missing
    atomic energies in the middle two. ``excitation_conserving`` uses
    N_A w_A + N_B w_B + (delta/2)(sz_A + sz_B), which is the same for all four
    states when delta = 0.
    """
    convention = DiagonalConvention(convention)
    wa, wb = params.omega_A, params.omega_B
    na, nb = block.n_A, block.n_B
    if convention is DiagonalConvention.PAPER_PRINTED:
        return np.array([
            na * wa + nb * wb + (1 + na) * wa + (1 + nb) * wb,
            (1 + na) * wa + nb * wb,
            na * wa + (1 + nb) * wb,
            na * wa + nb * wb,
        ], dtype=float)
    big_na, big_nb = block.excitations
    base = big_na * wa + big_nb * wb
    return base + 0.5 * params.delta * (_SIGMA_Z_A + _SIGMA_Z_B)


def _canonical_eigenvectors(values: np.ndarray, vectors: np.ndarray, scale: float) -> np.ndarray:
    """Fix the basis inside degenerate eigenspaces and the sign of every vector.

    Inside a cluster of (numerically) equal eigenvalues the vectors are rebuilt
    by Gram-Schmidt on the cluster projector applied to e1, e2, ... in order,
    so the result does not depend on what LAPACK happened to return. Each
    vector is then flipped so its first nonzero component is positive.
    """
    dim = len(values)
    out = vectors.copy()
    tol = 64 * np.finfo(float).eps * max(1.0, scale)
    start = 0
    while start < dim:
        stop = start + 1
        while stop < dim and values[stop] - values[stop - 1] <= tol:
            stop += 1
        if stop - start > 1:
            sub = vectors[:, start:stop]
            proj = sub @ sub.T
            basis = []
            for k in range(dim):
                v = proj[:, k].copy()
                for b in basis:
                    v -= (b @ v) * b
                nv = np.linalg.norm(v)
                if nv > 1e-6:
                    basis.append(v / nv)
                if len(basis) == stop - start:
                    break
            out[:, start:stop] = np.column_stack(basis)
        start = stop
    for j in range(dim):
        col = out[:, j]
        lead = np.flatnonzero(np.abs(col) > 1e-12)
        if lead.size and col[lead[0]] < 0:
            out[:, j] = -col
    return out


def block_spectrum(H: BlockHamiltonian, include_diagonal: bool = False) -> Spectrum:
    """Diagonalize a block Hamiltonian.

    Eigenvalues are sorted ascending. Without the diagonal they are
    {-(Oa+Ob)/2, -|Oa-Ob|/2, +|Oa-Ob|/2, +(Oa+Ob)/2}.

    Raises
    ------
    EigensolverError
        If LAPACK fails or the residual ||HV - V diag(E)|| exceeds
        1e-12 * max(1, ||H||).
    """
    mat = H.matrix(include_diagonal)
    scale = float(np.linalg.norm(mat, 2)) if mat.any() else 0.0
    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    vectors = _canonical_eigenvectors(values, vectors, scale)
    residual = float(np.linalg.norm(mat @ vectors - vectors * values))
    ortho = float(np.linalg.norm(vectors.T @ vectors - np.eye(4)))
    if not (residual <= EIGEN_TOL * max(1.0, scale) and ortho <= EIGEN_TOL):
        raise EigensolverError(
            f"inaccurate eigendecomposition (residual {residual:.3e}, "
            f"orthogonality {ortho:.3e})")
    values.setflags(write=False)
    vectors.setflags(write=False)
    return Spectrum(eigenvalues=values, eigenvectors=vectors,
                    free_offset=float(np.trace(mat)) / 4, residual=residual)
