"""
Dressed-state transforms for one photon-number block.

Two routes produce the 4x4 orthogonal matrix whose rows are the dressed
states of a block:

* :func:`build_transform` evaluates the published six-angle parameterization
  entry by entry. The printed entries are not mutually consistent, so the
  result is generally *not* orthogonal; its defect is measured and kept.
* :func:`numeric_diagonalizer` takes the rows from the block eigenvectors.
  All physics downstream uses this route.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import BlockHamiltonian, block_spectrum

__all__ = [
    "TransformSource",
    "MixingAngles",
    "OrthogonalTransform",
    "build_transform",
    "paper_angles",
    "consistency_residual",
    "numeric_diagonalizer",
]


class TransformSource(str, enum.Enum):
    BOSE_PARAMETERIZATION = "bose_parameterization"
    NUMERIC_EIGENVECTORS = "numeric_eigenvectors"


@dataclass(frozen=True)
class MixingAngles:
    """Six rotation angles in radians, stored as given (no branch reduction)."""

    theta_1: float
    theta_2: float
    theta_3: float
    theta_4: float
    theta_5: float
    theta_6: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("mixing angles must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_1, self.theta_2, self.theta_3,
                         self.theta_4, self.theta_5, self.theta_6], dtype=float)


@dataclass(frozen=True, eq=False)
class OrthogonalTransform:
    matrix: np.ndarray
    orthogonality_residual: float
    source: TransformSource


def _orthogonality_residual(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat @ mat.T - np.eye(mat.shape[0])))


def build_transform(angles: MixingAngles) -> OrthogonalTransform:
    """Evaluate the published 16 matrix entries for the given angles.

    The entries are transcribed literally. The one place the printed text is
    not a well-formed expression (row 2, column 2 has an unmatched closing
    parenthesis) is read as ``s1 c2 s5 s6 + (c1 c2 c3 + s2 s3) c6 + ...``,
    matching the bracketed group printed in the neighbouring entry. No other
    term is altered, so e.g. all-zero angles do *not* give the identity.
    """
    s1, s2, s3, s4, s5, s6 = np.sin(angles.as_array())
    c1, c2, c3, c4, c5, c6 = np.cos(angles.as_array())
    a = np.empty((4, 4))
    a[0, 0] = c1 * c5 + s1 * s3 * s4 * s5
    a[0, 1] = c1 * s5 * s6 + s1 * c3 * c6 + s1 * s3 * s4 * c5 * s6
    a[0, 2] = s1 * s3 * c4
    a[0, 3] = -c1 * s5 * s6 - s1 * c3 * s6 + s1 * s3 * s4 * c5 * s6

    p2 = c1 * c2 * s3 - s2 * c3
    a[1, 0] = -s1 * c2 * c5 + p2 * s4 * s5
    a[1, 1] = s1 * c2 * s5 * s6 + (c1 * c2 * c3 + s2 * s3) * c6 + p2 * s4 * c5 * s6
    a[1, 2] = p2 * c4
    a[1, 3] = s1 * c2 * s5 * c6 - (c1 * c2 * c3 + s2 * s3) * c6 + p2 * s4 * c5 * s6

    p3 = c1 * s2 * s3 + c2 * c3
    a[2, 0] = -s1 * s2 * c5 + p3 * s4
    a[2, 1] = s1 * s2 * s5 * s6 + (c1 * c2 * c3 - c2 * s3) * c6 + p3 * s4 * c5 * s6
    a[2, 2] = p3 * c4
    a[2, 3] = s1 * s2 * s5 * c6 - (c1 * s2 * c3 - c2 * s3) * s6 + p3 * s4 * c5 * s6

    a[3, 0] = c4 * s5
    a[3, 1] = c4 * c5 * s6
    a[3, 2] = -s4
    a[3, 3] = c4 * c5 * c6
    return OrthogonalTransform(matrix=a,
                               orthogonality_residual=_orthogonality_residual(a),
                               source=TransformSource.BOSE_PARAMETERIZATION)


def paper_angles() -> MixingAngles:
    """The six published mixing angles for the resonant block."""
    return MixingAngles(
        theta_1=float(np.arccos(1 / np.sqrt(6))),
        theta_2=float(np.arccos(2 / np.sqrt(5))),
        theta_3=float(np.arccos(-np.sqrt(3 / 5))),
        theta_4=float(np.arccos(-np.sqrt(3) / 2)),
        theta_5=float(np.arccos(np.sqrt(2 / 3))),
        theta_6=float(np.arccos(1 / np.sqrt(2))),
    )


def consistency_residual(T: OrthogonalTransform | np.ndarray,
                         H: BlockHamiltonian | np.ndarray) -> tuple[float, np.ndarray]:
    """Off-diagonal Frobenius norm and diagonal of T H T^T.

    ``H`` may be a :class:`BlockHamiltonian` (its interaction matrix is used)
    or a plain symmetric array.
    """
    t = T.matrix if isinstance(T, OrthogonalTransform) else np.asarray(T, dtype=float)
    h = H.interaction if isinstance(H, BlockHamiltonian) else np.asarray(H, dtype=float)
    if t.shape != (4, 4) or h.shape != (4, 4):
        raise ValueError("expected 4x4 matrices")
    m = t @ h @ t.T
    diag = np.diag(m).copy()
    return float(np.linalg.norm(m - np.diag(diag))), diag


def numeric_diagonalizer(H: BlockHamiltonian, include_diagonal: bool = False) -> OrthogonalTransform:
    """Dressed-state rows from the block eigenvectors, ordered like :func:`block_spectrum`."""
    spec = block_spectrum(H, include_diagonal=include_diagonal)
    t = np.array(spec.eigenvectors.T)
    return OrthogonalTransform(matrix=t,
                               orthogonality_residual=_orthogonality_residual(t),
                               source=TransformSource.NUMERIC_EIGENVECTORS)
