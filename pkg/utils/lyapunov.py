"""
Module: lyapunov
----------------
Closed-form solution of the 2x2 continuous Lyapunov equation A^T P + P A = -Q.

The symmetric unknown P = [[x, y], [y, z]] reduces the equation to a 3x3 linear system,
solved with numpy. ``lyapunov_pair`` builds the ARTDC design matrix for the companion
form A = [[0, 1], [-K, -2 Omega]] and checks the conditions the controller relies on.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from core.errors import AnalysisError, LyapunovConditionError, NotHurwitzError, NotPositiveDefiniteError

# Configure logging
logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]

RESIDUAL_TOL = 1e-10
RATIO_TOL = 1e-9


def _as_2x2(M: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(M, dtype=float)
    if arr.shape != (2, 2):
        raise AnalysisError(f"{name} must be 2x2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise AnalysisError(f"{name} has non-finite entries")
    return arr


def check_spd(M: ArrayLike, name: str = "matrix") -> np.ndarray:
    """
    Validate that a 2x2 matrix is symmetric positive-definite.

    Raises:
        NotPositiveDefiniteError: If M is asymmetric or has a non-positive eigenvalue
    """
    arr = _as_2x2(M, name)
    if not np.allclose(arr, arr.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(arr).max())):
        raise NotPositiveDefiniteError(f"{name} is not symmetric: {arr.tolist()}")
    eig = np.linalg.eigvalsh(arr)
    if eig[0] <= 0:
        raise NotPositiveDefiniteError(f"{name} is not positive-definite, eigenvalues {eig.tolist()}")
    return arr


def check_hurwitz(A: ArrayLike) -> np.ndarray:
    """
    Validate that every eigenvalue of A has negative real part.

    Raises:
        NotHurwitzError: Carrying the eigenvalues when A is not Hurwitz
    """
    arr = _as_2x2(A, "A")
    eig = np.linalg.eigvals(arr)
    if np.any(eig.real >= 0):
        raise NotHurwitzError(f"A is not Hurwitz, eigenvalues {[complex(v) for v in eig]}", eigenvalues=eig.tolist())
    return arr


def companion_matrix(K: float, omega: float) -> np.ndarray:
    """A = [[0, 1], [-K, -2 Omega]]."""
    return np.array([[0.0, 1.0], [-K, -2.0 * omega]])


def residual(A: ArrayLike, P: ArrayLike, Q: ArrayLike) -> float:
    """Frobenius norm of A^T P + P A + Q."""
    A, P, Q = (np.asarray(m, dtype=float) for m in (A, P, Q))
    return float(np.linalg.norm(A.T @ P + P @ A + Q, ord="fro"))


def solve_lyapunov(A: ArrayLike, Q: ArrayLike) -> np.ndarray:
    """
    Solve A^T P + P A = -Q for symmetric positive-definite P.

    Args:
        A: Hurwitz 2x2 state matrix
        Q: Symmetric positive-definite 2x2 matrix

    Returns:
        The unique symmetric solution P

    Raises:
        NotHurwitzError: If A is not Hurwitz
        NotPositiveDefiniteError: If Q (or the resulting P) is not SPD
        AnalysisError: If the residual exceeds the tolerance
    """
    A = check_hurwitz(A)
    Q = check_spd(Q, "Q")
    (a, b), (c, d) = A
    M = np.array(
        [
            [2 * a, 2 * c, 0.0],
            [b, a + d, c],
            [0.0, 2 * b, 2 * d],
        ]
    )
    x, y, z = np.linalg.solve(M, -np.array([Q[0, 0], Q[0, 1], Q[1, 1]]))
    P = np.array([[x, y], [y, z]])

    res = residual(A, P, Q)
    if res >= RESIDUAL_TOL * max(1.0, float(np.abs(Q).max())):
        raise AnalysisError(f"Lyapunov residual {res:.3g} exceeds tolerance")
    check_spd(P, "P")
    return P


def consistent_q(K: float, q11: float, q12: float = 0.0) -> np.ndarray:
    """
    Weight matrix whose Lyapunov solution satisfies P3^-1 P2 = Omega for every Omega.

    The companion form gives P2 / P3 = Omega exactly when q22 = q11 / K.
    """
    if K <= 0 or q11 <= 0:
        raise AnalysisError("K and q11 must be positive")
    return np.array([[q11, q12], [q12, q11 / K]])


@dataclass(frozen=True)
class LyapunovPair:
    """Design matrix P of the ARTDC switching variable together with its inputs."""

    P: np.ndarray
    Q: np.ndarray
    K: float
    omega: float

    @property
    def A(self) -> np.ndarray:
        return companion_matrix(self.K, self.omega)

    @property
    def P1(self) -> float:
        return float(self.P[0, 0])

    @property
    def P2(self) -> float:
        return float(self.P[0, 1])

    @property
    def P3(self) -> float:
        return float(self.P[1, 1])

    @property
    def residual(self) -> float:
        return residual(self.A, self.P, self.Q)


def lyapunov_pair(K: float, omega: float, Q: ArrayLike) -> LyapunovPair:
    """
    Solve for the ARTDC design matrix and check P1, P2, P3 > 0 and P3^-1 P2 = Omega.

    Raises:
        NotHurwitzError: If K or Omega make A unstable
        NotPositiveDefiniteError: If Q is not SPD
        LyapunovConditionError: If P violates the sign or ratio conditions
    """
    A = companion_matrix(K, omega)
    P = solve_lyapunov(A, Q)
    pair = LyapunovPair(P=P, Q=np.asarray(Q, dtype=float), K=float(K), omega=float(omega))
    if min(pair.P1, pair.P2, pair.P3) <= 0:
        raise LyapunovConditionError(f"P entries must be positive, got P1={pair.P1:.6g}, P2={pair.P2:.6g}, P3={pair.P3:.6g}")
    ratio = pair.P2 / pair.P3
    if abs(ratio - omega) > RATIO_TOL * max(1.0, abs(omega)):
        raise LyapunovConditionError(
            f"P3^-1 P2 = {ratio:.12g} differs from Omega = {omega:.12g}; use q22 = q11 / K"
        )
    logger.debug(f"Lyapunov pair for K={K}, Omega={omega}: P={P.tolist()}")
    return pair
