"""Steady-state and transient covariance of the quadrature dynamics.

The stationary covariance matrix V solves A V + V A^T = -D.  Two
independent backends are provided: a Schur-decomposition solve from scipy
and a dense 36x36 vectorized solve.  They cross-validate each other in the
test suite; both enforce the same residual bound on every result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dynamics import DiffusionMatrix, DriftMatrix, stability_check

# Max-norm residual of A V + V A^T + D, relative to the max-norm of D.
RESIDUAL_RTOL = 1e-10

# Relative asymmetry tolerated before a covariance matrix is rejected.
_SYMMETRY_RTOL = 1e-12


class UnstableSystemError(RuntimeError):
    """The drift matrix is not asymptotically stable; no steady state exists."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return scipy.linalg.block_diag(*([j] * n_modes))


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a 2n x 2n covariance matrix, ascending.

    The eigenvalues of i*Omega*V come in +/- pairs; the returned array
    holds the n distinct moduli.  Physical states have all of them >= 1/2
    in the vacuum-variance-1/2 convention.
    """
    arr = np.asarray(v, dtype=float)
    n_modes = arr.shape[0] // 2
    eigvals = np.linalg.eigvals(1j * symplectic_form(n_modes) @ arr)
    return np.sort(np.abs(eigvals))[::2]


@dataclass(frozen=True)
class CovarianceMatrix:
    """6x6 symmetrized quadrature covariance, basis (dX, dY, dx1, dy1, dx2, dy2).

    Vacuum variance is 1/2 per quadrature.  Construction rejects matrices
    that are asymmetric beyond 1e-12 relative tolerance or have a
    nonpositive diagonal, and stores the exactly symmetrized array.
    """

    v: np.ndarray

    def __post_init__(self):
        arr = np.array(self.v, dtype=float)
        if arr.shape != (6, 6):
            raise ValueError(f"covariance matrix must be 6x6, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("covariance matrix must be finite")
        scale = max(float(np.abs(arr).max()), 1.0)
        asymmetry = float(np.abs(arr - arr.T).max())
        if asymmetry > _SYMMETRY_RTOL * scale:
            raise ValueError(
                f"covariance matrix asymmetric: max |v - v.T| = {asymmetry:.3e}"
            )
        arr = 0.5 * (arr + arr.T)
        if np.any(np.diag(arr) <= 0.0):
            raise ValueError("covariance diagonal entries must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "v", arr)

    def symplectic_eigenvalues(self) -> np.ndarray:
        return symplectic_eigenvalues(self.v)


def _drift_array(a) -> np.ndarray:
    return a.a if isinstance(a, DriftMatrix) else np.asarray(a, dtype=float)


def _diffusion_array(d) -> np.ndarray:
    return d.d if isinstance(d, DiffusionMatrix) else np.asarray(d, dtype=float)


def _require_stable(a: np.ndarray) -> None:
    report = stability_check(a)
    if not report.stable:
        raise UnstableSystemError(
            f"no steady state: largest drift eigenvalue real part is "
            f"{report.max_real_part:.6e}"
        )


def _check_residual(a: np.ndarray, d: np.ndarray, v: np.ndarray, solver: str) -> None:
    residual = float(np.abs(a @ v + v @ a.T + d).max())
    bound = RESIDUAL_RTOL * float(np.abs(d).max())
    if residual > bound:
        raise ArithmeticError(
            f"{solver}: residual {residual:.3e} exceeds bound {bound:.3e}; "
            f"the system is near marginal stability or badly conditioned"
        )


def solve_lyapunov(a, d) -> CovarianceMatrix:
    """Steady-state covariance via the Schur-based dense solver.

    Requires an asymptotically stable drift (raises UnstableSystemError
    otherwise).  The result is explicitly symmetrized and satisfies
    max|A V + V A^T + D| <= 1e-10 max|D|; a violation raises
    ArithmeticError with diagnostics instead of returning a bad matrix.
    """
    a_arr = _drift_array(a)
    d_arr = _diffusion_array(d)
    _require_stable(a_arr)
    v = scipy.linalg.solve_continuous_lyapunov(a_arr, -d_arr)
    v = 0.5 * (v + v.T)
    _check_residual(a_arr, d_arr, v, "solve_lyapunov")
    return CovarianceMatrix(v)


def solve_lyapunov_kron(a, d) -> CovarianceMatrix:
    """Steady-state covariance via dense vectorization.

    Writes the equation as (I (x) A + A (x) I) vec(V) = -vec(D) and solves
    the 36x36 linear system directly.  Independent of solve_lyapunov; the
    two must agree to 1e-9 on any stable input, which the test suite
    enforces.  Same contract and residual bound as solve_lyapunov.
    """
    a_arr = _drift_array(a)
    d_arr = _diffusion_array(d)
    _require_stable(a_arr)
    eye = np.eye(a_arr.shape[0])
    system = np.kron(eye, a_arr) + np.kron(a_arr, eye)
    try:
        vec = np.linalg.solve(system, -d_arr.flatten(order="F"))
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(
            "solve_lyapunov_kron: singular linear system (marginal stability)"
        ) from exc
    v = vec.reshape(a_arr.shape, order="F")
    v = 0.5 * (v + v.T)
    _check_residual(a_arr, d_arr, v, "solve_lyapunov_kron")
    return CovarianceMatrix(v)


def propagate_covariance(a, d, v0, t_final: float, dt: float) -> CovarianceMatrix:
    """Integrate dV/dt = A V + V A^T + D with fixed-step classical RK4.

    Time is measured in the reciprocal of the unit carried by ``a`` and
    ``d`` (seconds when they are in rad/s, 1/(2 pi MHz) in the package's
    internal units).  The step must satisfy dt * ||A||_2 <= 0.1; the
    integration is deterministic and the state is symmetrized after every
    step.  For stable drift and t_final much longer than the inverse
    stability margin the result converges to the solve_lyapunov output.
    """
    a_arr = _drift_array(a)
    d_arr = _diffusion_array(d)
    v = np.array(v0.v if isinstance(v0, CovarianceMatrix) else v0, dtype=float)
    if v.shape != a_arr.shape:
        raise ValueError(f"v0 must have shape {a_arr.shape}, got {v.shape}")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_final < 0.0:
        raise ValueError(f"t_final must be nonnegative, got {t_final}")
    a_norm = float(np.linalg.norm(a_arr, 2))
    if dt * a_norm > 0.1:
        raise ValueError(
            f"dt too large: dt * ||A|| = {dt * a_norm:.3g} > 0.1; "
            f"use dt <= {0.1 / a_norm:.3g}"
        )

    def rhs(m):
        return a_arr @ m + m @ a_arr.T + d_arr

    def step(m, h):
        k1 = rhs(m)
        k2 = rhs(m + 0.5 * h * k1)
        k3 = rhs(m + 0.5 * h * k2)
        k4 = rhs(m + h * k3)
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return 0.5 * (m + m.T)

    n_steps = int(t_final // dt)
    remainder = t_final - n_steps * dt
    for _ in range(n_steps):
        v = step(v, dt)
    if remainder > 0.0:
        v = step(v, remainder)
    return CovarianceMatrix(v)
