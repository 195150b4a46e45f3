"""Entanglement and squeezing diagnostics computed from a covariance matrix.

Every threshold in this module is tied to the vacuum-variance-1/2
convention of the covariance matrices: the Duan sum certifies
entanglement below 1, the Mancini product below 1/4, and the partial
transpose certifies it when 2 nu_minus < 1.  These bounds are module
constants, never configurable; mixing variance conventions is the
dominant bug class in this kind of calculation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .steadystate import CovarianceMatrix, symplectic_form, symplectic_eigenvalues

VACUUM_VARIANCE = 0.5

# Separable two-mode states satisfy duan_sum >= DUAN_BOUND and
# mancini_product >= MANCINI_BOUND; both criteria are sufficient for
# entanglement when violated, not necessary.
DUAN_BOUND = 1.0
MANCINI_BOUND = 0.25

# Relative imaginary residue tolerated in the partial-transpose spectrum.
_EIG_IMAG_RTOL = 1e-9

# Partial transposition of the second mode: y2 -> -y2.
_PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])


@dataclass(frozen=True)
class TwoModeCM:
    """4x4 symmetrized covariance of the magnon pair, basis (dx1, dy1, dx2, dy2)."""

    v: np.ndarray

    def __post_init__(self):
        arr = np.array(self.v, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"two-mode covariance must be 4x4, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("two-mode covariance must be finite")
        scale = max(float(np.abs(arr).max()), 1.0)
        asymmetry = float(np.abs(arr - arr.T).max())
        if asymmetry > 1e-12 * scale:
            raise ValueError(
                f"two-mode covariance asymmetric: max |v - v.T| = {asymmetry:.3e}"
            )
        arr = 0.5 * (arr + arr.T)
        if np.any(np.diag(arr) <= 0.0):
            raise ValueError("two-mode covariance diagonal must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "v", arr)

    def symplectic_eigenvalues(self) -> np.ndarray:
        return symplectic_eigenvalues(self.v)


@dataclass(frozen=True)
class EntanglementResult:
    """Logarithmic negativity and the partial-transpose symplectic eigenvalue."""

    log_negativity: float
    nu_minus: float

    def __post_init__(self):
        if not self.nu_minus > 0.0:
            raise ValueError(f"nu_minus must be positive, got {self.nu_minus}")
        expected = max(0.0, -math.log(2.0 * self.nu_minus))
        if self.log_negativity != expected:
            raise ValueError(
                f"inconsistent result: log_negativity {self.log_negativity!r} "
                f"!= max(0, -ln(2 nu_minus)) = {expected!r}"
            )


@dataclass(frozen=True)
class CollectiveVariances:
    """Variances of the sum/difference collective magnon quadratures.

    M = (m1 + m2)/sqrt(2) and m = (m1 - m2)/sqrt(2); var_Mx etc. are the
    variances of their position- and momentum-like quadratures, vacuum = 1/2.
    """

    var_Mx: float
    var_My: float
    var_mx: float
    var_my: float


def reduce_to_magnons(cm: CovarianceMatrix) -> TwoModeCM:
    """Principal 4x4 submatrix of the magnon quadratures (rows/cols 2..5)."""
    return TwoModeCM(cm.v[2:, 2:])


def log_negativity(two_mode: TwoModeCM) -> EntanglementResult:
    """Logarithmic negativity E = max(0, -ln(2 nu_minus)) of a magnon pair.

    nu_minus is the smallest modulus among the eigenvalues of
    i Omega P V P, with P = diag(1, 1, 1, -1) the partial transposition of
    the second mode.  The eigenvalues come in +/- pairs that are real for
    physical input; an imaginary residue above 1e-9 (relative) signals an
    unphysical covariance matrix and raises ArithmeticError.
    """
    v_pt = _PARTIAL_TRANSPOSE @ two_mode.v @ _PARTIAL_TRANSPOSE
    eigvals = np.linalg.eigvals(1j * symplectic_form(2) @ v_pt)
    scale = max(float(np.abs(eigvals).max()), 1.0)
    imag_residue = float(np.abs(eigvals.imag).max())
    if imag_residue > _EIG_IMAG_RTOL * scale:
        raise ArithmeticError(
            f"partial-transpose spectrum has imaginary residue "
            f"{imag_residue:.3e}; the input covariance matrix is unphysical"
        )
    nu_minus = float(np.abs(eigvals).min())
    if nu_minus <= 0.0:
        raise ArithmeticError("singular partial-transpose spectrum (nu_minus = 0)")
    return EntanglementResult(
        log_negativity=max(0.0, -math.log(2.0 * nu_minus)),
        nu_minus=nu_minus,
    )


def collective_variances(cm: CovarianceMatrix) -> CollectiveVariances:
    """Variances of the collective quadratures from the full covariance.

    var_Mx = (<dx1^2> + <dx2^2> + 2<dx1 dx2>)/2 and var_mx the same with
    the cross term negated; the y quadratures are analogous.  The pair
    (var_Mx, var_mx) is an orthogonal rotation of (<dx1^2>, <dx2^2>), so
    var_Mx + var_mx reproduces their sum.
    """
    v = cm.v
    half_x = 0.5 * (v[2, 2] + v[4, 4])
    half_y = 0.5 * (v[3, 3] + v[5, 5])
    cross_x = v[2, 4]
    cross_y = v[3, 5]
    return CollectiveVariances(
        var_Mx=half_x + cross_x,
        var_My=half_y + cross_y,
        var_mx=half_x - cross_x,
        var_my=half_y - cross_y,
    )


def duan_sum(cm: CovarianceMatrix) -> float:
    """Inseparability sum <dMx^2> + <dmy^2>; below 1 certifies entanglement."""
    cv = collective_variances(cm)
    return cv.var_Mx + cv.var_my


def mancini_product(cm: CovarianceMatrix) -> float:
    """Inseparability product <dMx^2><dmy^2>; below 1/4 certifies entanglement."""
    cv = collective_variances(cm)
    return cv.var_Mx * cv.var_my


def squeezing_db(variance: float) -> float:
    """Squeezing of a quadrature variance in dB relative to vacuum.

    Returns -10 log10(variance / (1/2)); positive values mean noise below
    the vacuum level.
    """
    if variance <= 0.0:
        raise ValueError(f"variance must be positive, got {variance}")
    return -10.0 * math.log10(variance / VACUUM_VARIANCE)


def input_squeezing_db(r: float) -> float:
    """Squeezing of the drive field itself: 10 log10(e^(2r)) = 20 r / ln 10."""
    if r < 0.0:
        raise ValueError(f"squeezing parameter r must be nonnegative, got {r}")
    return 20.0 * r / math.log(10.0)
