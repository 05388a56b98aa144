"""Dense float64 kernels shared by the multiplicative update rules.

Matrices are plain 2-D ``numpy.ndarray`` objects of dtype float64; the
functions here add shape and sign checks on top of numpy.
"""
import numpy as np

from .errors import DimensionError, DomainError

DEFAULT_EPS = 1e-9


def as_nonneg(A, name="matrix"):
    """Return ``A`` as a 2-D float64 array, rejecting negative or non-finite entries."""
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} contains NaN or infinite entries")
    if A.size and A.min() < 0:
        raise DomainError(f"{name} contains negative entries (min={A.min():g})")
    return A


def _same_shape(*arrays):
    shape = arrays[0].shape
    for a in arrays[1:]:
        if a.shape != shape:
            raise DimensionError(f"shape mismatch: {shape} vs {a.shape}")


def frobenius_sq(A, B=None):
    """Squared Frobenius distance ``sum((A - B)**2)``.

    ``B=None`` or a scalar 0 gives the squared norm of ``A``.
    """
    A = np.asarray(A, dtype=np.float64)
    if B is None or np.isscalar(B):
        D = A - (0.0 if B is None else B)
    else:
        B = np.asarray(B, dtype=np.float64)
        _same_shape(A, B)
        D = A - B
    return float(np.vdot(D, D))


def matmul(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def hadamard_update(theta, numer, denom, eps=DEFAULT_EPS):
    """Multiplicative step ``theta * numer / (denom + eps)``.

    Zero entries of ``theta`` stay zero, so callers must initialise
    strictly positive.
    """
    theta = np.asarray(theta, dtype=np.float64)
    numer = np.asarray(numer, dtype=np.float64)
    denom = np.asarray(denom, dtype=np.float64)
    _same_shape(theta, numer, denom)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = theta * (numer / (denom + eps))
    # only reachable with eps == 0: treat 0/0 as ratio 1
    stalled = (numer == 0) & (denom + eps == 0)
    out[stalled] = theta[stalled]
    out[theta == 0] = 0.0
    return out
