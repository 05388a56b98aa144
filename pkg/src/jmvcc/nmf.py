"""Single-view NMF with Lee-Seung multiplicative updates."""
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .matcore import DEFAULT_EPS, as_nonneg, frobenius_sq, hadamard_update


@dataclass
class NmfFactors:
    """``X ~ F @ G`` with centroids ``F`` (M x K) and partitions ``G`` (K x N)."""

    F: np.ndarray
    G: np.ndarray

    @property
    def K(self):
        return self.F.shape[1]


def random_factors(X, K, rng):
    """Uniform [0.1, 1.1) entries scaled by ``sqrt(mean(X) / K)``.

    The 0.1 floor keeps every entry away from zero, where multiplicative
    updates would lock it.
    """
    M, N = X.shape
    scale = np.sqrt(max(X.mean(), np.finfo(float).tiny) / K)
    F = scale * (0.1 + rng.random((M, K)))
    G = scale * (0.1 + rng.random((K, N)))
    return NmfFactors(F, G)


def nmf_step(X, F, G, eps=DEFAULT_EPS):
    """One sweep: G first, then F (same order as the multi-view driver)."""
    FtF = F.T @ F
    G = hadamard_update(G, F.T @ X, FtF @ G, eps)
    GGt = G @ G.T
    F = hadamard_update(F, X @ G.T, F @ GGt, eps)
    return F, G


def nmf_fit(X, K, iters=200, seed=None, eps=DEFAULT_EPS, tol=1e-6, init=None):
    """Factorize a non-negative matrix by minimizing ``||X - FG||_F^2``.

    Parameters
    ----------
    X : array_like, shape (M, N)
        Non-negative data, one sample per column.
    K : int
        Number of components, ``1 <= K <= min(M, N)``.
    iters : int
        Maximum number of update sweeps.
    seed : int or numpy Generator, optional
        Seeds the random initialization.
    eps : float
        Added to every update denominator.
    tol : float
        Stop once the relative objective change of one sweep drops below
        this value. ``tol=0`` runs all ``iters`` sweeps.
    init : NmfFactors, optional
        Starting point; overrides the random initialization.

    Returns
    -------
    factors : NmfFactors
    trace : list of float
        Objective after each sweep.
    """
    X = as_nonneg(X, "X")
    M, N = X.shape
    if not 1 <= K <= min(M, N):
        raise ParameterError(f"K={K} outside [1, {min(M, N)}]")
    if iters < 0:
        raise ParameterError("iters must be >= 0")
    if init is None:
        init = random_factors(X, K, np.random.default_rng(seed))
    F, G = init.F.copy(), init.G.copy()

    trace = []
    prev = frobenius_sq(X, F @ G)
    for _ in range(iters):
        F, G = nmf_step(X, F, G, eps)
        obj = frobenius_sq(X, F @ G)
        trace.append(obj)
        if abs(prev - obj) / max(prev, eps) < tol:
            break
        prev = obj
    return NmfFactors(F, G), trace
