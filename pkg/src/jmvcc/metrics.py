"""External cluster validity scores and consensus discretization."""
import numpy as np

from .errors import DimensionError


def discretize(Gstar):
    """Hard labels from a K x N membership matrix: the row of each column's maximum.

    Ties go to the lowest row index.
    """
    Gstar = np.asarray(Gstar, dtype=np.float64)
    if Gstar.ndim != 2 or Gstar.size == 0:
        raise DimensionError(f"need a non-empty K x N matrix, got shape {Gstar.shape}")
    return np.argmax(Gstar, axis=0)


def contingency(pred, truth):
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise DimensionError(f"label shapes differ: {pred.shape} vs {truth.shape}")
    _, p = np.unique(pred, return_inverse=True)
    _, t = np.unique(truth, return_inverse=True)
    table = np.zeros((p.max(initial=-1) + 1, t.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(table, (p, t), 1)
    return table


def purity(pred, truth):
    """Fraction of samples that belong to the majority class of their cluster."""
    table = contingency(pred, truth)
    n = table.sum()
    if n == 0:
        raise DimensionError("empty labelings")
    return float(table.max(axis=1).sum() / n)


def _entropy(counts, n):
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth):
    """``2 I(P; T) / (H(P) + H(T))``; 0 when both labelings are constant."""
    table = contingency(pred, truth)
    n = table.sum()
    if n == 0:
        raise DimensionError("empty labelings")
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)
    h = _entropy(rows, n) + _entropy(cols, n)
    if h == 0:
        return 0.0
    i, j = np.nonzero(table)
    nij = table[i, j]
    mi = float((nij / n * np.log(nij * n / (rows[i] * cols[j]))).sum())
    return float(min(max(2.0 * mi / h, 0.0), 1.0))
