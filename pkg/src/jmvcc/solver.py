"""Joint multi-view collaborative clustering (JMVCC).

Each view ``v`` gets its own factorization ``X[v] ~ F[v] @ G[v]``. Local
partitions are pulled towards each other through the collaboration term
``||F[v] (G[v] - G[w])||^2`` and towards a consensus partition ``Gstar``
through ``||G[v] - Gstar||^2``. Collaboration weights ``alpha`` and fusion
weights ``beta`` are re-estimated in closed form at every iteration.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DatasetError, DimensionError, ParameterError
from .matcore import DEFAULT_EPS, as_nonneg, frobenius_sq, hadamard_update

logger = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-6


@dataclass
class JmvccConfig:
    K: int
    gamma: float = 2.0
    max_iters: int = 300
    tol: float = 1e-6
    restarts: int = 10
    seed: int | None = 0
    eps: float = DEFAULT_EPS
    eq8_literal: bool = False
    invert_alpha_exponent: bool = False
    jobs: int = 1

    def validate(self):
        if self.K < 1:
            raise ParameterError("K must be >= 1")
        if not self.gamma > 1:
            raise ParameterError("gamma must be > 1")
        if self.max_iters < 0:
            raise ParameterError("max_iters must be >= 0")
        if self.restarts < 1:
            raise ParameterError("restarts must be >= 1")
        if not self.eps > 0:
            raise ParameterError("eps must be > 0")
        if self.tol < 0:
            raise ParameterError("tol must be >= 0")
        if self.jobs < 1:
            raise ParameterError("jobs must be >= 1")
        return self


@dataclass
class JmvccState:
    """Iterate of the solver.

    ``F[v]`` is M_v x K, ``G[v]`` and ``Gstar`` are K x N, ``alpha`` is
    V x V with a zero diagonal and ``beta`` has length V.
    """

    F: list
    G: list
    Gstar: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def V(self):
        return len(self.G)

    def copy(self):
        return JmvccState(
            [f.copy() for f in self.F],
            [g.copy() for g in self.G],
            self.Gstar.copy(),
            self.alpha.copy(),
            self.beta.copy(),
        )


@dataclass
class RunReport:
    """Outcome of a fit; ``to_dict`` gives the JSON layout written by the CLI."""

    config: dict
    best_restart: int
    objective_trace: list
    restart_traces: list
    restart_objectives: list
    alpha: list
    beta: list
    converged: bool
    monotone_violation: bool
    restart_violations: list
    n_iter: int
    scores: dict | None = None
    timing: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        if d["scores"] is None:
            del d["scores"]
        return d


def uniform_weights(V):
    alpha = np.full((V, V), 1.0 / (V - 1)) if V > 1 else np.zeros((V, V))
    np.fill_diagonal(alpha, 0.0)
    return alpha, np.full(V, 1.0 / V)


def check_state(X, S):
    V = len(X)
    if len(S.F) != V or len(S.G) != V:
        raise DimensionError(f"state has {len(S.F)}/{len(S.G)} views, data has {V}")
    K, N = S.Gstar.shape
    for v in range(V):
        M = X[v].shape[0]
        if S.F[v].shape != (M, K) or S.G[v].shape != (K, N) or X[v].shape[1] != N:
            raise DimensionError(
                f"view {v}: X {X[v].shape}, F {S.F[v].shape}, G {S.G[v].shape}, Gstar {(K, N)}"
            )
    if S.alpha.shape != (V, V) or S.beta.shape != (V,):
        raise DimensionError("weight shapes do not match the number of views")


# -- objective terms ---------------------------------------------------------


def collaboration_term(F_v, G_v, G_w):
    """``||F_v (G_v - G_w)||_F^2``."""
    if G_v.shape != G_w.shape or F_v.shape[1] != G_v.shape[0]:
        raise DimensionError(f"F {F_v.shape}, G_v {G_v.shape}, G_w {G_w.shape}")
    return frobenius_sq(F_v @ (G_v - G_w))


def utility_term(G_v, Gstar):
    """Disagreement ``||G_v - Gstar||_F^2`` between a local and the consensus partition."""
    return frobenius_sq(G_v, Gstar)


def collaboration_matrix(S):
    """V x V matrix of collaboration terms, zero on the diagonal."""
    V = S.V
    H = np.zeros((V, V))
    for v in range(V):
        for w in range(V):
            if w != v:
                H[v, w] = collaboration_term(S.F[v], S.G[v], S.G[w])
    return H


def utility_vector(S):
    return np.array([utility_term(g, S.Gstar) for g in S.G])


def objective(X, S):
    """Joint loss: reconstruction + alpha-weighted collaboration + beta-weighted utility."""
    check_state(X, S)
    total = 0.0
    H = collaboration_matrix(S)
    for v in range(S.V):
        total += frobenius_sq(X[v], S.F[v] @ S.G[v])
        total += float(S.alpha[v] @ H[v])
    total += float(S.beta @ utility_vector(S))
    return total


# -- multiplicative updates --------------------------------------------------


def update_G(v, X, S, eps=DEFAULT_EPS):
    F, G = S.F[v], S.G[v]
    FtF = F.T @ F
    others = [w for w in range(S.V) if w != v]
    a = S.alpha[v, others]
    pulled = sum((a_w * S.G[w] for a_w, w in zip(a, others)), np.zeros_like(G))
    numer = F.T @ X[v] + FtF @ pulled + S.beta[v] * S.Gstar
    denom = (1.0 + a.sum()) * (FtF @ G) + S.beta[v] * G
    return hadamard_update(G, numer, denom, eps)


def update_F(v, X, S, eps=DEFAULT_EPS, literal=False):
    """Update the centroids of view ``v``.

    The collaboration gradient ``2 F (G - G_w)(G - G_w)^T`` is split into
    ``F (G G_w^T + G_w G^T)`` (numerator) and ``F (G G^T + G_w G_w^T)``
    (denominator). With ``literal=True`` the denominator instead uses
    ``F (G G^T + G_w G^T)``, the form with a cross term shared by numerator
    and denominator.
    """
    F, G = S.F[v], S.G[v]
    K = G.shape[0]
    GGt = G @ G.T
    cross_num = np.zeros((K, K))
    cross_den = np.zeros((K, K))
    for w in range(S.V):
        if w == v or S.alpha[v, w] == 0:
            continue
        a = S.alpha[v, w]
        Gw = S.G[w]
        GGw = G @ Gw.T
        cross_num += a * (GGw + GGw.T)
        cross_den += a * (GGt + (GGw.T if literal else Gw @ Gw.T))
    numer = X[v] @ G.T + F @ cross_num
    denom = F @ (GGt + cross_den)
    return hadamard_update(F, numer, denom, eps)


def update_Gstar(S, eps=DEFAULT_EPS):
    numer = sum((b * g for b, g in zip(S.beta, S.G)), np.zeros_like(S.Gstar))
    denom = S.beta.sum() * S.Gstar
    return hadamard_update(S.Gstar, numer, denom, eps)


def simplex_weights(values, gamma, invert=False):
    """Normalized ``values ** (1 / (gamma - 1))``; uniform when every value is 0.

    ``invert=True`` flips the sign of the exponent so that small values get
    large weights; zeros then share all the mass.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return values
    if not np.any(values > 0):
        return np.full(values.size, 1.0 / values.size)
    p = 1.0 / (gamma - 1.0)
    if invert:
        zero = values == 0
        if zero.any():
            return zero / zero.sum()
        p = -p
    # rescale before powering to keep large exponents finite
    w = (values / values.max()) ** p
    return w / w.sum()


def update_alpha(S, gamma, invert=False, H=None):
    if H is None:
        H = collaboration_matrix(S)
    V = S.V
    alpha = np.zeros((V, V))
    for v in range(V):
        others = [w for w in range(V) if w != v]
        alpha[v, others] = simplex_weights(H[v, others], gamma, invert)
    return alpha


def update_beta(S, gamma, U=None):
    if U is None:
        U = utility_vector(S)
    return simplex_weights(U, gamma)


# -- driver ------------------------------------------------------------------


def init_state(X, K, rng):
    """Random start: every entry uniform in [0.1, 1.1), scaled per view."""
    N = X[0].shape[1]
    F, G, scales = [], [], []
    for Xv in X:
        scale = np.sqrt(max(Xv.mean(), np.finfo(float).tiny) / K)
        F.append(scale * (0.1 + rng.random((Xv.shape[0], K))))
        G.append(scale * (0.1 + rng.random((K, N))))
        scales.append(scale)
    Gstar = float(np.mean(scales)) * (0.1 + rng.random((K, N)))
    alpha, beta = uniform_weights(len(X))
    return JmvccState(F, G, Gstar, alpha, beta)


def iterate(X, S, cfg, timing=None):
    """One pass of the algorithm: weights, local partitions, centroids, consensus.

    Every per-view update inside a sweep reads the state as it was when the
    sweep started, so the sweep order over views does not matter.
    """
    clock = time.perf_counter
    t0 = clock()
    S.alpha = update_alpha(S, cfg.gamma, cfg.invert_alpha_exponent)
    S.beta = update_beta(S, cfg.gamma)
    t1 = clock()
    S.G = [update_G(v, X, S, cfg.eps) for v in range(S.V)]
    t2 = clock()
    S.F = [update_F(v, X, S, cfg.eps, cfg.eq8_literal) for v in range(S.V)]
    t3 = clock()
    S.Gstar = update_Gstar(S, cfg.eps)
    t4 = clock()
    if timing is not None:
        timing["weights"] += t1 - t0
        timing["G"] += t2 - t1
        timing["F"] += t3 - t2
        timing["Gstar"] += t4 - t3
    return S


def _run_restart(X, cfg, seed_seq, init=None, callback=None, index=0):
    timing = dict.fromkeys(("init", "weights", "G", "F", "Gstar", "objective"), 0.0)
    t = time.perf_counter()
    S = init.copy() if init is not None else init_state(X, cfg.K, np.random.default_rng(seed_seq))
    timing["init"] = time.perf_counter() - t

    trace = []
    converged = False
    violation = False
    prev = objective(X, S)
    for _ in range(cfg.max_iters):
        iterate(X, S, cfg, timing)
        if callback is not None:
            callback(index, len(trace), S)
        t = time.perf_counter()
        obj = objective(X, S)
        timing["objective"] += time.perf_counter() - t
        trace.append(obj)
        if len(trace) > 1 and obj > trace[-2] * (1 + MONOTONE_SLACK):
            violation = True
        if abs(prev - obj) / max(prev, cfg.eps) < cfg.tol:
            converged = True
            break
        prev = obj
    return S, trace, converged, violation, timing


def _check_views(X):
    if isinstance(X, np.ndarray) and X.ndim == 2:
        X = [X]
    X = [as_nonneg(Xv, f"view {v}") for v, Xv in enumerate(X)]
    if not X:
        raise DatasetError("no views")
    N = X[0].shape[1]
    for v, Xv in enumerate(X):
        if Xv.shape[1] != N:
            raise DatasetError(f"view {v} has {Xv.shape[1]} samples, view 0 has {N}")
    return X


def jmvcc_fit(X, cfg, init=None, callback=None):
    """Run the JMVCC algorithm from ``cfg.restarts`` random starts.

    Parameters
    ----------
    X : MultiViewDataset or sequence of array_like
        Views, each of shape (M_v, N).
    cfg : JmvccConfig
    init : JmvccState, optional
        Deterministic starting point used for every restart instead of a
        random draw.
    callback : callable, optional
        ``callback(restart, iteration, state)`` after every iteration.
        Forces restarts to run in this process.

    Returns
    -------
    state : JmvccState
        Final iterate of the restart with the lowest final objective.
    report : RunReport
    """
    cfg.validate()
    X = _check_views(getattr(X, "views", X))
    N = X[0].shape[1]
    if cfg.K > N:
        raise ParameterError(f"K={cfg.K} exceeds the sample count {N}")
    if init is not None:
        check_state(X, init)

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    t0 = time.perf_counter()
    if cfg.jobs > 1 and cfg.restarts > 1 and callback is None:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, cfg.restarts)) as pool:
            runs = list(pool.map(_run_restart, [X] * cfg.restarts, [cfg] * cfg.restarts,
                                 seeds, [init] * cfg.restarts))
    else:
        runs = [_run_restart(X, cfg, s, init, callback, i) for i, s in enumerate(seeds)]
    wall = time.perf_counter() - t0

    finals = [objective(X, r[0]) for r in runs]
    best = int(np.argmin(finals))
    S, trace, converged, violation, _ = runs[best]
    if violation:
        logger.warning("objective increased during restart %d", best)

    timing = dict.fromkeys(runs[0][4], 0.0)
    for r in runs:
        for k, t in r[4].items():
            timing[k] += t
    timing["wall"] = wall

    report = RunReport(
        config=asdict(cfg),
        best_restart=best,
        objective_trace=trace,
        restart_traces=[r[1] for r in runs],
        restart_objectives=finals,
        alpha=S.alpha.tolist(),
        beta=S.beta.tolist(),
        converged=converged,
        monotone_violation=violation,
        restart_violations=[r[3] for r in runs],
        n_iter=len(trace),
        timing=timing,
    )
    return S, report
