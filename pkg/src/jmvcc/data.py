"""Multi-view datasets: file I/O, planted-partition generator, view corruption.

Every view is stored features x samples (one sample per column).

Directory layout::

    view_<name>.csv | view_<name>.mat1   one file per view
    labels.csv                          optional, one integer per line

CSV matrices start with a ``rows,cols`` header line. ``.mat1`` files hold
the magic ``MVD1``, two little-endian uint64 dims and the row-major
little-endian float64 payload.
"""
import struct
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import DatasetError, DomainError, ParameterError
from .matcore import as_nonneg

MAGIC = b"MVD1"


@dataclass
class MultiViewDataset:
    views: list
    labels: np.ndarray | None = None
    names: list = field(default_factory=list)

    def __post_init__(self):
        if not self.views:
            raise DatasetError("dataset needs at least one view")
        self.views = [as_nonneg(X, f"view {v}") for v, X in enumerate(self.views)]
        N = self.N
        for v, X in enumerate(self.views):
            if X.shape[1] != N:
                raise DatasetError(f"view {v} has {X.shape[1]} samples, expected {N}")
        if not self.names:
            self.names = [str(v) for v in range(self.V)]
        if len(self.names) != self.V:
            raise DatasetError("one name per view required")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (N,):
                raise DatasetError(f"{self.labels.size} labels for {N} samples")
            if self.labels.size and self.labels.min() < 0:
                raise DomainError("labels must be non-negative integers")

    @property
    def V(self):
        return len(self.views)

    @property
    def N(self):
        return self.views[0].shape[1]

    @property
    def dims(self):
        return [X.shape[0] for X in self.views]


# -- matrix files ------------------------------------------------------------


def read_csv_matrix(path):
    path = Path(path)
    with path.open() as fh:
        header = fh.readline()
        try:
            rows, cols = (int(x) for x in header.strip().split(","))
        except ValueError:
            raise DatasetError(f"{path}: bad header {header.strip()!r}") from None
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols))
        A = np.loadtxt(fh, delimiter=",", dtype=np.float64, ndmin=2)
    if A.shape != (rows, cols):
        raise DatasetError(f"{path}: header says {rows}x{cols}, body is {A.shape[0]}x{A.shape[1]}")
    return A


def write_csv_matrix(path, A):
    A = np.asarray(A, dtype=np.float64)
    with open(path, "w") as fh:
        fh.write(f"{A.shape[0]},{A.shape[1]}\n")
        for row in A:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def read_mat1(path):
    raw = Path(path).read_bytes()
    if raw[:4] != MAGIC or len(raw) < 20:
        raise DatasetError(f"{path}: not an MVD1 file")
    rows, cols = struct.unpack("<QQ", raw[4:20])
    payload = raw[20:]
    if len(payload) != 8 * rows * cols:
        raise DatasetError(f"{path}: expected {rows * cols} values, got {len(payload) // 8}")
    return np.frombuffer(payload, dtype="<f8").reshape(rows, cols).astype(np.float64)


def write_mat1(path, A):
    A = np.ascontiguousarray(A, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(MAGIC + struct.pack("<QQ", *A.shape) + A.tobytes())


def read_matrix(path):
    path = Path(path)
    if path.suffix == ".mat1":
        return read_mat1(path)
    return read_csv_matrix(path)


def write_matrix(path, A):
    path = Path(path)
    if path.suffix == ".mat1":
        write_mat1(path, A)
    else:
        write_csv_matrix(path, A)


def read_labels(path):
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    try:
        return np.array([int(ln) for ln in lines if ln], dtype=np.int64)
    except ValueError as exc:
        raise DatasetError(f"{path}: {exc}") from None


def write_labels(path, labels):
    Path(path).write_text("".join(f"{int(x)}\n" for x in labels))


def load_dataset(directory, transpose=False, shift_nonneg=False):
    """Read a dataset directory.

    Parameters
    ----------
    directory : path
        Folder holding ``view_<name>.{csv,mat1}`` files and optionally
        ``labels.csv``. Views are ordered by name.
    transpose : bool
        Files store one sample per row; transpose them on load.
    shift_nonneg : bool
        Subtract the minimum of every feature whose minimum is negative.
        Without it, negative entries raise ``DomainError``.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"no dataset directory {directory}")
    files = sorted(p for p in directory.glob("view_*") if p.suffix in (".csv", ".mat1"))
    if not files:
        raise FileNotFoundError(f"no view_* files in {directory}")
    names = [p.stem[len("view_"):] for p in files]
    if len(set(names)) != len(names):
        raise DatasetError("a view is stored in both csv and mat1 form")

    views = []
    for p in files:
        X = read_matrix(p)
        if transpose:
            X = X.T
        if np.isnan(X).any():
            raise DomainError(f"{p.name} contains NaN")
        if shift_nonneg:
            lo = X.min(axis=1, keepdims=True)
            X = X - np.minimum(lo, 0.0)
        views.append(X)

    labels = None
    if (directory / "labels.csv").exists():
        labels = read_labels(directory / "labels.csv")
    return MultiViewDataset(views, labels, names)


def save_dataset(ds, directory, fmt="csv"):
    if fmt not in ("csv", "mat1"):
        raise ParameterError(f"unknown format {fmt!r}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, X in zip(ds.names, ds.views):
        write_matrix(directory / f"view_{name}.{fmt}", X)
    if ds.labels is not None:
        write_labels(directory / "labels.csv", ds.labels)
    return directory


# -- synthetic data ----------------------------------------------------------


def planted_labels(N, K, rng):
    """Balanced hard partition in random order."""
    return rng.permutation(np.arange(N) % K)


def block_dictionary(M, K, rng, background=0.05):
    """M x K dictionary whose columns load on disjoint feature blocks.

    Features are dealt round-robin to components, so every component owns
    at least one feature whenever ``M >= K``.
    """
    owner = rng.permutation(np.arange(M) % K)
    F = background * rng.random((M, K))
    F[np.arange(M), owner] += 0.5 + rng.random(M)
    return F


def synth_multiview(N, K, V, dims, noise_sigma=0.0, seed=None):
    """Multi-view data sharing one planted partition.

    View ``v`` is ``F0[v] @ G0 + |noise|`` where ``G0`` is the one-hot
    K x N indicator of the planted labels and ``F0[v]`` is a block
    dictionary (see ``block_dictionary``).
    """
    dims = list(dims)
    if K < 1 or N < 1 or K > N:
        raise ParameterError(f"need 1 <= K <= N, got K={K}, N={N}")
    if V < 1 or len(dims) != V:
        raise ParameterError(f"need V >= 1 and len(dims) == V, got V={V}, dims={dims}")
    if any(m < 1 for m in dims):
        raise ParameterError("every view needs at least one feature")
    if noise_sigma < 0:
        raise ParameterError("noise_sigma must be >= 0")

    rng = np.random.default_rng(seed)
    labels = planted_labels(N, K, rng)
    G0 = np.zeros((K, N))
    G0[labels, np.arange(N)] = 1.0
    views = []
    for M in dims:
        X = block_dictionary(M, K, rng) @ G0
        if noise_sigma > 0:
            X += np.abs(rng.normal(0.0, noise_sigma, X.shape))
        views.append(np.maximum(X, 0.0))
    return MultiViewDataset(views, labels, [f"v{v}" for v in range(V)])


def corrupt_view(ds, v, mode="uniform-noise", seed=None):
    """Copy of ``ds`` with view ``v`` replaced by garbage.

    ``shuffle`` permutes the columns, breaking sample alignment with the
    other views; ``uniform-noise`` draws i.i.d. values in [0, max) where
    max is the largest entry of the original view.
    """
    if not 0 <= v < ds.V:
        raise ParameterError(f"view index {v} outside [0, {ds.V})")
    rng = np.random.default_rng(seed)
    X = ds.views[v]
    if mode == "shuffle":
        bad = X[:, rng.permutation(X.shape[1])]
    elif mode == "uniform-noise":
        bad = rng.uniform(0.0, X.max() if X.size and X.max() > 0 else 1.0, X.shape)
    else:
        raise ParameterError(f"unknown corruption mode {mode!r}")
    views = [Xw.copy() for Xw in ds.views]
    views[v] = bad
    labels = None if ds.labels is None else ds.labels.copy()
    return replace(ds, views=views, labels=labels, names=list(ds.names))

