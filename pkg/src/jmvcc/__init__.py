"""Joint multi-view collaborative clustering with NMF."""

from .errors import DatasetError, DimensionError, DomainError, ParameterError
from .data import MultiViewDataset, corrupt_view, load_dataset, save_dataset, synth_multiview
from .metrics import discretize, nmi, purity
from .nmf import NmfFactors, nmf_fit
from .solver import JmvccConfig, JmvccState, RunReport, jmvcc_fit, objective

__all__ = [
    "DatasetError",
    "DimensionError",
    "DomainError",
    "ParameterError",
    "MultiViewDataset",
    "corrupt_view",
    "load_dataset",
    "save_dataset",
    "synth_multiview",
    "discretize",
    "nmi",
    "purity",
    "NmfFactors",
    "nmf_fit",
    "JmvccConfig",
    "JmvccState",
    "RunReport",
    "jmvcc_fit",
    "objective",
]

__version__ = "0.1.0"
