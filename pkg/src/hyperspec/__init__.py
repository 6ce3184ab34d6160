"""p-spectral extrema of weighted uniform hypergraphs and Hoffman-type ratio checks."""
from .core import (
    PartitionCertificate,
    WeightedHypergraph,
    check_partition,
    evaluate_polyform,
    gradient_polyform,
    lp_norm,
    validate,
)
from .kernels import BACKEND
from .solver import (
    SolverConfig,
    SpectralEstimate,
    exact_graph_eigen,
    project_to_sphere,
    solve_max,
    solve_min,
)

__version__ = "0.1.0"
