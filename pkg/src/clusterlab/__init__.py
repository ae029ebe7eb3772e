"""Weighted-clustering laboratory: exact partitional objectives,
hierarchical algorithms, clusterability detectors, and a weight-response
probe."""

from ._backend import backend_name
from .dataset import (
    DISTANCE,
    SIMILARITY,
    DatasetError,
    PairTable,
    WeightedDataset,
    dedupe,
    expand,
    from_coords,
    load_dataset,
    save_dataset,
    validate_dataset,
)
from .dendrogram import Dendrogram
from .generators import (
    line,
    nice_blocks,
    perfect_uniform,
    random_points,
    random_similarity,
)
from .linkage import LinkageSpec, agglomerate, divisive, linkage_value
from .objectives import (
    ObjectiveKindError,
    ObjectiveSpec,
    centroid_kmeans_cost,
    cost,
    exact_minimize,
    kcenter_cost,
    kmeans_cost,
    kmedian_cost,
    kmedoids_cost,
    mindiameter_cost,
    minsum_cost,
    ratiocut_cost,
)
from .partitions import (
    Clustering,
    EnumerationCapError,
    all_clusterings,
    enumerate_partitions,
    stirling2,
)
from .probe import (
    AlgorithmHandle,
    CategoryReport,
    TheoremInconsistencyError,
    Verdict,
    classify,
    range_estimate,
    responsiveness_probe,
    robustness_certificate,
    run_algorithm,
    separability_probe,
)
from .structure import (
    enumerate_nice_clusterings,
    is_nice,
    is_perfect,
    is_separation_uniform,
    structure_report,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
