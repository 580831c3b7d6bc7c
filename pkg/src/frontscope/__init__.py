"""Preprocessing and serving of annotated multi-objective solution sets.

The package turns raw decision and objective matrices into a single JSON
artifact carrying 2-D layouts, a density field over the reference front,
outlier and cluster annotations, dominance flags, and nearest-neighbor
distances.  Heavyweight submodules (projection, pipeline, server) are
imported lazily by the code that needs them; this top level only re-exports
the data model.
"""

from frontscope.model import (
    SCHEMA_VERSION,
    AnalysisArtifact,
    Annotations,
    ArtifactError,
    DensityField,
    DimensionMismatch,
    Layout2D,
    MalformedJson,
    NonFiniteValue,
    ProblemMeta,
    ProjectionMethod,
    ReferenceSet,
    SchemaViolation,
    Solution,
    SolutionSet,
    parse_artifact,
    serialize_artifact,
)

__version__ = "0.1.0"

__all__ = [
    "SCHEMA_VERSION",
    "AnalysisArtifact",
    "Annotations",
    "ArtifactError",
    "DensityField",
    "DimensionMismatch",
    "Layout2D",
    "MalformedJson",
    "NonFiniteValue",
    "ProblemMeta",
    "ProjectionMethod",
    "ReferenceSet",
    "SchemaViolation",
    "Solution",
    "SolutionSet",
    "parse_artifact",
    "serialize_artifact",
    "__version__",
]
