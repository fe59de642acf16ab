"""Prior distributions p(x) and the overlap function E(z)."""

from zzbound.priors.distribution import (
    BimodalTwoBlockPrior,
    GaussianPrior,
    PriorDistribution,
    PriorFamily,
    TabulatedPrior,
    TriangularPrior,
    UniformPrior,
    make_prior,
)
from zzbound.priors.loader import load_tabulated_prior, read_two_column_csv
from zzbound.priors.overlap import (
    Moments,
    crossing_point_y0,
    evaluate_prior,
    moments,
    overlap_E,
    overlap_E_quadrature,
    overlap_E_single_mode,
    sample,
    sample_many,
    support_diameter,
)

__all__ = [
    # Families
    "PriorDistribution",
    "PriorFamily",
    "UniformPrior",
    "GaussianPrior",
    "BimodalTwoBlockPrior",
    "TriangularPrior",
    "TabulatedPrior",
    "make_prior",
    "load_tabulated_prior",
    "read_two_column_csv",
    # Operations
    "evaluate_prior",
    "overlap_E",
    "overlap_E_quadrature",
    "overlap_E_single_mode",
    "crossing_point_y0",
    "moments",
    "Moments",
    "sample",
    "sample_many",
    "support_diameter",
]
