"""Normalized dimensions and limit shapes of random Young diagrams.

Exact and Monte-Carlo statistics of c(L) = (2/sqrt n)(ln sqrt(n!) -
ln dim L) under the Plancherel measure, maximum-dimension searches, and
average profiles of uniform-corner (Richardson) growth in 2D and 3D.
"""

from .diagrams import (Partition, PlanePartition, dim_exact, log_dim,
                       normalized_c)
from .enumeration import (exact_expected_c, max_dim_exact, max_dim_restricted,
                          mckay_ratio)
from .numerics import RngStream, SampleStats, rng_derive
from .sampling import (plancherel_c_stats, plancherel_growth_path,
                       richardson_grow_2d, richardson_grow_3d, rsk_shape,
                       sample_plancherel)
from .shapes import (diagonal_deviation, mean_shape_2d, mean_shape_3d,
                     profile_2d, profile_3d, rost_reference, shape_residual)

__version__ = "0.1.0"

__all__ = [
    "Partition", "PlanePartition", "dim_exact", "log_dim", "normalized_c",
    "exact_expected_c", "max_dim_exact", "max_dim_restricted", "mckay_ratio",
    "RngStream", "SampleStats", "rng_derive",
    "plancherel_c_stats", "plancherel_growth_path", "richardson_grow_2d",
    "richardson_grow_3d", "rsk_shape", "sample_plancherel",
    "diagonal_deviation", "mean_shape_2d", "mean_shape_3d", "profile_2d",
    "profile_3d", "rost_reference", "shape_residual",
    "__version__",
]
