"""Structure / texture / noise decomposition of grayscale images."""

from .errors import (DecompositionError, InvalidInputError, InvalidParameterError,
                     NumericalFailureError, PGMFormatError, UnsupportedFormatError)
from .grid import VectorField, divergence, gradient, l2_distance, total_variation
from .models import (Decomposition, ModelParams, decompose_ac, decompose_jg, decompose_jg2,
                     partition_for, universal_threshold)
from .partition import compute_partition, local_variance, normalize_partition, pyramidalize
from .projection import (ProjectorParams, TwoPartResult, decompose_uv, project_g_ball,
                         rof_denoise)
from .wavelet import besov_project, dwt2, idwt2, wst, wst_spatial

__all__ = [
    "Decomposition", "DecompositionError", "InvalidInputError", "InvalidParameterError",
    "ModelParams", "NumericalFailureError", "PGMFormatError", "ProjectorParams",
    "TwoPartResult", "UnsupportedFormatError", "VectorField", "besov_project",
    "compute_partition", "decompose_ac", "decompose_jg", "decompose_jg2", "decompose_uv",
    "divergence", "dwt2", "gradient", "idwt2", "l2_distance", "local_variance",
    "normalize_partition", "partition_for", "project_g_ball", "pyramidalize", "rof_denoise",
    "total_variation", "universal_threshold", "wst", "wst_spatial",
]
