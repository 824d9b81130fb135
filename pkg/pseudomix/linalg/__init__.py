"""
Dense linear algebra on the composite space H1 (x) H2.
"""

from pseudomix.linalg.hermitian import (
    DENSITY_TOL,
    HERMITIAN_TOL,
    BipartiteDims,
    HermitianState,
    SpectralDecomposition,
    eigh,
    fro_norm,
    hermiticity_defect,
    hs_inner,
    op_norm,
)
from pseudomix.linalg.named import (
    bell_state,
    maximally_entangled,
    maximally_mixed,
    product_state,
    werner_state,
)
from pseudomix.linalg.random import (
    haar_unitary,
    random_density,
    random_product_mixture,
    random_unit_vector,
)

__all__ = [
    "DENSITY_TOL",
    "HERMITIAN_TOL",
    "BipartiteDims",
    "HermitianState",
    "SpectralDecomposition",
    "eigh",
    "fro_norm",
    "hermiticity_defect",
    "hs_inner",
    "op_norm",
    "bell_state",
    "maximally_entangled",
    "maximally_mixed",
    "product_state",
    "werner_state",
    "haar_unitary",
    "random_density",
    "random_product_mixture",
    "random_unit_vector",
]
