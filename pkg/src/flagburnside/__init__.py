"""Burnside process on the flag variety of GL_n(F_q), with exact brute-force checks."""

from .field import CapacityError, FieldElement, FieldParams
from .greenpoly import IntPolynomial, green, green_eval
from .matfq import CanonicalFlag, MatrixOverFq, bruhat_uw, canonicalize, jordan_data
from .partitions import Partition
from .perm import Permutation
from .rsk import Tableau, p_class, rsk, rsk_inverse
from .sampler import (
    ChainConfig,
    burnside_step,
    estimate_cell_size,
    run_chain,
    sample_springer_fiber,
    sample_stabilizer,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalFlag",
    "CapacityError",
    "ChainConfig",
    "FieldElement",
    "FieldParams",
    "IntPolynomial",
    "MatrixOverFq",
    "Partition",
    "Permutation",
    "Tableau",
    "bruhat_uw",
    "burnside_step",
    "canonicalize",
    "estimate_cell_size",
    "green",
    "green_eval",
    "jordan_data",
    "p_class",
    "rsk",
    "rsk_inverse",
    "run_chain",
    "sample_springer_fiber",
    "sample_stabilizer",
]
