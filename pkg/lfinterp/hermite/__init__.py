from .basis import (
  BlockDiagonalBasis,
  HermiteCubic,
  SegmentData,
  basis_matrix_t,
  batch_coefficients,
  block_coefficients,
  build_global_basis,
  derivative,
  evaluate_cubic,
  hermite_coefficients,
)
from .evaluate import (
  EvaluationGrid,
  HermiteBatch,
  evaluate_batch,
  evaluate_batch_partitioned,
  evaluation_matrix,
)
