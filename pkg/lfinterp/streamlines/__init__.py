from .flows import (
  CylinderFlow,
  FieldFlow,
  FieldProfile,
  Flow,
  SolidRotation,
  UniformFlow,
  cylinder_seeds,
  random_seeds,
  vectorize,
)
from .pipeline import (
  DenseTrajectorySet,
  StreamlineSet,
  all_segment_batches,
  densify,
  dump_trajectories,
  eulerian_snapshot,
  pack_segment,
  segment_batch,
  segment_blocks,
  trace_pathlines,
  unpack_segment,
)
