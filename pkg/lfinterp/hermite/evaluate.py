"""
Batched evaluation of cubic segments at the parameter ticks t_k = k / r.

With C the (M x 4) coefficient table and R the 4 x (r+1) table of powers
(t^3, t^2, t, 1) per column, row i of C R holds cubic i at every tick.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..exceptions import DomainError
from ..utils import chunk_ranges
from ..utils.decorators import lazy
from .basis import BlockDiagonalBasis, batch_coefficients, block_coefficients

log = logging.getLogger(__name__)


class EvaluationGrid:
  def __init__(self, r):
    if int(r) != r or r < 1:
      raise DomainError(f'need at least one tick per cubic, got r={r}')
    self.r = int(r)
    t = np.arange(self.r + 1, dtype=np.float64) / self.r
    self.ticks = t
    self.table = np.stack([t * t * t, t * t, t, np.ones_like(t)])
    self.ticks.setflags(write=False)
    self.table.setflags(write=False)

  @lazy
  def derivative_table(self):
    """rows (3t^2, 2t, 1, 0), evaluates s'(t) with the same product"""
    t = self.ticks
    table = np.stack([3 * t * t, 2 * t, np.ones_like(t), np.zeros_like(t)])
    table.setflags(write=False)
    return table

  @property
  def shape(self):
    return self.table.shape

  def tick_index(self, t0, atol=1e-12):
    matches = np.flatnonzero(np.abs(self.ticks - t0) <= atol)
    if not len(matches):
      raise DomainError(f't0={t0} is not one of the {self.r + 1} ticks k/{self.r}')
    return int(matches[0])

  def __repr__(self):
    return f'EvaluationGrid(r={self.r})'


def evaluation_matrix(r) -> EvaluationGrid:
  return EvaluationGrid(r)


class HermiteBatch:
  """coefficient tables C of shape (..., M, 4), one M x 4 table per leading index"""

  def __init__(self, coefficients):
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if coefficients.ndim < 2 or coefficients.shape[-1] != 4:
      raise DomainError(f'coefficients must have shape (..., M, 4), got {coefficients.shape}')
    if not np.all(np.isfinite(coefficients)):
      raise DomainError('cubic coefficients must be finite')
    self.coefficients = coefficients

  @classmethod
  def from_vector(cls, vector):
    vector = np.asarray(vector, dtype=np.float64)
    if vector.ndim != 1 or len(vector) % 4:
      raise DomainError(f'expected a flat vector of length 4M, got shape {vector.shape}')
    return cls(vector.reshape(-1, 4))

  @classmethod
  def from_segments(cls, segments, basis: BlockDiagonalBasis = None):
    """segments: (M, 4) or (..., M, 4) blocks (p1, p2, v1, v2)"""
    segments = np.asarray(segments, dtype=np.float64)
    if basis is not None:
      return cls.from_vector(batch_coefficients(basis, segments.reshape(-1)))
    return cls(block_coefficients(segments))

  @property
  def m_trajectories(self):
    return self.coefficients.shape[-2]

  @property
  def components(self):
    return self.coefficients.shape[:-2]

  def endpoint_errors(self, segments):
    """
    Largest deviation from s(0) = p1, s(1) = p2, s'(0) = v1, s'(1) = v2 over
    all rows, segments given as (..., M, 4) blocks
    """
    segments = np.asarray(segments, dtype=np.float64)
    a, b, c, d = np.moveaxis(self.coefficients, -1, 0)
    p1, p2, v1, v2 = np.moveaxis(segments, -1, 0)
    return float(max(
      np.max(np.abs(d - p1)),
      np.max(np.abs(a + b + c + d - p2)),
      np.max(np.abs(c - v1)),
      np.max(np.abs(3 * a + 2 * b + c - v2)),
    ))

  def __len__(self):
    return self.m_trajectories

  def __repr__(self):
    return f'HermiteBatch(shape={self.coefficients.shape})'


def product(c, r, out):
  """
  out = C R with np.matmul, every row of C a 1x4 by 4x(r+1) product of its own
  so the result of a row does not depend on how the rows are grouped
  """
  np.matmul(c[..., None, :], r, out=out[..., None, :])
  return out


def _check(batch: HermiteBatch, grid: EvaluationGrid):
  if batch.coefficients.shape[-1] != grid.table.shape[0]:
    raise DomainError(
      f'cannot multiply {batch.coefficients.shape} by {grid.table.shape}'
    )


def _allocate(batch, grid):
  shape = (*batch.coefficients.shape[:-1], grid.r + 1)
  return np.empty(shape, dtype=np.float64)


def evaluate_batch(batch: HermiteBatch, grid: EvaluationGrid, derivative=False):
  _check(batch, grid)
  table = grid.derivative_table if derivative else grid.table
  return product(batch.coefficients, table, _allocate(batch, grid))


def evaluate_batch_partitioned(
    batch: HermiteBatch,
    grid: EvaluationGrid,
    workers=1,
    derivative=False
):
  """
  C R with the rows of C split into `workers` contiguous ranges, each written
  by its own thread into a disjoint slice of the output.
  """
  if int(workers) != workers or workers < 1:
    raise DomainError(f'workers must be a positive integer, got {workers}')
  workers = int(workers)
  m = batch.m_trajectories
  if m % workers:
    raise DomainError(f'M={m} rows cannot be split evenly across {workers} workers')

  _check(batch, grid)
  table = grid.derivative_table if derivative else grid.table
  out = _allocate(batch, grid)
  c = batch.coefficients

  if workers == 1:
    return product(c, table, out)

  with ThreadPoolExecutor(max_workers=workers) as pool:
    futures = [
      pool.submit(product, c[..., lo:hi, :], table, out[..., lo:hi, :])
      for lo, hi in chunk_ranges(m, workers)
    ]
    for f in futures:
      f.result()
  return out
