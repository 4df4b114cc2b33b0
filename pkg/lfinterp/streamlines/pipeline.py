"""
Trajectories of M particles sampled at S = N + 1 points, and their
densification with one Hermite cubic per segment.

Tangents handed to the cubics are in parameter units: the parameter t spans
one segment of duration segment_dt, so physical velocities are multiplied by
segment_dt when packed (unless raw tangents are requested) and derivatives
are divided by it when turned back into velocities.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..exceptions import DomainError, TraceError
from ..hermite.basis import BlockDiagonalBasis, batch_coefficients
from ..hermite.evaluate import (
  EvaluationGrid,
  HermiteBatch,
  evaluate_batch,
  evaluate_batch_partitioned,
)
from ..utils.timer import Task

log = logging.getLogger(__name__)


def _check_trajectories(positions, velocities):
  if positions.ndim != 3:
    raise DomainError(f'positions must have shape (M, S, dims), got {positions.shape}')
  if velocities.shape != positions.shape:
    raise DomainError(
      f'velocities {velocities.shape} do not match positions {positions.shape}'
    )
  if not 1 <= positions.shape[2] <= 3:
    raise DomainError(f'trajectories have 1 to 3 components, got {positions.shape[2]}')
  if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(velocities))):
    raise DomainError('trajectory positions and velocities must be finite')


class StreamlineSet:
  """positions and velocities of M trajectories at S points, arrays of shape (M, S, dims)"""

  def __init__(self, positions, velocities, segment_dt):
    positions = np.asarray(positions, dtype=np.float64)
    velocities = np.asarray(velocities, dtype=np.float64)
    _check_trajectories(positions, velocities)
    if positions.shape[1] < 2:
      raise DomainError(f'need at least one segment (S >= 2), got S={positions.shape[1]}')
    if not (segment_dt > 0 and np.isfinite(segment_dt)):
      raise DomainError(f'segment_dt must be positive, got {segment_dt}')
    self.positions = positions
    self.velocities = velocities
    self.segment_dt = float(segment_dt)

  @property
  def m_trajectories(self):
    return self.positions.shape[0]

  @property
  def s_points(self):
    return self.positions.shape[1]

  @property
  def n_segments(self):
    return self.s_points - 1

  @property
  def dims(self):
    return self.positions.shape[2]

  @property
  def t_param(self):
    return np.arange(self.s_points, dtype=np.float64)

  def tangent_scale(self, raw_tangents=False):
    return 1.0 if raw_tangents else self.segment_dt

  def __len__(self):
    return self.m_trajectories

  def __repr__(self):
    return (
      f'StreamlineSet(M={self.m_trajectories}, S={self.s_points}, '
      f'dims={self.dims}, segment_dt={self.segment_dt})'
    )


class DenseTrajectorySet:
  """M trajectories at N * r + 1 points, point i sits at parameter i / r"""

  def __init__(self, positions, velocities, ticks_per_segment, segment_dt=1.0):
    positions = np.asarray(positions, dtype=np.float64)
    velocities = np.asarray(velocities, dtype=np.float64)
    _check_trajectories(positions, velocities)
    r = ticks_per_segment
    if int(r) != r or r < 1 or (positions.shape[1] - 1) % r:
      raise DomainError(
        f'{positions.shape[1]} points do not split into segments of r={r} ticks'
      )
    self.positions = positions
    self.velocities = velocities
    self.ticks_per_segment = int(r)
    self.segment_dt = float(segment_dt)

  @property
  def m_trajectories(self):
    return self.positions.shape[0]

  @property
  def n_points(self):
    return self.positions.shape[1]

  @property
  def n_segments(self):
    return (self.n_points - 1) // self.ticks_per_segment

  @property
  def dims(self):
    return self.positions.shape[2]

  @property
  def t_param(self):
    return np.arange(self.n_points, dtype=np.float64) / self.ticks_per_segment

  def joints(self):
    """the points shared by consecutive segments, original samples included"""
    return self.positions[:, ::self.ticks_per_segment]

  def __len__(self):
    return self.m_trajectories

  def __repr__(self):
    return (
      f'DenseTrajectorySet(M={self.m_trajectories}, points={self.n_points}, '
      f'r={self.ticks_per_segment}, dims={self.dims})'
    )


def _trace_chunk(sampler, seeds, segment_dt, n_segments, offset, positions, velocities):
  p = seeds
  for k in range(n_segments + 1):
    v = np.asarray(sampler(p), dtype=np.float64).reshape(p.shape)
    bad = ~np.all(np.isfinite(v), axis=1)
    if bad.any():
      raise TraceError(trajectory=offset + int(np.flatnonzero(bad)[0]), segment=k)
    positions[:, k] = p
    velocities[:, k] = v
    if k < n_segments:
      p = p + segment_dt * v


def trace_pathlines(sampler, seeds, segment_dt, n_segments, workers=1) -> StreamlineSet:
  """
  Explicit Euler particle paths P_{k+1} = P_k + segment_dt * v(P_k) of a
  steady sampler, which coincide with its streamlines.

  Args:
    sampler: maps positions (K, dims) to velocities (K, dims)
    seeds: (M, dims) start positions, or (M,) for a 1D flow
    segment_dt: time per segment
    n_segments: N, the paths get S = N + 1 points
    workers: seeds are split into this many contiguous groups traced in threads

  A non-finite velocity raises TraceError with the trajectory index and the
  segment starting at the point where it was sampled.
  """
  seeds = np.asarray(seeds, dtype=np.float64)
  if seeds.ndim == 1:
    seeds = seeds[:, None]
  if seeds.ndim != 2 or not len(seeds):
    raise DomainError(f'seeds must have shape (M, dims) with M >= 1, got {seeds.shape}')
  if not (segment_dt > 0 and np.isfinite(segment_dt)):
    raise DomainError(f'segment_dt must be positive, got {segment_dt}')
  if int(n_segments) != n_segments or n_segments < 1:
    raise DomainError(f'need at least one segment, got n_segments={n_segments}')
  n_segments = int(n_segments)
  workers = max(1, min(int(workers), len(seeds)))

  m, dims = seeds.shape
  positions = np.empty((m, n_segments + 1, dims), dtype=np.float64)
  velocities = np.empty_like(positions)

  bounds = np.linspace(0, m, workers + 1).astype(int)
  with Task(f'trace {m} paths x {n_segments} segments', log=True):
    if workers == 1:
      _trace_chunk(sampler, seeds, segment_dt, n_segments, 0, positions, velocities)
    else:
      with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
          pool.submit(
            _trace_chunk, sampler, seeds[lo:hi], segment_dt, n_segments, lo,
            positions[lo:hi], velocities[lo:hi]
          )
          for lo, hi in zip(bounds, bounds[1:])
        ]
        for f in futures:
          f.result()

  return StreamlineSet(positions, velocities, segment_dt)


def _check_segment(lines: StreamlineSet, k):
  if int(k) != k or not 0 <= k < lines.n_segments:
    raise DomainError(f'segment index {k} out of range [0, {lines.n_segments})')
  return int(k)


def segment_blocks(lines: StreamlineSet, k=None, raw_tangents=False):
  """
  (p_k, p_k+1, v_k * scale, v_k+1 * scale) blocks of shape (dims, M, 4) for
  segment k, or (dims, N, M, 4) for every segment when k is None
  """
  scale = lines.tangent_scale(raw_tangents)
  p = np.moveaxis(lines.positions, 2, 0)
  v = np.moveaxis(lines.velocities, 2, 0) * scale
  if k is None:
    blocks = np.stack([p[:, :, :-1], p[:, :, 1:], v[:, :, :-1], v[:, :, 1:]], axis=-1)
    return np.ascontiguousarray(np.swapaxes(blocks, 1, 2))
  k = _check_segment(lines, k)
  return np.stack([p[:, :, k], p[:, :, k + 1], v[:, :, k], v[:, :, k + 1]], axis=-1)


def pack_segment(lines: StreamlineSet, k, component, raw_tangents=False):
  """vector p of length 4M: trajectory major blocks for one segment and component"""
  if int(component) != component or not 0 <= component < lines.dims:
    raise DomainError(f'component {component} out of range [0, {lines.dims})')
  return segment_blocks(lines, k, raw_tangents=raw_tangents)[int(component)].reshape(-1)


def unpack_segment(vector, segment_dt=1.0, raw_tangents=False):
  """inverse of pack_segment, returns (p_k, p_k+1, v_k, v_k+1) arrays of length M"""
  vector = np.asarray(vector, dtype=np.float64)
  if vector.ndim != 1 or len(vector) % 4:
    raise DomainError(f'expected a vector of length 4M, got shape {vector.shape}')
  scale = 1.0 if raw_tangents else segment_dt
  p1, p2, v1, v2 = vector.reshape(-1, 4).T
  return p1.copy(), p2.copy(), v1 / scale, v2 / scale


def segment_batch(lines: StreamlineSet, k, raw_tangents=False) -> HermiteBatch:
  """coefficients (dims, M, 4) of segment k, one Gp product per component"""
  blocks = segment_blocks(lines, k, raw_tangents=raw_tangents)
  basis = BlockDiagonalBasis(lines.m_trajectories)
  return HermiteBatch(np.stack([
    batch_coefficients(basis, b.reshape(-1)).reshape(-1, 4) for b in blocks
  ]))


def all_segment_batches(lines: StreamlineSet, raw_tangents=False) -> HermiteBatch:
  """
  Coefficients (dims, N, M, 4) for every segment. Each component is a single
  Gp product over the N * M blocks, with the arithmetic of the per segment product.
  """
  blocks = segment_blocks(lines, raw_tangents=raw_tangents)
  basis = BlockDiagonalBasis(lines.n_segments * lines.m_trajectories)
  coefficients = np.empty_like(blocks)
  for c, b in enumerate(blocks):
    batch_coefficients(basis, b.reshape(-1), out=coefficients[c].reshape(-1))
  return HermiteBatch(coefficients)


def _merge(table, joints, r):
  """
  (dims, N, M, r + 1) segment tables to (M, N * r + 1, dims) trajectories, the
  shared tick is written once and set to the original sample
  """
  dims, n, m, _ = table.shape
  out = np.empty((m, n * r + 1, dims), dtype=np.float64)
  body = np.transpose(table[..., :r], (2, 1, 3, 0))
  out[:, :-1] = body.reshape(m, n * r, dims)
  out[:, -1] = table[:, -1, :, r].T
  out[:, ::r] = joints
  return out


def densify(lines: StreamlineSet, r, workers=1, raw_tangents=False) -> DenseTrajectorySet:
  """
  Evaluates every segment cubic at t = 0, 1/r, ..., 1. Coefficients come from
  one Gp product per component, values and derivatives from partitioned C R
  products, which need M divisible by `workers`.
  """
  grid = EvaluationGrid(r)
  with Task(f'densify M={lines.m_trajectories} N={lines.n_segments} r={grid.r}', log=True):
    batch = all_segment_batches(lines, raw_tangents=raw_tangents)
    values = evaluate_batch_partitioned(batch, grid, workers=workers)
    slopes = evaluate_batch_partitioned(batch, grid, workers=workers, derivative=True)

  scale = lines.tangent_scale(raw_tangents)
  positions = _merge(values, lines.positions, grid.r)
  velocities = _merge(slopes / scale, lines.velocities, grid.r)
  return DenseTrajectorySet(positions, velocities, grid.r, segment_dt=lines.segment_dt)


def eulerian_snapshot(lines: StreamlineSet, k, t0, r_grid: EvaluationGrid, raw_tangents=False):
  """positions and velocities (M, dims) of all particles at parameter t0 of segment k"""
  column = r_grid.tick_index(t0)
  batch = segment_batch(lines, k, raw_tangents=raw_tangents)
  positions = evaluate_batch(batch, r_grid)[..., column].T
  velocities = evaluate_batch(batch, r_grid, derivative=True)[..., column].T
  return positions, velocities / lines.tangent_scale(raw_tangents)


def dump_trajectories(trajectories, path):
  """CSV `traj,point,t_param,x,y,z,vx,vy,vz`, missing components written as 0"""
  from ..data.io import write_csv

  m, n, dims = trajectories.positions.shape
  p = np.zeros((m, n, 3))
  v = np.zeros((m, n, 3))
  p[..., :dims] = trajectories.positions
  v[..., :dims] = trajectories.velocities
  t = trajectories.t_param

  def rows():
    for i in range(m):
      for j in range(n):
        yield (i, j, t[j], *p[i, j], *v[i, j])

  return write_csv(
    rows(),
    str(path),
    header=('traj', 'point', 't_param', 'x', 'y', 'z', 'vx', 'vy', 'vz')
  )
