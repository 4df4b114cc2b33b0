"""
Cost models and timing for the two ways of producing fine trajectories:
refining the PDE grid, or solving coarse and densifying with cubics.
"""

import logging
import math
from statistics import median
from typing import NamedTuple

import numpy as np

from .config.defaults import default
from .exceptions import CheckFailure, DomainError, ResourceError
from .hermite.basis import BlockDiagonalBasis, SegmentData, batch_coefficients, hermite_coefficients
from .hermite.evaluate import EvaluationGrid, HermiteBatch, evaluate_batch_partitioned
from .testing import horner_table
from .utils.timer import Timer

log = logging.getLogger(__name__)

BYTES_PER_VALUE = default.bytes_per_value
MIN_REPETITIONS = 3


def _count(x, rtol=1e-9):
  """ceil that forgives representation error in ratios such as 60 / 0.01"""
  nearest = round(x)
  if abs(x - nearest) <= rtol * max(1.0, abs(x)):
    return int(nearest)
  return math.ceil(x)


class CostModel:
  def __init__(
      self,
      domain_extents=default.model['domain_extents'],
      h=default.model['h'],
      v_max=default.model['v_max'],
      duration=default.model['duration'],
      cfl_constant=default.cfl_constant,
      flops_per_cell_update=default.flops_per_cell_update
  ):
    extents = tuple(float(e) for e in domain_extents)
    if not extents or not all(e > 0 for e in extents):
      raise DomainError(f'domain extents must be positive, got {domain_extents}')
    if not (h > 0 and v_max > 0 and flops_per_cell_update > 0):
      raise DomainError(
        f'h, v_max and k must be positive, got {h}, {v_max}, {flops_per_cell_update}'
      )
    if not duration >= 0:
      raise DomainError(f'duration must be non negative, got {duration}')
    if not 0 < cfl_constant <= 1:
      raise DomainError(f'CFL constant must be in (0, 1], got c={cfl_constant}')
    self.domain_extents = extents
    self.h = float(h)
    self.v_max = float(v_max)
    self.duration = float(duration)
    self.cfl_constant = float(cfl_constant)
    self.flops_per_cell_update = float(flops_per_cell_update)

  @property
  def cells(self):
    return math.prod(_count(e / self.h) for e in self.domain_extents)

  @property
  def dt(self):
    from .solver.lf import cfl_max_dt
    return cfl_max_dt(self.h, self.v_max, self.cfl_constant)

  @property
  def steps(self):
    return _count(self.duration / self.dt)

  def fork(self, **kwargs):
    return CostModel(**{**vars(self), **kwargs})

  def __repr__(self):
    return (
      f'CostModel(extents={self.domain_extents}, h={self.h}, v_max={self.v_max}, '
      f'duration={self.duration}, c={self.cfl_constant}, k={self.flops_per_cell_update})'
    )


class FlopsEstimate(NamedTuple):
  flops: float
  steps: int
  cells: int


def flops_estimate(model: CostModel) -> FlopsEstimate:
  cells, steps = model.cells, model.steps
  return FlopsEstimate(model.flops_per_cell_update * cells * steps, steps, cells)


def _check_counts(**counts):
  for name, value in counts.items():
    if int(value) != value or value < 1:
      raise DomainError(f'{name} must be a positive integer, got {value}')


def memory_estimate(model: CostModel, fields_per_cell=1, snapshots_resident=1):
  """bytes held by `snapshots_resident` copies of every field on every cell"""
  _check_counts(fields_per_cell=fields_per_cell, snapshots_resident=snapshots_resident)
  return model.cells * fields_per_cell * BYTES_PER_VALUE * snapshots_resident


def snapshots_for_memory(model: CostModel, fields_per_cell=1, target_bytes=1e9):
  """resident snapshots needed before the model reaches `target_bytes`"""
  return math.ceil(target_bytes / memory_estimate(model, fields_per_cell, 1))


def modeled_gain(fine: CostModel, coarse: CostModel):
  return flops_estimate(fine).flops / flops_estimate(coarse).flops


SPLINE_MODES = ('dense', 'sparse', 'evaluation')


def spline_flops_estimate(m, n_segments=1, r=1, mode='dense'):
  """
  dense: 10 M^2 per segment for G p with a dense G
  sparse: 28 M per segment (16 multiplies and 12 adds per block)
  evaluation: 8 M (r + 1) per segment for C R
  """
  _check_counts(m=m, n_segments=n_segments, r=r)
  if mode == 'coefficients':
    mode = 'dense'
  if mode == 'dense':
    return 10 * m * m * n_segments
  if mode == 'sparse':
    return 28 * m * n_segments
  if mode == 'evaluation':
    return 8 * m * (r + 1) * n_segments
  raise DomainError(f'unknown mode {mode!r}, expected one of {", ".join(SPLINE_MODES)}')


class BenchResult:
  def __init__(
      self,
      op,
      m_trajectories,
      n_segments=1,
      r=1,
      workers=1,
      wall_seconds=(),
      flops_est=0,
      workset_bytes=0,
      seed=None,
      meta=None,
  ):
    wall_seconds = list(wall_seconds)
    if len(wall_seconds) < MIN_REPETITIONS:
      raise DomainError(f'{op}: need at least {MIN_REPETITIONS} timed repetitions, got {len(wall_seconds)}')
    if not all(s > 0 for s in wall_seconds):
      raise DomainError(f'{op}: wall times must be positive, got {wall_seconds}')
    self.op = op
    self.m_trajectories = m_trajectories
    self.n_segments = n_segments
    self.r = r
    self.workers = workers
    self.wall_seconds = list(wall_seconds)
    self.flops_est = flops_est
    self.workset_bytes = workset_bytes
    self.seed = seed
    self.meta = meta or {}

  @property
  def repetitions(self):
    return len(self.wall_seconds)

  @property
  def median(self):
    return median(self.wall_seconds)

  @property
  def flops_per_second(self):
    return self.flops_est / self.median

  def rows(self):
    for rep, seconds in enumerate(self.wall_seconds):
      yield (
        self.op, self.m_trajectories, self.n_segments, self.r, self.workers,
        rep, seconds, self.flops_est, self.workset_bytes
      )

  def to_dict(self):
    return dict(
      op=self.op,
      M=self.m_trajectories,
      N_segments=self.n_segments,
      r=self.r,
      workers=self.workers,
      repetitions=self.repetitions,
      median_seconds=self.median,
      wall_seconds=self.wall_seconds,
      flops_est=self.flops_est,
      workset_bytes=self.workset_bytes,
      seed=self.seed,
      **self.meta
    )

  def __repr__(self):
    return (
      f'BenchResult({self.op}, M={self.m_trajectories}, N={self.n_segments}, r={self.r}, '
      f'workers={self.workers}, median={self.median:.6g}s, reps={self.repetitions})'
    )


BENCH_HEADER = (
  'op', 'M', 'N_segments', 'r', 'workers', 'rep', 'wall_seconds', 'flops_est', 'workset_bytes'
)


def write_bench_csv(results, path):
  from .data.io import write_csv
  if isinstance(results, BenchResult):
    results = [results]
  rows = (row for result in results for row in result.rows())
  return write_csv(rows, str(path), header=BENCH_HEADER)


def _check_repetitions(repetitions):
  if int(repetitions) != repetitions or repetitions < MIN_REPETITIONS:
    raise DomainError(f'need at least {MIN_REPETITIONS} repetitions, got {repetitions}')


def _time(fn, repetitions, name, timer: Timer):
  """one untimed warm-up call, then `repetitions` timed calls recorded under `name`"""
  fn()
  result = None
  for _ in range(repetitions):
    task = timer.task(name)
    result = fn()
    task.end()
  return timer.seconds(name), result


def _sample_rows(m, count, rng):
  return np.sort(rng.choice(m, size=min(m, count), replace=False))


def check_gp(p, result, rows):
  """
  Compares the sampled blocks of a G p result with the per segment
  coefficients (exactly) and with the scipy block diagonal product.
  """
  blocks = np.asarray(p, dtype=np.float64).reshape(-1, 4)[rows]
  actual = np.asarray(result).reshape(-1, 4)[rows]

  per_segment = np.array([hermite_coefficients(SegmentData(*b)).coefficients for b in blocks])
  if not np.array_equal(actual, per_segment):
    raise CheckFailure('G p differs from the per segment coefficients')

  sparse = BlockDiagonalBasis(len(rows)).to_sparse(format='csr') @ blocks.reshape(-1)
  scale = max(1.0, float(np.abs(blocks).max()))
  if not np.allclose(actual.reshape(-1), sparse, rtol=0, atol=1e-12 * scale):
    raise CheckFailure('G p differs from the sparse block diagonal product')


def check_cr(coefficients, ticks, result, rows):
  """compares the sampled rows of a C R result with Horner evaluation"""
  expected = horner_table(np.asarray(coefficients)[rows], ticks)
  scale = max(1.0, float(np.abs(expected).max()))
  if not np.allclose(np.asarray(result)[rows], expected, rtol=0, atol=1e-12 * scale):
    raise CheckFailure('C R differs from the Horner evaluation')


def bench_product(kind, m, r=10, workers=1, repetitions=default.repetitions, seed=None, checks=64):
  """
  Median wall time of one G p (kind='gp') or C R (kind='cr') product on
  random inputs, after one warm-up call. The output of the last repetition is
  checked on `checks` sampled rows.

  For C R the single worker product is timed as well and
  `meta['speedup']` holds its median over the median with `workers`.
  """
  _check_repetitions(repetitions)
  _check_counts(m=m, r=r, workers=workers)
  seed = default.seed if seed is None else seed
  rng = np.random.default_rng(seed)
  timer = Timer()
  meta = {}

  try:
    if kind == 'gp':
      basis = BlockDiagonalBasis(m)
      p = rng.standard_normal(4 * m)
      out = np.empty(4 * m)
      fn = lambda: batch_coefficients(basis, p, out=out)
      flops = spline_flops_estimate(m, mode='sparse')
      workset = basis.storage_bytes + p.nbytes + out.nbytes
    elif kind == 'cr':
      batch = HermiteBatch(rng.standard_normal((m, 4)))
      grid = EvaluationGrid(r)
      fn = lambda: evaluate_batch_partitioned(batch, grid, workers=workers)
      flops = spline_flops_estimate(m, r=r, mode='evaluation')
      workset = batch.coefficients.nbytes + grid.table.nbytes + m * (r + 1) * BYTES_PER_VALUE
    else:
      raise DomainError(f"unknown product {kind!r}, expected 'gp' or 'cr'")
    seconds, result = _time(fn, repetitions, kind, timer)

    if kind == 'cr':
      serial = kind
      if workers > 1:
        serial = 'cr-serial'
        _time(lambda: evaluate_batch_partitioned(batch, grid, workers=1), repetitions, serial, timer)
      meta = dict(
        serial_median_seconds=timer.median(serial),
        speedup=timer.median(serial) / timer.median(kind),
      )
  except MemoryError as e:
    raise ResourceError(
      f'could not allocate the {kind} benchmark', M=m, r=r,
      bytes=(4 * m + m * (r + 1)) * BYTES_PER_VALUE
    ) from e

  rows = _sample_rows(m, checks, rng)
  if kind == 'gp':
    check_gp(p, result, rows)
  else:
    check_cr(batch.coefficients, grid.ticks, result, rows)

  bench = BenchResult(
    op=kind,
    m_trajectories=m,
    n_segments=1,
    r=r if kind == 'cr' else 1,
    workers=workers if kind == 'cr' else 1,
    wall_seconds=seconds,
    flops_est=flops,
    workset_bytes=workset,
    seed=seed,
    meta=meta,
  )
  log.info(f'{bench} working set {workset / 1024:.1f} KB')
  if 'speedup' in meta:
    log.info(f'C R speedup with {workers} workers: {meta["speedup"]:.3g}')
  return bench


def bench_gp(m=10 ** 4, repetitions=default.repetitions, seed=None, **kwargs):
  return bench_product('gp', m, repetitions=repetitions, seed=seed)


def bench_cr(m=10 ** 4, r=10, workers=1, repetitions=default.repetitions, seed=None, **kwargs):
  return bench_product('cr', m, r=r, workers=workers, repetitions=repetitions, seed=seed)


class RaceResult(NamedTuple):
  fine: BenchResult
  coarse: BenchResult
  max_deviation: float

  @property
  def ratio(self):
    """fine over coarse median wall time, above 1 when densifying wins"""
    return self.fine.median / self.coarse.median

  def results(self):
    return [self.fine, self.coarse]

  def to_dict(self):
    return dict(
      fine=self.fine.to_dict(),
      coarse=self.coarse.to_dict(),
      ratio=self.ratio,
      max_deviation=self.max_deviation,
    )


def _axial_solve(length, n_nodes, v_max, duration, cfl_constant):
  """LF advection of the axial speed profile along the cylinder"""
  from .solver.grid import GridSpec1D, TimeSpec
  from .solver.lf import cfl_max_dt, run
  from .solver.profiles import Sine

  grid = GridSpec1D.over(length, n_nodes)
  dt = cfl_max_dt(grid.h, v_max, cfl_constant)
  time_spec = TimeSpec(dt=dt, n_steps=_count(duration / dt), cfl_constant=1.0)
  u0 = Sine(amplitude=0.25 * v_max, offset=0.75 * v_max).field(grid, periodic=True)
  history = run(u0, time_spec, equation=_advection(v_max), store_every=max(1, time_spec.n_steps))
  return history.final, time_spec.n_steps


def _advection(speed):
  from .solver.equations import Advection
  return Advection(speed)


def race_two_methods(
    length=default.race['length'],
    v_max=default.race['v_max'],
    m_trajectories=default.race['m_trajectories'],
    ticks=default.race['ticks'],
    duration=default.race['duration'],
    n_segments=default.race['n_segments'],
    cfl_constant=default.race['cfl_constant'],
    radius=default.race['radius'],
    swirl=default.race['swirl'],
    workers=1,
    repetitions=default.repetitions,
    seed=None,
    **kwargs
) -> RaceResult:
  """
  Both methods deliver M trajectories of N * r + 1 points through a cylinder
  of length L whose axial speed comes from an LF solve.

    fine:   LF at h = L / (10 N r), N * r traced segments
    coarse: LF at h = L / (10 N), N traced segments densified with r ticks
  """
  from .streamlines.flows import FieldFlow, cylinder_seeds
  from .streamlines.pipeline import densify, trace_pathlines

  _check_counts(m_trajectories=m_trajectories, ticks=ticks, n_segments=n_segments)
  seed = default.seed if seed is None else seed
  seeds = cylinder_seeds(m_trajectories, radius=radius, seed=seed)
  nodes_coarse = 10 * n_segments + 1
  nodes_fine = 10 * n_segments * ticks + 1

  def fine():
    field, steps = _axial_solve(length, nodes_fine, v_max, duration, cfl_constant)
    flow = FieldFlow(field, radius=radius, swirl=swirl, v_ref=v_max)
    lines = trace_pathlines(flow, seeds, duration / (n_segments * ticks), n_segments * ticks)
    return lines.positions, steps

  def coarse():
    field, steps = _axial_solve(length, nodes_coarse, v_max, duration, cfl_constant)
    flow = FieldFlow(field, radius=radius, swirl=swirl, v_ref=v_max)
    lines = trace_pathlines(flow, seeds, duration / n_segments, n_segments)
    return densify(lines, ticks, workers=workers).positions, steps

  _check_repetitions(repetitions)
  timer = Timer(log=True)
  results = {}
  for name, method in (('fine', fine), ('coarse', coarse)):
    seconds, (positions, steps) = _time(method, repetitions, f'race {name}', timer)
    results[name] = (seconds, positions, steps)

  fine_s, fine_positions, fine_steps = results['fine']
  coarse_s, coarse_positions, coarse_steps = results['coarse']
  if fine_positions.shape != coarse_positions.shape:
    raise CheckFailure(
      f'methods disagree on resolution: {fine_positions.shape} vs {coarse_positions.shape}'
    )

  dims = seeds.shape[1]
  points = n_segments * ticks + 1
  workset = 2 * m_trajectories * points * dims * BYTES_PER_VALUE

  def lf_flops(nodes, steps):
    return default.flops_per_cell_update * nodes * steps

  # one G p per coordinate, then values and derivatives on the r ticks
  coarse_spline_flops = (
    dims * spline_flops_estimate(m_trajectories, n_segments, mode='sparse')
    + 2 * dims * spline_flops_estimate(m_trajectories, n_segments, ticks, mode='evaluation')
  )

  common = dict(m_trajectories=m_trajectories, n_segments=n_segments, r=ticks, workers=workers, seed=seed)

  race = RaceResult(
    fine=BenchResult(
      op='race-fine',
      wall_seconds=fine_s,
      flops_est=lf_flops(nodes_fine, fine_steps),
      workset_bytes=workset + nodes_fine * BYTES_PER_VALUE,
      meta=dict(nodes=nodes_fine, lf_steps=fine_steps),
      **common
    ),
    coarse=BenchResult(
      op='race-coarse',
      wall_seconds=coarse_s,
      flops_est=lf_flops(nodes_coarse, coarse_steps) + coarse_spline_flops,
      workset_bytes=workset + nodes_coarse * BYTES_PER_VALUE,
      meta=dict(nodes=nodes_coarse, lf_steps=coarse_steps),
      **common
    ),
    max_deviation=float(np.max(np.abs(fine_positions - coarse_positions))),
  )
  log.info(
    f'race M={m_trajectories} N={n_segments} r={ticks}: fine {race.fine.median:.4g}s, '
    f'coarse {race.coarse.median:.4g}s, ratio {race.ratio:.3g}'
  )
  return race
