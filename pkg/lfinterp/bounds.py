"""
Error of the coarse solve plus interpolation against the fine solve.

u solves on the fine grid (step h), w on the coarse grid (step s h) with the
same time step, and v is w interpolated back onto the fine nodes with one
Hermite cubic per coarse interval. The measured max |v_n - u_n| is compared to

  theorem:   (A + B s) M0 sum_{i=0}^{N} (lambda_v / 2)^i
  corollary: 2 (A + B s) M0 / (2 - lambda_v),  lambda_v < 2
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config.defaults import default
from .exceptions import DomainError, HypothesisError
from .hermite.basis import BlockDiagonalBasis, batch_coefficients
from .hermite.evaluate import EvaluationGrid, HermiteBatch, evaluate_batch
from .solver.equations import DIRICHLET, PERIODIC, Equation
from .solver.grid import GridSpec1D, ScalarField1D, TimeSpec
from .solver.lf import resolve_equation, restrict, run

log = logging.getLogger(__name__)


class BoundParams:
  __slots__ = ('a_const', 'b_const', 's', 'lambda_v', 'n_steps')

  def __init__(self, a_const=default.bound_a, b_const=default.bound_b, s=1, lambda_v=0.0, n_steps=0):
    if not (a_const > 0 and b_const > 0):
      raise DomainError(f'A and B must be positive, got A={a_const}, B={b_const}')
    if int(s) != s or s < 1:
      raise DomainError(f'coarsening factor must be a positive integer, got s={s}')
    if not lambda_v >= 0:
      raise DomainError(f'lambda_v must be non negative, got {lambda_v}')
    if int(n_steps) != n_steps or n_steps < 0:
      raise DomainError(f'n_steps must be a non negative integer, got {n_steps}')
    self.a_const = float(a_const)
    self.b_const = float(b_const)
    self.s = int(s)
    self.lambda_v = float(lambda_v)
    self.n_steps = int(n_steps)

  @classmethod
  def from_run(
      cls,
      equation,
      u0: ScalarField1D,
      time_spec: TimeSpec,
      s,
      a_const=default.bound_a,
      b_const=default.bound_b,
      speed=None,
  ):
    """
    lambda_v = speed * dt / h on the fine grid, speed defaults to the
    characteristic speed of the equation on u0
    """
    if isinstance(equation, str):
      equation = resolve_equation(equation)
    if speed is None:
      lambda_v = equation.cfl_number(u0, time_spec.dt)
    else:
      lambda_v = abs(speed) * time_spec.dt / u0.grid.h
    return cls(
      a_const=a_const,
      b_const=b_const,
      s=s,
      lambda_v=lambda_v,
      n_steps=time_spec.n_steps
    )

  @property
  def factor(self):
    return self.a_const + self.b_const * self.s

  def fork(self, **kwargs):
    return BoundParams(**{**{k: getattr(self, k) for k in self.__slots__}, **kwargs})

  def __repr__(self):
    return (
      f'BoundParams(A={self.a_const}, B={self.b_const}, s={self.s}, '
      f'lambda_v={self.lambda_v}, N={self.n_steps})'
    )


def initial_roughness(u0):
  """M0 = max |u_m - u_n| over adjacent nodes"""
  values = u0.values if isinstance(u0, ScalarField1D) else np.asarray(u0, dtype=np.float64)
  if values.ndim != 1 or len(values) < 2:
    raise DomainError(f'need at least 2 nodes to measure roughness, got shape {values.shape}')
  return float(np.max(np.abs(np.diff(values))))


def _check_m0(m0):
  if not m0 > 0:
    raise HypothesisError(f'the bound holds for M0 > 0, got M0={m0}')


def bound_series(params: BoundParams, m0, n_steps=None):
  """theorem bound for N = 0 .. n_steps, each the partial sum of the same series"""
  _check_m0(m0)
  n_steps = params.n_steps if n_steps is None else n_steps
  ratio = params.lambda_v / 2
  scale = params.factor * m0

  series = []
  total, term = 0.0, 1.0
  for _ in range(n_steps + 1):
    total += term
    term *= ratio
    series.append(scale * total)
  return series


def theorem_bound(params: BoundParams, m0):
  _check_m0(m0)
  ratio = params.lambda_v / 2
  total, term = 0.0, 1.0
  for _ in range(params.n_steps + 1):
    total += term
    term *= ratio
    # once the terms underflow the sum is final
    if term == 0.0:
      break
  return params.factor * m0 * total


def corollary_bound(params: BoundParams, m0):
  if not params.lambda_v < 2:
    raise HypothesisError(f'the series converges for lambda_v < 2, got {params.lambda_v}')
  _check_m0(m0)
  return 2 * params.factor * m0 / (2 - params.lambda_v)


def coarse_tangents(values, boundary=PERIODIC):
  """central differences in coarse index units, one sided at Dirichlet ends"""
  values = np.asarray(values, dtype=np.float64)
  tangents = np.empty_like(values)
  if boundary == PERIODIC:
    core = values[:-1]
    tangents[:-1] = (np.roll(core, -1) - np.roll(core, 1)) / 2
    tangents[-1] = tangents[0]
  elif boundary == DIRICHLET:
    tangents[1:-1] = (values[2:] - values[:-2]) / 2
    tangents[0] = values[1] - values[0]
    tangents[-1] = values[-1] - values[-2]
  else:
    raise DomainError(f'unknown boundary {boundary!r}')
  return tangents


def interpolate_coarse_to_fine(
    w: ScalarField1D,
    s,
    boundary=PERIODIC,
    grid: GridSpec1D = None
) -> ScalarField1D:
  """
  One cubic per coarse interval evaluated at s + 1 ticks. Coarse nodes are
  copied through, so v equals w there.

  Args:
    w: coarse field on step s * h
    s: coarsening factor
    boundary: picks the tangent rule at the domain ends
    grid: fine grid to attach to the result, defaults to step w.grid.h / s
  """
  if int(s) != s or s < 1:
    raise DomainError(f'coarsening factor must be a positive integer, got s={s}')
  s = int(s)
  coarse = w.grid
  n_fine = (coarse.n_nodes - 1) * s + 1
  if grid is None:
    grid = GridSpec1D(x0=coarse.x0, h=coarse.h / s, n_nodes=n_fine)
  elif grid.n_nodes != n_fine:
    raise DomainError(f'{grid} does not refine {coarse} by s={s}')
  if s == 1:
    return ScalarField1D(grid, w.values)

  values = w.values
  tangents = coarse_tangents(values, boundary)
  blocks = np.stack([values[:-1], values[1:], tangents[:-1], tangents[1:]], axis=-1)

  basis = BlockDiagonalBasis(len(blocks))
  batch = HermiteBatch.from_vector(batch_coefficients(basis, blocks.reshape(-1)))
  table = evaluate_batch(batch, EvaluationGrid(s))

  fine = np.empty(n_fine, dtype=np.float64)
  fine[:-1] = table[:, :s].reshape(-1)
  fine[-1] = table[-1, s]
  fine[::s] = values
  return ScalarField1D(grid, fine)


class ErrorReport:
  def __init__(
      self,
      m0,
      params: BoundParams,
      bound_theorem,
      bound_corollary,
      max_error,
      error_profile,
      worst_step=0,
      u=None,
      v=None,
      compared_steps=None,
  ):
    if not max_error >= 0:
      raise DomainError(f'max_error must be non negative, got {max_error}')
    self.m0 = m0
    self.params = params
    self.bound_theorem = bound_theorem
    self.bound_corollary = bound_corollary
    self.max_error = max_error
    self.error_profile = error_profile
    self.worst_step = worst_step
    self.u = u
    self.v = v
    self.compared_steps = compared_steps

  @property
  def bound(self):
    """the corollary when lambda_v < 2, otherwise the theorem partial sum"""
    return self.bound_theorem if self.bound_corollary is None else self.bound_corollary

  @property
  def margin_ratio(self):
    return self.max_error / self.bound

  @property
  def holds(self):
    return self.max_error <= self.bound

  def to_dict(self):
    p = self.params
    return dict(
      m0=self.m0,
      lambda_v=p.lambda_v,
      s=p.s,
      A=p.a_const,
      B=p.b_const,
      n_steps=p.n_steps,
      bound_theorem=self.bound_theorem,
      bound_corollary=self.bound_corollary,
      max_error=self.max_error,
      margin_ratio=self.margin_ratio,
      worst_step=self.worst_step,
    )

  def save(self, path):
    from .data.io import save_json
    save_json(self.to_dict(), str(path))
    return path

  def dump_profile(self, path):
    """CSV `node,x,u,v,abs_error` at the step with the largest error"""
    from .data.io import write_csv
    if self.u is None or self.v is None:
      raise DomainError('the report carries no per node profile')
    rows = zip(
      range(len(self.error_profile)),
      self.u.x,
      self.u.values,
      self.v.values,
      self.error_profile
    )
    return write_csv(rows, str(path), header=('node', 'x', 'u', 'v', 'abs_error'))

  def __repr__(self):
    return (
      f'ErrorReport(max_error={self.max_error:.6g}, bound={self.bound:.6g}, '
      f'margin_ratio={self.margin_ratio:.3g}, {self.params})'
    )


def run_comparison(
    u0: ScalarField1D,
    s,
    time: TimeSpec,
    equation='burgers',
    params: BoundParams = None,
    boundary=PERIODIC,
    store_every=1,
    callbacks=None,
    concurrent=False,
    speed=None,
) -> ErrorReport:
  """
  Runs the fine and the coarse solve with the same dt and compares v with u
  at every stored level.

  Args:
    u0: fine initial data, (n_nodes - 1) must be divisible by s
    s: coarsening factor
    time: shared time step and step count
    equation: an Equation or a registered name
    params: bound constants, defaults to A=8, B=2 with lambda_v measured from u0
    boundary: 'periodic' or 'dirichlet'
    store_every: stride between compared levels
    callbacks: passed to the fine run
    concurrent: run the two solves in separate threads
    speed: reference speed v in lambda_v = v dt / h when params is None, for
      Burgers an upper bound of |u| rather than sup |u0|
  """
  if isinstance(equation, str):
    equation = resolve_equation(equation)
  if not isinstance(equation, Equation):
    raise DomainError(f'expected an Equation, got {equation!r}')

  w0 = restrict(u0, s)
  if params is None:
    params = BoundParams.from_run(equation, u0, time, s, speed=speed)
  elif params.s != s or params.n_steps != time.n_steps:
    raise DomainError(
      f'{params} does not match s={s}, N={time.n_steps} of the comparison'
    )

  # hypotheses are checked before any solving
  m0 = initial_roughness(u0)
  bound_theorem = theorem_bound(params, m0)
  bound_corollary = corollary_bound(params, m0) if params.lambda_v < 2 else None

  solve = dict(time_spec=time, equation=equation, store_every=store_every, boundary=boundary)
  if concurrent:
    with ThreadPoolExecutor(max_workers=2) as pool:
      fine = pool.submit(run, u0, callbacks=callbacks, grid_label='fine', **solve)
      coarse = pool.submit(run, w0, grid_label='coarse', **solve)
      fine, coarse = fine.result(), coarse.result()
  else:
    fine = run(u0, callbacks=callbacks, grid_label='fine', **solve)
    coarse = run(w0, grid_label='coarse', **solve)

  max_error, worst = -1.0, 0
  worst_u = worst_v = None
  for (step, u), w in zip(fine, coarse.fields):
    v = interpolate_coarse_to_fine(w, s, boundary=boundary, grid=u.grid)
    error = float(np.max(np.abs(v.values - u.values)))
    if error > max_error:
      max_error, worst, worst_u, worst_v = error, step, u, v

  report = ErrorReport(
    m0=m0,
    params=params,
    bound_theorem=bound_theorem,
    bound_corollary=bound_corollary,
    max_error=max_error,
    error_profile=np.abs(worst_v.values - worst_u.values),
    worst_step=worst,
    u=worst_u,
    v=worst_v,
    compared_steps=list(fine.steps),
  )
  log.info(
    f'max |v - u| = {report.max_error:.6g} at step {worst}, '
    f'bound {report.bound:.6g} (margin ratio {report.margin_ratio:.3g})'
  )
  return report
