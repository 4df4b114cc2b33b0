import logging
import math

import numpy as np

from ..callbacks import Callbacks
from ..exceptions import BlowUpError, CFLError, DomainError
from .equations import PERIODIC, Equation, check_closed
from .grid import ScalarField1D, SolutionHistory, TimeSpec

log = logging.getLogger(__name__)


def cfl_max_dt(h, v_max, c=1.0):
  """largest admissible time step dt <= c * h / v"""
  if not h > 0:
    raise DomainError(f'grid step must be positive, got h={h}')
  if not v_max > 0:
    raise DomainError(f'speed must be positive, got v_max={v_max}')
  if not 0 < c <= 1:
    raise DomainError(f'CFL constant must be in (0, 1], got c={c}')
  return c * h / v_max


def resolve_equation(equation, **kwargs) -> Equation:
  from .. import resolve
  return resolve.equation(equation, kwargs=kwargs, types=(Equation,), required=True)


def run(
    initial: ScalarField1D,
    time_spec: TimeSpec,
    equation='advection',
    store_every=1,
    boundary=PERIODIC,
    callbacks=None,
    grid_label=None,
) -> SolutionHistory:
  """
  Explicit time loop, level n is stored when n % store_every == 0 (level 0 always).

  Args:
    initial: field at step 0
    time_spec: dt, number of steps and CFL constant used as the admissibility limit
    equation: an Equation or a registered name ('advection', 'burgers')
    store_every: stride between stored levels
    boundary: 'periodic' or 'dirichlet'
    callbacks: Callback instances notified on start, step, store, end and error
    grid_label: attached to raised errors to tell grids apart ('fine', 'coarse')
  """
  if int(store_every) != store_every or store_every < 1:
    raise DomainError(f'store_every must be a positive integer, got {store_every}')
  if boundary == PERIODIC:
    check_closed(initial.values)
  if isinstance(equation, str):
    equation = resolve_equation(equation)

  callbacks = Callbacks(callbacks or [])
  history = SolutionHistory(time_spec=time_spec, store_every=store_every)
  history.append(0, initial)

  log.debug(
    f'running {equation} on {initial.grid} for {time_spec.n_steps} steps '
    f'(dt={time_spec.dt:.6g}, boundary={boundary})'
  )
  callbacks.on_run_start(history=history, equation=equation)

  u = initial
  step = 0
  try:
    for step in range(1, time_spec.n_steps + 1):
      u = equation.step(
        u,
        time_spec.dt,
        boundary=boundary,
        cfl_limit=time_spec.cfl_constant
      )
      callbacks.on_step_end(step=step, field=u)
      if step % store_every == 0:
        history.append(step, u)
        callbacks.on_store(step=step, field=u, norm=history.norm_history[-1])
  except (CFLError, BlowUpError) as e:
    e.step = step
    e.grid = grid_label
    callbacks.on_error(error=e, step=step)
    raise

  callbacks.on_run_end(history=history)
  return history


def restrict(fine_initial: ScalarField1D, s) -> ScalarField1D:
  """every s-th sample on the grid with step s * h"""
  grid = fine_initial.grid.coarsen(s)
  return ScalarField1D(grid, fine_initial.values[::int(s)])


def max_stable_dt(field: ScalarField1D, equation, c=1.0):
  if isinstance(equation, str):
    equation = resolve_equation(equation)
  return equation.max_dt(field, c)


def observed_order(error_coarse, error_fine, ratio=2):
  """convergence order from errors measured at h and h / ratio"""
  if not (error_coarse > 0 and error_fine > 0):
    raise DomainError(f'errors must be positive, got {error_coarse}, {error_fine}')
  return math.log(error_coarse / error_fine) / math.log(ratio)


def max_error(a: ScalarField1D, b: ScalarField1D):
  return float(np.max(np.abs(a.values - b.values)))


def dump_history(history: SolutionHistory, path):
  from ..data.io import write_csv
  x = history.grid.x

  def rows():
    for step, field in history:
      for node, (xj, value) in enumerate(zip(x, field.values)):
        yield step, node, xj, value

  return write_csv(rows(), str(path), header=('step', 'node', 'x', 'value'))
