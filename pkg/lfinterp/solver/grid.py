import math
from typing import List

import numpy as np

from ..exceptions import DomainError


class GridSpec1D:
  """
  Uniform 1D grid, node j sits at x0 + j * h.

  Periodic fields store the closing node twice (the last value mirrors the
  first), so the period is (n_nodes - 1) * h for both fine and restricted grids.
  """
  __slots__ = ('x0', 'h', 'n_nodes')

  def __init__(self, x0=0.0, h=1.0, n_nodes=3):
    if not (h > 0 and math.isfinite(h)):
      raise DomainError(f'grid step must be positive and finite, got h={h}')
    if int(n_nodes) != n_nodes or n_nodes < 3:
      raise DomainError(f'the 3 point stencil needs at least 3 nodes, got n_nodes={n_nodes}')
    if not math.isfinite(x0):
      raise DomainError(f'grid origin must be finite, got x0={x0}')
    self.x0 = float(x0)
    self.h = float(h)
    self.n_nodes = int(n_nodes)

  @classmethod
  def over(cls, length, n_nodes, x0=0.0):
    """grid of n_nodes covering [x0, x0 + length] end points included"""
    return cls(x0=x0, h=length / (n_nodes - 1), n_nodes=n_nodes)

  @property
  def length(self):
    return (self.n_nodes - 1) * self.h

  @property
  def x(self):
    return self.x0 + self.h * np.arange(self.n_nodes, dtype=np.float64)

  def coarsen(self, s):
    if int(s) != s or s < 1:
      raise DomainError(f'coarsening factor must be a positive integer, got s={s}')
    if (self.n_nodes - 1) % s:
      raise DomainError(
        f'(n_nodes - 1) = {self.n_nodes - 1} is not divisible by s={s}'
      )
    return GridSpec1D(x0=self.x0, h=s * self.h, n_nodes=(self.n_nodes - 1) // s + 1)

  def __eq__(self, other):
    return (
      isinstance(other, GridSpec1D)
      and self.x0 == other.x0
      and self.h == other.h
      and self.n_nodes == other.n_nodes
    )

  def __hash__(self):
    return hash((self.x0, self.h, self.n_nodes))

  def __repr__(self):
    return f'GridSpec1D(x0={self.x0}, h={self.h}, n_nodes={self.n_nodes})'


class TimeSpec:
  __slots__ = ('dt', 'n_steps', 'cfl_constant')

  def __init__(self, dt, n_steps=0, cfl_constant=1.0):
    if not (dt > 0 and math.isfinite(dt)):
      raise DomainError(f'time step must be positive and finite, got dt={dt}')
    if int(n_steps) != n_steps or n_steps < 0:
      raise DomainError(f'n_steps must be a non negative integer, got {n_steps}')
    if not 0 < cfl_constant <= 1:
      raise DomainError(f'CFL constant must be in (0, 1], got c={cfl_constant}')
    self.dt = float(dt)
    self.n_steps = int(n_steps)
    self.cfl_constant = float(cfl_constant)

  @classmethod
  def from_cfl_number(cls, lambda_v, h, speed, n_steps=0, cfl_constant=1.0):
    """time step giving the CFL number lambda_v = speed * dt / h"""
    if not (lambda_v > 0 and speed > 0):
      raise DomainError(f'lambda_v and speed must be positive, got {lambda_v}, {speed}')
    return cls(dt=lambda_v * h / speed, n_steps=n_steps, cfl_constant=cfl_constant)

  @property
  def duration(self):
    return self.dt * self.n_steps

  def __repr__(self):
    return f'TimeSpec(dt={self.dt}, n_steps={self.n_steps}, cfl_constant={self.cfl_constant})'


class ScalarField1D:
  __slots__ = ('grid', 'values')

  def __init__(self, grid: GridSpec1D, values, check=True):
    if check:
      values = np.array(values, dtype=np.float64)
      if values.shape != (grid.n_nodes,):
        raise DomainError(
          f'expected {grid.n_nodes} values for {grid}, got shape {values.shape}'
        )
      if not np.all(np.isfinite(values)):
        raise DomainError('field values must be finite')
    else:
      values = np.asarray(values, dtype=np.float64)
    values.setflags(write=False)
    self.grid = grid
    self.values = values

  @property
  def x(self):
    return self.grid.x

  def sup_norm(self):
    return float(np.max(np.abs(self.values)))

  def replace(self, values, check=True):
    return ScalarField1D(self.grid, values, check=check)

  def __len__(self):
    return self.grid.n_nodes

  def __repr__(self):
    return f'ScalarField1D({self.grid}, sup={self.sup_norm():.6g})'


class StabilityNorm:
  """||u|| = K sup_j |u_j| with 0 < K <= 1/2"""
  __slots__ = ('k_constant',)

  def __init__(self, k_constant=0.5):
    if not 0 < k_constant <= 0.5:
      raise DomainError(f'K must be in (0, 1/2], got {k_constant}')
    self.k_constant = float(k_constant)

  def __call__(self, field: ScalarField1D):
    return self.k_constant * field.sup_norm()

  def of_norms(self, sup_norms):
    return [self.k_constant * n for n in sup_norms]

  def is_nonincreasing(self, history: 'SolutionHistory', slack=1e-12):
    norms = self.of_norms(history.norm_history)
    return all(b <= a * (1 + slack) for a, b in zip(norms, norms[1:]))

  def __repr__(self):
    return f'StabilityNorm(K={self.k_constant})'


class SolutionHistory:
  def __init__(self, time_spec: TimeSpec, store_every=1):
    self.time_spec = time_spec
    self.store_every = store_every
    self.fields: List[ScalarField1D] = []
    self.steps: List[int] = []
    self.norm_history: List[float] = []

  def append(self, step, field: ScalarField1D):
    if self.fields and field.grid != self.grid:
      raise DomainError(f'all stored levels must share {self.grid}, got {field.grid}')
    self.fields.append(field)
    self.steps.append(step)
    self.norm_history.append(field.sup_norm())

  @property
  def grid(self):
    return self.fields[0].grid if self.fields else None

  @property
  def initial(self):
    return self.fields[0]

  @property
  def final(self):
    return self.fields[-1]

  @property
  def times(self):
    return [s * self.time_spec.dt for s in self.steps]

  def values(self):
    """stored levels stacked into a (levels, nodes) array"""
    return np.stack([f.values for f in self.fields])

  def is_nonincreasing(self, slack=1e-12):
    n = self.norm_history
    return all(b <= a * (1 + slack) for a, b in zip(n, n[1:]))

  def __len__(self):
    return len(self.fields)

  def __getitem__(self, item):
    return self.fields[item]

  def __iter__(self):
    return zip(self.steps, self.fields)

  def __repr__(self):
    return (
      f'SolutionHistory(levels={len(self)}, last_step={self.steps[-1] if self.steps else None}, '
      f'grid={self.grid})'
    )


def stability_norm(field: ScalarField1D, k_constant=0.5):
  return StabilityNorm(k_constant)(field)
