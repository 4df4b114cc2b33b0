"""
Modified Lax-Friedrichs update

  u_j^{n+1} = (u_{j+1} + u_j + u_{j-1}) / 3 - dt / (2h) * a_j * (u_{j+1} - u_{j-1})

with a_j = v for linear advection and a_j = u_j for inviscid Burgers in advective form.
"""

import numpy as np

from ..exceptions import BlowUpError, CFLError, DomainError
from .grid import ScalarField1D


PERIODIC = 'periodic'
DIRICHLET = 'dirichlet'
BOUNDARIES = (PERIODIC, DIRICHLET)


def cfl_number(speed, dt, h):
  return abs(speed) * dt / h


# closing node and first node of a periodic field may differ by rounding only
CLOSING_RTOL = 1e-12


def check_closed(values):
  """periodic fields store the closing node twice, values[-1] must mirror values[0]"""
  first, last = values[0], values[-1]
  scale = max(1.0, abs(first), abs(last))
  if not abs(last - first) <= CLOSING_RTOL * scale:
    raise DomainError(
      f"periodic field does not close: values[-1]={last!r} differs from values[0]={first!r}"
    )


def neighbours(values, boundary=PERIODIC):
  """returns (left, center, right) for the nodes that get updated"""
  if boundary == PERIODIC:
    center = values[:-1]
    return np.roll(center, 1), center, np.roll(center, -1)
  elif boundary == DIRICHLET:
    return values[:-2], values[1:-1], values[2:]
  raise DomainError(f'unknown boundary {boundary!r}, expected one of {", ".join(BOUNDARIES)}')


def assemble(values, updated, boundary=PERIODIC):
  """writes the updated nodes back, periodic grids mirror the closing node"""
  out = np.empty_like(values)
  if boundary == PERIODIC:
    out[:-1] = updated
    out[-1] = updated[0]
  else:
    out[0] = values[0]
    out[1:-1] = updated
    out[-1] = values[-1]
  return out


class Equation:
  name = None

  def speed(self, field: ScalarField1D):
    """largest characteristic speed, enters the CFL number"""
    raise NotImplementedError()

  def transport(self, center):
    """the a_j factor multiplying the centered difference"""
    raise NotImplementedError()

  def cfl_number(self, field: ScalarField1D, dt):
    return cfl_number(self.speed(field), dt, field.grid.h)

  def max_dt(self, field: ScalarField1D, c=1.0):
    from .lf import cfl_max_dt
    return cfl_max_dt(field.grid.h, self.speed(field), c)

  def step(self, u: ScalarField1D, dt, boundary=PERIODIC, cfl_limit=1.0) -> ScalarField1D:
    cfl = self.cfl_number(u, dt)
    if cfl > cfl_limit:
      raise CFLError(cfl, limit=cfl_limit)
    if boundary == PERIODIC:
      check_closed(u.values)

    left, center, right = neighbours(u.values, boundary)
    updated = (right + center + left) / 3.0 \
      - (dt / (2 * u.grid.h)) * self.transport(center) * (right - left)

    if not np.all(np.isfinite(updated)):
      raise BlowUpError(message=f'{self.name} update produced non-finite values')

    return ScalarField1D(u.grid, assemble(u.values, updated, boundary), check=False)

  def __call__(self, u, dt, boundary=PERIODIC, cfl_limit=1.0):
    return self.step(u, dt, boundary=boundary, cfl_limit=cfl_limit)

  def __repr__(self):
    return f'{self.__class__.__name__}()'


class Advection(Equation):
  name = 'advection'

  def __init__(self, speed=1.0):
    if not np.isfinite(speed):
      raise DomainError(f'advection speed must be finite, got {speed}')
    self.velocity = float(speed)

  def speed(self, field=None):
    return abs(self.velocity)

  def transport(self, center):
    return self.velocity

  def __repr__(self):
    return f'Advection(speed={self.velocity})'


class Burgers(Equation):
  """inviscid u_t + u u_x = 0"""
  name = 'burgers'

  def speed(self, field):
    return field.sup_norm()

  def transport(self, center):
    return center


def lf_step_advection(u: ScalarField1D, dt, speed, boundary=PERIODIC, cfl_limit=1.0):
  return Advection(speed).step(u, dt, boundary=boundary, cfl_limit=cfl_limit)


def lf_step_burgers(u: ScalarField1D, dt, boundary=PERIODIC, cfl_limit=1.0):
  return Burgers().step(u, dt, boundary=boundary, cfl_limit=cfl_limit)
