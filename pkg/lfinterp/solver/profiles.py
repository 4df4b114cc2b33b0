"""Initial data on a uniform grid and the closed form translated profiles used as oracles"""

import numpy as np

from .grid import GridSpec1D, ScalarField1D


class Profile:
  def values(self, x, grid: GridSpec1D):
    raise NotImplementedError()

  def field(self, grid: GridSpec1D, periodic=False) -> ScalarField1D:
    """samples the profile on the grid, `periodic` closes the last node onto the first"""
    values = np.asarray(self.values(grid.x, grid), dtype=np.float64)
    if periodic:
      values[-1] = values[0]
    return ScalarField1D(grid, values)

  def __call__(self, grid: GridSpec1D, periodic=False) -> ScalarField1D:
    return self.field(grid, periodic=periodic)

  def __repr__(self):
    args = ', '.join(f'{k}={v}' for k, v in vars(self).items())
    return f'{self.__class__.__name__}({args})'


class Sine(Profile):
  def __init__(self, amplitude=1.0, periods=1, offset=0.0):
    self.amplitude = amplitude
    self.periods = periods
    self.offset = offset

  def values(self, x, grid):
    phase = 2 * np.pi * self.periods * (x - grid.x0) / grid.length
    return self.offset + self.amplitude * np.sin(phase)


class Gaussian(Profile):
  def __init__(self, amplitude=1.0, center=0.5, width=0.1, offset=0.0):
    """center and width are fractions of the domain length"""
    self.amplitude = amplitude
    self.center = center
    self.width = width
    self.offset = offset

  def values(self, x, grid):
    xi = (x - grid.x0) / grid.length
    return self.offset + self.amplitude * np.exp(-0.5 * ((xi - self.center) / self.width) ** 2)


class Linear(Profile):
  def __init__(self, slope=1.0, intercept=0.0):
    self.slope = slope
    self.intercept = intercept

  def values(self, x, grid):
    return self.intercept + self.slope * (x - grid.x0)


class Step(Profile):
  def __init__(self, amplitude=1.0, position=0.5, offset=0.0):
    self.amplitude = amplitude
    self.position = position
    self.offset = offset

  def values(self, x, grid):
    xi = (x - grid.x0) / grid.length
    return self.offset + self.amplitude * (xi < self.position).astype(np.float64)


def initial_profile(name, grid: GridSpec1D, periodic=False, **kwargs) -> ScalarField1D:
  from .. import resolve
  profile = resolve.profile(name, kwargs=kwargs, types=(Profile,))
  return profile.field(grid, periodic=periodic)


def exact_advection(profile: Profile, grid: GridSpec1D, speed, time) -> ScalarField1D:
  """initial profile translated by speed * time on the periodic domain"""
  shifted = grid.x0 + np.mod(grid.x - grid.x0 - speed * time, grid.length)
  return ScalarField1D(grid, profile.values(shifted, grid))
