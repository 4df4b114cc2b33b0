"""
Steady velocity samplers. A sampler maps positions of shape (K, dims) to
velocities of the same shape.
"""

import numpy as np

from ..exceptions import DomainError
from ..solver.grid import ScalarField1D


class Flow:
  dims = 3

  def __call__(self, positions):
    raise NotImplementedError()

  def __repr__(self):
    args = ', '.join(f'{k}={v}' for k, v in vars(self).items())
    return f'{self.__class__.__name__}({args})'


class UniformFlow(Flow):
  def __init__(self, velocity=(1.0, 0.0, 0.0)):
    self.velocity = np.asarray(velocity, dtype=np.float64)
    self.dims = len(self.velocity)

  def __call__(self, positions):
    positions = np.asarray(positions, dtype=np.float64)
    return np.broadcast_to(self.velocity, positions.shape).copy()


class SolidRotation(Flow):
  """rigid rotation about the axis through `center` parallel to z"""

  def __init__(self, omega=1.0, center=(0.0, 0.0), dims=3):
    if dims < 2:
      raise DomainError('a rotation needs at least 2 dimensions')
    self.omega = float(omega)
    self.center = np.asarray(center, dtype=np.float64)
    self.dims = dims

  def __call__(self, positions):
    positions = np.asarray(positions, dtype=np.float64)
    v = np.zeros_like(positions)
    v[:, 0] = -self.omega * (positions[:, 1] - self.center[1])
    v[:, 1] = self.omega * (positions[:, 0] - self.center[0])
    return v


class FieldProfile:
  """periodic linear interpolation of a 1D field, used as an axial velocity profile"""

  def __init__(self, field: ScalarField1D):
    self.field = field
    # the closing node of a periodic field duplicates the first one
    self._x = field.grid.x[:-1]
    self._values = field.values[:-1]

  def __call__(self, x):
    return np.interp(x, self._x, self._values, period=self.field.grid.length)

  def __repr__(self):
    return f'FieldProfile({self.field})'


class CylinderFlow(Flow):
  """
  Flow along a cylinder with axis x: the axial speed is profile(x) scaled by
  the Poiseuille factor 1 - (y^2 + z^2) / radius^2, an optional swirl rotates
  the cross section at swirl * profile(x) / v_ref rad per unit time.
  """
  dims = 3

  def __init__(self, profile=None, radius=1.0, swirl=0.0, v_ref=None):
    if isinstance(profile, ScalarField1D):
      profile = FieldProfile(profile)
    self.profile = profile or (lambda x: np.ones_like(x))
    if not radius > 0:
      raise DomainError(f'cylinder radius must be positive, got {radius}')
    self.radius = float(radius)
    self.swirl = float(swirl)
    self.v_ref = v_ref

  def __call__(self, positions):
    positions = np.asarray(positions, dtype=np.float64)
    x, y, z = positions[:, 0], positions[:, 1], positions[:, 2]
    axial = self.profile(x)
    shape = 1 - (y * y + z * z) / (self.radius * self.radius)
    v = np.empty_like(positions)
    v[:, 0] = axial * shape
    rate = self.swirl * axial / (self.v_ref or 1.0)
    v[:, 1] = -rate * z
    v[:, 2] = rate * y
    return v


class FieldFlow(CylinderFlow):
  """cylinder flow whose axial profile is a solved 1D field"""

  def __init__(self, field: ScalarField1D, radius=1.0, swirl=0.0, v_ref=None):
    if not isinstance(field, ScalarField1D):
      raise DomainError(f'FieldFlow needs a ScalarField1D, got {type(field).__name__}')
    super().__init__(FieldProfile(field), radius=radius, swirl=swirl, v_ref=v_ref)
    self.field = field

  @property
  def length(self):
    return self.field.grid.length


def vectorize(sampler, dims):
  """wraps a sampler taking a single (dims,) position"""
  def sample(positions):
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, dims)
    return np.stack([np.asarray(sampler(p), dtype=np.float64) for p in positions])
  return sample


def cylinder_seeds(m, radius=1.0, x=0.0, fill=0.8, seed=None):
  """M seeds on the cross section x = const, uniformly spread inside fill * radius"""
  rng = np.random.default_rng(seed)
  r = fill * radius * np.sqrt(rng.random(m))
  theta = 2 * np.pi * rng.random(m)
  return np.stack([np.full(m, x, dtype=np.float64), r * np.cos(theta), r * np.sin(theta)], axis=1)


def random_seeds(m, dims=3, scale=1.0, seed=None):
  rng = np.random.default_rng(seed)
  return scale * (2 * rng.random((m, dims)) - 1)
