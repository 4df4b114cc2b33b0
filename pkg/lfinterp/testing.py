"""
Oracles and checks shared by the tests and the benchmark harness
"""

import numpy as np

from .exceptions import CheckFailure


def horner(coefficients, t):
  """evaluates rows (a, b, c, d) of `coefficients` at t, one cubic at a time"""
  coefficients = np.asarray(coefficients, dtype=np.float64)
  a, b, c, d = np.moveaxis(coefficients, -1, 0)
  return ((a * t + b) * t + c) * t + d


def horner_table(coefficients, ticks):
  """(..., M, len(ticks)) table of cubic values, the loop oracle for C R"""
  coefficients = np.asarray(coefficients, dtype=np.float64)
  out = np.empty((*coefficients.shape[:-1], len(ticks)))
  for k, t in enumerate(ticks):
    out[..., k] = horner(coefficients, float(t))
  return out


def check_array(
  x,
  shape=None,
  dtype=None,
  finite=True,
  equal=None,
  close=None,
  atol=0.0,
  rtol=1e-12,
  lte=None,
  gte=None,
):
  """raises CheckFailure when `x` does not satisfy every given condition"""
  x = np.asarray(x)
  if shape is not None:
    if len(x.shape) != len(shape) or any(
        e is not None and s != e for s, e in zip(x.shape, shape)):
      raise CheckFailure(f'expected shape {shape}, got {x.shape}')
  if dtype is not None and x.dtype != dtype:
    raise CheckFailure(f'expected dtype {dtype}, got {x.dtype}')
  if finite and not np.all(np.isfinite(x)):
    raise CheckFailure('array contains non-finite values')
  if equal is not None and not np.array_equal(x, equal):
    raise CheckFailure(f'arrays differ in {np.count_nonzero(x != equal)} entries')
  if close is not None and not np.allclose(x, close, atol=atol, rtol=rtol):
    diff = np.max(np.abs(x - close))
    raise CheckFailure(f'arrays are not close, max difference {diff:.3g}')
  if lte is not None and not np.all(x <= lte):
    raise CheckFailure(f'values above {lte}')
  if gte is not None and not np.all(x >= gte):
    raise CheckFailure(f'values below {gte}')
  return x


def random_segments(m, seed=None, scale=1.0):
  """(M, 4) blocks (p1, p2, v1, v2)"""
  rng = np.random.default_rng(seed)
  return scale * rng.standard_normal((m, 4))


def random_coefficients(m, seed=None, components=()):
  rng = np.random.default_rng(seed)
  return rng.standard_normal((*components, m, 4))


def random_streamlines(m, s_points, dims=3, segment_dt=0.25, seed=None):
  from .streamlines.pipeline import StreamlineSet
  rng = np.random.default_rng(seed)
  positions = rng.standard_normal((m, s_points, dims))
  velocities = rng.standard_normal((m, s_points, dims))
  return StreamlineSet(positions, velocities, segment_dt)


def random_field(grid, seed=None, periodic=True):
  from .solver.grid import ScalarField1D
  rng = np.random.default_rng(seed)
  values = rng.standard_normal(grid.n_nodes)
  if periodic:
    values[-1] = values[0]
  return ScalarField1D(grid, values)
