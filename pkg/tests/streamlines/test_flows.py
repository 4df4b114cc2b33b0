import numpy as np
import pytest

from lfinterp.exceptions import DomainError, TraceError
from lfinterp.solver import GridSpec1D, Sine
from lfinterp.streamlines import (
  CylinderFlow,
  FieldFlow,
  FieldProfile,
  SolidRotation,
  UniformFlow,
  cylinder_seeds,
  random_seeds,
  trace_pathlines,
  vectorize,
)


def test_uniform():
  lines = trace_pathlines(UniformFlow((1.0, 0.0, 0.0)), [[0.0, 0.0, 0.0]], segment_dt=1.0, n_segments=3)
  assert lines.positions.shape == (1, 4, 3)
  assert np.array_equal(lines.positions[0], [[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]])
  assert np.array_equal(lines.velocities[0], np.tile([1.0, 0.0, 0.0], (4, 1)))
  assert lines.s_points == lines.n_segments + 1


def test_zero_field():
  seeds = random_seeds(5, seed=0)
  lines = trace_pathlines(UniformFlow((0.0, 0.0, 0.0)), seeds, segment_dt=0.3, n_segments=4)
  for k in range(5):
    assert np.array_equal(lines.positions[:, k], seeds)
  assert not lines.velocities.any()


def test_one_dimensional_seeds():
  lines = trace_pathlines(UniformFlow((2.0,)), [0.0, 1.0], segment_dt=0.5, n_segments=2)
  assert lines.dims == 1
  assert np.array_equal(lines.positions[:, :, 0], [[0, 1, 2], [1, 2, 3]])


def test_rotation_spirals_outward():
  lines = trace_pathlines(SolidRotation(omega=1.0), [[1.0, 0.0, 0.0]], segment_dt=0.01, n_segments=100)
  radius = np.hypot(lines.positions[0, :, 0], lines.positions[0, :, 1])

  assert np.all(np.diff(radius) > 0)
  drift = radius[-1] - radius[0]
  assert 0 < drift < 0.01
  # explicit Euler grows the radius by sqrt(1 + (omega dt)^2) per segment
  assert radius[-1] == pytest.approx((1 + 1e-4) ** 50, rel=1e-12)
  assert np.all(lines.positions[0, :, 2] == 0)


def test_workers_do_not_change_paths():
  flow = SolidRotation(omega=0.7, center=(0.1, -0.2))
  seeds = random_seeds(9, seed=4)
  single = trace_pathlines(flow, seeds, segment_dt=0.05, n_segments=20)
  threaded = trace_pathlines(flow, seeds, segment_dt=0.05, n_segments=20, workers=3)
  assert np.array_equal(single.positions, threaded.positions)
  assert np.array_equal(single.velocities, threaded.velocities)


def test_trace_error():
  def sampler(p):
    v = np.ones_like(p)
    v[p[:, 0] > 1.5] = np.nan
    return v

  with pytest.raises(TraceError) as e:
    trace_pathlines(sampler, [[0.0], [1.0]], segment_dt=1.0, n_segments=3)
  assert e.value.trajectory == 1
  assert e.value.segment == 1

  with pytest.raises(TraceError) as e:
    trace_pathlines(sampler, [[0.0], [1.0]], segment_dt=1.0, n_segments=3, workers=2)
  assert e.value.trajectory in (0, 1)


def test_trace_arguments():
  flow = UniformFlow()
  with pytest.raises(DomainError):
    trace_pathlines(flow, np.zeros((0, 3)), 1.0, 2)
  with pytest.raises(DomainError):
    trace_pathlines(flow, np.zeros((2, 3)), 0.0, 2)
  with pytest.raises(DomainError):
    trace_pathlines(flow, np.zeros((2, 3)), 1.0, 0)


def test_cylinder():
  flow = CylinderFlow(radius=2.0)
  v = flow(np.array([[0.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 1.0, 1.0]]))
  assert np.allclose(v, [[1, 0, 0], [0, 0, 0], [0.5, 0, 0]])

  swirl = CylinderFlow(radius=1.0, swirl=2.0)
  v = swirl(np.array([[3.0, 0.5, 0.0]]))
  assert np.allclose(v, [[0.75, 0.0, 1.0]])

  with pytest.raises(DomainError):
    CylinderFlow(radius=0.0)


def test_field_flow():
  grid = GridSpec1D.over(1.0, 41)
  field = Sine(amplitude=0.25, offset=0.75).field(grid)

  profile = FieldProfile(field)
  assert profile(np.array([0.25, 1.25]))[0] == pytest.approx(1.0)
  assert profile(np.array([1.25]))[0] == pytest.approx(profile(np.array([0.25]))[0])

  flow = FieldFlow(field, radius=5.0)
  assert flow.length == pytest.approx(1.0)
  v = flow(np.array([[0.25, 0.0, 0.0], [0.5, 0.0, 0.0]]))
  assert v[:, 0] == pytest.approx([1.0, 0.75])

  with pytest.raises(DomainError):
    FieldFlow(np.zeros(10))


def test_vectorize():
  sampler = vectorize(lambda p: (-p[1], p[0]), dims=2)
  v = sampler(np.array([[1.0, 0.0], [0.0, 2.0]]))
  assert np.array_equal(v, [[0.0, 1.0], [-2.0, 0.0]])


def test_seeds():
  seeds = cylinder_seeds(200, radius=5.0, x=1.5, seed=0)
  assert seeds.shape == (200, 3)
  assert np.all(seeds[:, 0] == 1.5)
  assert np.all(np.hypot(seeds[:, 1], seeds[:, 2]) <= 0.8 * 5.0)

  assert np.array_equal(random_seeds(4, seed=1), random_seeds(4, seed=1))
  assert np.all(np.abs(random_seeds(100, dims=2, scale=3.0, seed=2)) <= 3.0)
