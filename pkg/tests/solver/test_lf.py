import csv

import numpy as np
import pytest

from lfinterp.exceptions import BlowUpError, CFLError, DomainError
from lfinterp.solver import (
  Advection,
  Burgers,
  GridSpec1D,
  ScalarField1D,
  Sine,
  StabilityNorm,
  Step,
  TimeSpec,
  cfl_max_dt,
  dump_history,
  exact_advection,
  lf_step_advection,
  lf_step_burgers,
  max_error,
  observed_order,
  restrict,
  run,
  stability_norm,
)


def constant(value, nodes=11, h=0.1):
  return ScalarField1D(GridSpec1D(h=h, n_nodes=nodes), np.full(nodes, value))


@pytest.mark.parametrize('h,v,c,expected', [
  (0.5, 50, 1, 0.01),
  (5, 50, 1, 0.1),
  (1, 1, 1, 1),
  (1, 1, 0.5, 0.5),
])
def test_cfl_max_dt(h, v, c, expected):
  assert cfl_max_dt(h, v, c) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize('h,v,c', [
  (0, 1, 1),
  (-1, 1, 1),
  (1, 0, 1),
  (1, 1, 0),
  (1, 1, 1.5),
])
def test_cfl_max_dt_rejects(h, v, c):
  with pytest.raises(DomainError):
    cfl_max_dt(h, v, c)


def test_constant_is_preserved():
  u = constant(7.0)
  for speed in (-3.0, 0.0, 2.5):
    dt = 0.9 * u.grid.h / max(abs(speed), 1.0)
    out = lf_step_advection(u, dt, speed)
    assert np.array_equal(out.values, u.values)

  dirichlet = lf_step_advection(u, 0.05, 1.0, boundary='dirichlet')
  assert np.array_equal(dirichlet.values, u.values)


def test_pure_average():
  grid = GridSpec1D(h=1.0, n_nodes=3)
  u = ScalarField1D(grid, [0.0, 1.0, 0.0])

  out = lf_step_advection(u, 0.5, 0.0)
  assert out.values[1] == pytest.approx(1 / 3)
  # closing node mirrors the first one
  assert out.values[2] == out.values[0]

  out = lf_step_advection(u, 0.5, 0.0, boundary='dirichlet')
  assert np.allclose(out.values, [0.0, 1 / 3, 0.0])


def test_periodic_field_must_close():
  grid = GridSpec1D(h=1.0, n_nodes=3)
  u = ScalarField1D(grid, [0.0, 1.0, 2.0])

  with pytest.raises(DomainError):
    lf_step_advection(u, 0.5, 0.0)
  with pytest.raises(DomainError):
    run(u, TimeSpec(dt=0.5, n_steps=0), equation=Advection(0.0))

  # the last node is a real boundary value under dirichlet
  out = lf_step_advection(u, 0.5, 0.0, boundary='dirichlet')
  assert out.values[-1] == 2.0

  # rounding in the closing node is tolerated
  closed = ScalarField1D(grid, [0.0, 1.0, 1e-16])
  assert lf_step_advection(closed, 0.5, 0.0).values[-1] == pytest.approx(2 / 3)


def test_profiles_close_periodic_grids():
  grid = GridSpec1D.over(1.0, 21)
  step = Step(amplitude=2.0).field(grid, periodic=True)
  assert step.values[-1] == step.values[0] == 2.0
  assert Step(amplitude=2.0).field(grid).values[-1] == 0.0

  history = run(step, TimeSpec(dt=0.5 * grid.h, n_steps=4), equation=Advection(1.0))
  assert history.final.values[-1] == history.final.values[0]


def test_cfl_violation():
  u = constant(1.0)
  with pytest.raises(CFLError) as e:
    lf_step_advection(u, 2 * u.grid.h, 1.0)
  assert e.value.cfl_number == pytest.approx(2.0)
  assert isinstance(e.value, DomainError)

  with pytest.raises(CFLError):
    lf_step_burgers(constant(4.0), u.grid.h / 2)


def test_burgers_fixed_points():
  zero = constant(0.0)
  assert np.array_equal(lf_step_burgers(zero, 0.05).values, zero.values)

  u = constant(0.5)
  assert np.array_equal(lf_step_burgers(u, 0.1).values, u.values)

  history = run(u, TimeSpec(dt=0.1, n_steps=50), equation=Burgers())
  assert np.array_equal(history.final.values, u.values)


def test_run_without_steps():
  u = Sine().field(GridSpec1D.over(1.0, 21))
  history = run(u, TimeSpec(dt=0.01, n_steps=0))
  assert len(history) == 1
  assert history.steps == [0]
  assert history.final is u


def test_store_every():
  u = Sine().field(GridSpec1D.over(1.0, 21))
  history = run(u, TimeSpec(dt=0.01, n_steps=10), store_every=4)
  assert history.steps == [0, 4, 8]
  assert history.values().shape == (3, 21)
  assert history.norm_history == [f.sup_norm() for f in history.fields]

  with pytest.raises(DomainError):
    run(u, TimeSpec(dt=0.01, n_steps=10), store_every=0)


def test_zero_speed_is_repeated_averaging():
  rng = np.random.default_rng(0)
  values = rng.standard_normal(17)
  values[-1] = values[0]
  u = ScalarField1D(GridSpec1D(h=0.1, n_nodes=17), values)

  history = run(u, TimeSpec(dt=0.05, n_steps=5), equation=Advection(0.0))

  core = values[:-1]
  for _ in range(5):
    core = (np.roll(core, -1) + core + np.roll(core, 1)) / 3.0
  assert np.allclose(history.final.values[:-1], core, rtol=1e-15, atol=1e-15)
  assert history.final.values[-1] == history.final.values[0]


def test_strong_stability():
  u = Sine().field(GridSpec1D.over(1.0, 101))
  time = TimeSpec.from_cfl_number(0.5, u.grid.h, 1.0, n_steps=10_000)
  history = run(u, time, equation=Advection(1.0), store_every=100)

  assert len(history) == 101
  assert history.is_nonincreasing()
  assert StabilityNorm(0.5).is_nonincreasing(history)
  assert stability_norm(history.final) == pytest.approx(0.5 * history.final.sup_norm())


def test_stability_norm_constant():
  with pytest.raises(DomainError):
    StabilityNorm(0.6)
  with pytest.raises(DomainError):
    StabilityNorm(0)
  assert StabilityNorm(0.25)(constant(-2.0)) == 0.5


def test_first_order_convergence():
  errors = []
  for nodes in (101, 201):
    grid = GridSpec1D.over(1.0, nodes)
    profile = Sine()
    time = TimeSpec.from_cfl_number(0.5, grid.h, 1.0, n_steps=int(round(0.5 * 2 / grid.h)))
    assert time.duration == pytest.approx(0.5)
    history = run(profile.field(grid), time, equation=Advection(1.0), store_every=time.n_steps)
    errors.append(max_error(history.final, exact_advection(profile, grid, 1.0, time.duration)))

  assert 0.7 <= observed_order(*errors) <= 1.3


def test_blow_up_is_reported():
  u = constant(1e308)
  with pytest.raises(BlowUpError) as e:
    run(u, TimeSpec(dt=0.05, n_steps=3), equation=Advection(0.0), grid_label='fine')
  assert e.value.step == 1
  assert e.value.grid == 'fine'
  assert 'fine' in str(e.value)


def test_restrict():
  grid = GridSpec1D(h=0.1, n_nodes=11)
  u = ScalarField1D(grid, np.arange(11.0))

  same = restrict(u, 1)
  assert same.grid == grid
  assert np.array_equal(same.values, u.values)

  coarse = restrict(u, 5)
  assert coarse.grid == GridSpec1D(h=0.5, n_nodes=3)
  assert np.array_equal(coarse.values, [0.0, 5.0, 10.0])

  with pytest.raises(DomainError):
    restrict(u, 3)
  with pytest.raises(DomainError):
    restrict(u, 0)


def test_dump_history(tmp_path):
  u = Sine().field(GridSpec1D.over(1.0, 5))
  history = run(u, TimeSpec(dt=0.1, n_steps=2))
  path = dump_history(history, tmp_path / 'solution.csv')

  with open(path) as f:
    rows = list(csv.reader(f))
  assert rows[0] == ['step', 'node', 'x', 'value']
  assert len(rows) == 1 + 3 * 5
  assert [int(r[0]) for r in rows[1::5]] == [0, 1, 2]
  assert float(rows[-1][3]) == history.final.values[-1]
