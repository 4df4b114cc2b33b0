from pathlib import Path


class default:
  root = Path('~/.lfinterp/')
  runs_root = './runs/'

  cfl_constant = 1.0
  bound_a = 8.0
  bound_b = 2.0
  flops_per_cell_update = 10.0
  bytes_per_value = 8

  # relative slack allowed when checking the sup norm does not grow
  norm_slack = 1e-12

  seed = 1
  workers = 1
  repetitions = 5

  # error bound experiment, Burgers starts from a sine of amplitude
  # compare_amplitude * speed so the step CFL number stays below 1
  compare_nodes = 201
  compare_amplitude = 0.8
  compare_coarsen = 10
  compare_steps = 10 ** 4
  compare_full_steps = 10 ** 5

  # two-method race, lengths in cm and speeds in cm/s. The three point
  # stencil amplifies some modes above lambda_v = sqrt(2/3), the race stays below
  race = dict(
    length=100.0,
    v_max=10.0,
    m_trajectories=10 ** 3,
    ticks=10,
    duration=10.0,
    n_segments=100,
    cfl_constant=0.5,
    radius=5.0,
    swirl=0.1,
  )
  race_full = dict(
    length=100.0,
    v_max=10.0,
    m_trajectories=10 ** 4,
    ticks=10,
    duration=60.0,
    n_segments=100,
    cfl_constant=0.5,
    radius=5.0,
    swirl=0.1,
  )

  # cost model: 3D grid 10 x 10 x 1000 cm, 50 cm/s, one minute
  model = dict(
    domain_extents=(10.0, 10.0, 1000.0),
    h=0.5,
    v_max=50.0,
    duration=60.0,
  )

  @classmethod
  def run_root(cls, name):
    from ..utils import timestr
    return Path(cls.runs_root) / name / timestr().replace(':', '-')
