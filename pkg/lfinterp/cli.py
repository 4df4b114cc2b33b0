import logging
from pathlib import Path

import click

from .exceptions import DomainError, NumericalError

log = logging.getLogger(__name__)


@click.group()
@click.option('-v', '--verbose', is_flag=True, help='log at DEBUG level')
def cli(verbose=False):
  logging.basicConfig(
    level=logging.DEBUG if verbose else logging.INFO,
    format='%(asctime)s %(levelname)s %(name)s: %(message)s'
  )


def grid_options(f):
  options = [
    click.option('--config', type=click.Path(exists=True, dir_okay=False), help='JSON or YAML scenario'),
    click.option('--grid-h', type=float),
    click.option('--nodes', type=int),
    click.option('--dt', type=float, help='time step, derived from --lambda-v when omitted'),
    click.option('--lambda-v', type=float, help='CFL number speed * dt / h'),
    click.option('--steps', type=int),
    click.option('--cfl-c', type=float, help='CFL constant c, steps above it are rejected'),
    click.option('--equation', type=click.Choice(['advection', 'burgers'])),
    click.option('--speed', type=float, help='advection speed, or the reference speed for burgers'),
    click.option('--boundary', type=click.Choice(['periodic', 'dirichlet'])),
    click.option('--profile', type=click.Choice(['sine', 'gaussian', 'linear', 'step'])),
    click.option('--amplitude', type=float),
    click.option('--store-every', type=int),
    click.option('--out-dir', type=click.Path(file_okay=False)),
  ]
  for option in reversed(options):
    f = option(f)
  return f


def load_params(cls, config=None, **flags):
  params = cls.load(config) if config else cls()
  return params.override(**flags).validate()


def out_dir(path, name):
  from .config.defaults import default
  path = Path(path) if path else default.run_root(name)
  path.mkdir(parents=True, exist_ok=True)
  return path


def build_problem(params):
  """initial field, equation and time spec of a grid scenario"""
  from .solver.grid import GridSpec1D, TimeSpec
  from .solver.lf import resolve_equation
  from .solver.profiles import initial_profile

  grid = GridSpec1D(x0=params.x0, h=params.grid_h, n_nodes=params.nodes)
  periodic = params.boundary == 'periodic'
  if params.profile == 'linear':
    u0 = initial_profile('linear', grid, periodic=periodic, slope=params.amplitude)
  else:
    u0 = initial_profile(params.profile, grid, periodic=periodic, amplitude=params.amplitude)

  if params.equation == 'advection':
    equation = resolve_equation('advection', speed=params.speed)
  else:
    equation = resolve_equation(params.equation)

  dt = params.dt
  if dt is None:
    dt = params.lambda_v * grid.h / abs(params.speed)
  time = TimeSpec(dt=dt, n_steps=params.steps, cfl_constant=params.cfl_c)
  return u0, equation, time


@cli.command()
@grid_options
@click.option('--progress/--no-progress', default=False)
def simulate(config, progress=False, **flags):
  """Run the Lax-Friedrichs solver and dump every stored level"""
  from .callbacks import get_callbacks
  from .data.io import save_json
  from .params import SimulateParams
  from .solver.lf import dump_history, run

  path = out_dir(flags.pop('out_dir', None), 'simulate')
  params = load_params(SimulateParams, config, **flags)
  params.save(path / 'params.json')

  u0, equation, time = build_problem(params)
  callbacks = get_callbacks(progress=progress)
  history = run(
    u0,
    time,
    equation=equation,
    store_every=params.store_every,
    boundary=params.boundary,
    callbacks=callbacks,
  )

  dump_history(history, path / 'solution.csv')
  summary = dict(
    equation=params.equation,
    grid_h=u0.grid.h,
    nodes=u0.grid.n_nodes,
    dt=time.dt,
    steps=time.n_steps,
    cfl_number=equation.cfl_number(u0, time.dt),
    levels=len(history),
    initial_sup_norm=history.norm_history[0],
    final_sup_norm=history.norm_history[-1],
    norm_nonincreasing=history.is_nonincreasing(),
  )
  save_json(summary, path / 'summary.json')
  click.echo(
    f"{summary['levels']} levels written to {path / 'solution.csv'}, "
    f"sup norm {summary['initial_sup_norm']:.6g} -> {summary['final_sup_norm']:.6g}"
  )


@cli.command()
@click.option('--config', type=click.Path(exists=True, dir_okay=False))
@click.option('--trajectories', type=int, help='number of particles M')
@click.option('--segments', type=int, help='number of traced segments N')
@click.option('--segment-dt', type=float)
@click.option('--ticks-r', type=int)
@click.option('--flow', type=click.Choice(['uniform', 'rotation', 'cylinder']))
@click.option('--workers', type=int)
@click.option('--seed', type=int)
@click.option('--raw-tangents', is_flag=True, help='feed velocities to the cubics unscaled')
@click.option('--out-dir', type=click.Path(file_okay=False))
def densify(config, raw_tangents=False, **flags):
  """Trace pathlines through a sampler and densify them with cubics"""
  from . import resolve
  from .data.io import save_json
  from .params import DensifyParams
  from .streamlines.flows import cylinder_seeds, random_seeds
  from .streamlines.pipeline import densify as densify_lines, dump_trajectories, trace_pathlines

  path = out_dir(flags.pop('out_dir', None), 'densify')
  params = load_params(DensifyParams, config, raw_tangents=raw_tangents or None, **flags)
  params.save(path / 'params.json')

  flow = resolve.flow(params.flow, required=True)
  if params.flow == 'cylinder':
    seeds = cylinder_seeds(params.trajectories, radius=flow.radius, seed=params.seed)
  else:
    seeds = random_seeds(params.trajectories, dims=flow.dims, seed=params.seed)

  lines = trace_pathlines(flow, seeds, params.segment_dt, params.segments, workers=params.workers)
  dense = densify_lines(lines, params.ticks_r, workers=params.workers, raw_tangents=params.raw_tangents)

  dump_trajectories(lines, path / 'streamlines.csv')
  dump_trajectories(dense, path / 'dense.csv')
  save_json(
    dict(flow=repr(flow), m=lines.m_trajectories, s_points=lines.s_points, dense_points=dense.n_points),
    path / 'summary.json'
  )
  click.echo(
    f'{lines.m_trajectories} trajectories: {lines.s_points} points densified to '
    f'{dense.n_points}, written to {path}'
  )


@cli.command()
@grid_options
@click.option('--coarsen-s', type=int)
@click.option('--bound-a', type=float)
@click.option('--bound-b', type=float)
@click.option('--paper-scale', '--full-scale', 'paper_scale', is_flag=True, help='run the published 10^5 steps')
@click.option('--concurrent', is_flag=True, help='run the fine and coarse solves in parallel')
def compare(config, paper_scale=False, concurrent=False, **flags):
  """Measure coarse solve plus interpolation against the fine solve"""
  from .bounds import BoundParams, run_comparison
  from .config.defaults import default
  from .params import CompareParams

  path = out_dir(flags.pop('out_dir', None), 'compare')
  params = load_params(CompareParams, config, paper_scale=paper_scale or None, **flags)
  if params.paper_scale and flags.get('steps') is None:
    params.steps = default.compare_full_steps
  params.save(path / 'params.json')

  u0, equation, time = build_problem(params)
  bound_params = BoundParams.from_run(
    equation,
    u0,
    time,
    params.coarsen_s,
    a_const=params.bound_a,
    b_const=params.bound_b,
    speed=params.speed,
  )
  report = run_comparison(
    u0,
    params.coarsen_s,
    time,
    equation=equation,
    params=bound_params,
    boundary=params.boundary,
    store_every=params.store_every,
    concurrent=concurrent,
  )
  report.save(path / 'report.json')
  report.dump_profile(path / 'profile.csv')

  if not report.holds:
    log.warning(f'measured error {report.max_error:.6g} exceeds the bound {report.bound:.6g}')
  click.echo(
    f'M0={report.m0:.6g} max|v-u|={report.max_error:.6g} '
    f'theorem={report.bound_theorem:.6g} corollary={report.bound_corollary} '
    f'margin={report.margin_ratio:.3g}'
  )


@cli.command()
@click.option('--config', type=click.Path(exists=True, dir_okay=False))
@click.option('--op', type=click.Choice(['gp', 'cr', 'race']))
@click.option('--trajectories', type=int, help='number of trajectories M')
@click.option('--segments', type=int, help='segments N, used by race')
@click.option('--ticks-r', type=int)
@click.option('--workers', type=int)
@click.option('--repetitions', type=int)
@click.option('--seed', type=int)
@click.option('--paper-scale', '--full-scale', 'paper_scale', is_flag=True, help='race with the published M=10^4 over 60 s')
@click.option('--out-dir', type=click.Path(file_okay=False))
def bench(config, paper_scale=False, **flags):
  """Time the G p and C R products or the two-method race"""
  from . import resolve
  from .config.defaults import default
  from .data.io import save_json
  from .params import BenchParams
  from .perf import write_bench_csv
  from .utils import env_info

  path = out_dir(flags.pop('out_dir', None), 'bench')
  params = load_params(BenchParams, config, paper_scale=paper_scale or None, **flags)
  params.save(path / 'params.json')

  run = resolve.bench(params.op, required=True)
  if params.op == 'race':
    scenario = dict(default.race_full if params.paper_scale else default.race)
    if params.trajectories:
      scenario['m_trajectories'] = params.trajectories
    if params.segments:
      scenario['n_segments'] = params.segments
    result = run(
      **{**scenario, 'ticks': params.ticks_r},
      workers=params.workers,
      repetitions=params.repetitions,
      seed=params.seed,
    )
    results = result.results()
    click.echo(
      f'fine {result.fine.median:.4g}s, coarse + densify {result.coarse.median:.4g}s, '
      f'ratio {result.ratio:.3g}'
    )
  else:
    result = run(
      m=params.trajectories or 10 ** 4,
      r=params.ticks_r,
      workers=params.workers,
      repetitions=params.repetitions,
      seed=params.seed,
    )
    results = [result]
    click.echo(
      f'{result.op} M={result.m_trajectories}: median {result.median:.4g}s, '
      f'working set {result.workset_bytes / 1024:.1f} KB'
    )
    if 'speedup' in result.meta:
      click.echo(f"speedup with {result.workers} workers: {result.meta['speedup']:.3g}")

  write_bench_csv(results, path / 'bench.csv')
  save_json(dict(result.to_dict(), env=env_info()), path / 'result.json')


@cli.command()
@click.option('--config', type=click.Path(exists=True, dir_okay=False))
@click.option('--grid-h', type=float)
@click.option('--speed', type=float)
@click.option('--duration', type=float)
@click.option('--cfl-c', type=float)
@click.option('--fields', type=int, help='fields stored per cell')
@click.option('--snapshots', type=int, help='snapshots kept in memory')
@click.option('--trajectories', type=int)
@click.option('--segments', type=int)
@click.option('--ticks-r', type=int)
@click.option('--coarsen-s', type=int, default=10, show_default=True)
@click.option('--out-dir', type=click.Path(file_okay=False))
def model(config, coarsen_s=10, **flags):
  """Flops and memory estimates of the fine and coarse solves"""
  from .data.io import save_json
  from .params import ModelParams
  from .perf import (
    CostModel,
    flops_estimate,
    memory_estimate,
    modeled_gain,
    snapshots_for_memory,
    spline_flops_estimate,
  )

  path = out_dir(flags.pop('out_dir', None), 'model')
  params = load_params(ModelParams, config, **flags)
  params.save(path / 'params.json')

  fine = CostModel(
    domain_extents=params.extents,
    h=params.grid_h,
    v_max=params.speed,
    duration=params.duration,
    cfl_constant=params.cfl_c,
    flops_per_cell_update=params.flops_per_cell,
  )
  coarse = fine.fork(h=coarsen_s * params.grid_h)

  report = {}
  for name, m in (('fine', fine), ('coarse', coarse)):
    estimate = flops_estimate(m)
    report[name] = dict(
      h=m.h,
      dt=m.dt,
      cells=estimate.cells,
      steps=estimate.steps,
      flops=estimate.flops,
      memory_bytes=memory_estimate(m, params.fields, params.snapshots),
      snapshots_per_gb=snapshots_for_memory(m, params.fields, 1e9),
    )
  report['gain'] = modeled_gain(fine, coarse)
  report['splines'] = {
    mode: spline_flops_estimate(params.trajectories, params.segments, params.ticks_r, mode=mode)
    for mode in ('dense', 'sparse', 'evaluation')
  }
  save_json(report, path / 'model.json')

  for name in ('fine', 'coarse'):
    r = report[name]
    click.echo(
      f"{name}: h={r['h']:g} cells={r['cells']} steps={r['steps']} "
      f"flops={r['flops']:.3g} memory={r['memory_bytes']:.3g} B"
    )
  click.echo(f"modeled gain {report['gain']:.3g}")


@cli.command()
@click.argument('names', nargs=-1)
def registry(names):
  """List contents of registry"""
  import lfinterp

  registry = lfinterp.registry
  for n in names:
    registry = getattr(registry, n)
  click.echo('\n'.join(registry.tree()))


def main(args=None):
  """runs the command group and maps errors to exit codes: 2 domain, 3 numerical"""
  from .config.registry import ResolutionError
  from .params import ValidationError

  try:
    rv = cli.main(args=args, prog_name='lfinterp', standalone_mode=False)
  except (DomainError, ValidationError, ResolutionError) as e:
    log.error(str(e))
    return 2
  except NumericalError as e:
    log.error(str(e))
    return 3
  except click.exceptions.Abort:
    click.echo('Aborted!', err=True)
    return 1
  except click.ClickException as e:
    e.show()
    return e.exit_code
  return rv if isinstance(rv, int) else 0
