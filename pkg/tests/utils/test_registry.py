import pytest

from lfinterp.config.registry import Registry, RegistryError, ResolutionError
from lfinterp.solver.equations import Advection, Burgers, Equation
from lfinterp.streamlines.flows import Flow, SolidRotation, UniformFlow


def test_registry():
  r = Registry()

  assert len(r) == 0, "Registry didn't start out empty"
  r.register(Advection, name='advection')
  assert len(r) == 1

  assert 'advection' in r._records
  assert r._records['advection'].x is Advection

  r2 = Registry(types=(Equation,))

  r2.register(Burgers)

  with pytest.raises(RegistryError):
    r2.register(UniformFlow)


def test_registry_nesting():
  r = Registry()

  assert isinstance(r.equation, Registry)

  r.equation.register(Advection)
  r.equation.nonlinear.register(Burgers)

  assert len(r.equation) == 2
  assert len(r.equation.nonlinear) == 1


def test_resolve():
  registry = Registry()
  lf = lambda: None
  lf.registry = registry
  lf.register = registry
  lf.resolve = registry.resolve

  lf.register.flow(SolidRotation, name='rotation')
  assert lf.resolve.flow('rotation', instance=False) is SolidRotation

  flow = lf.resolve.flow('rotation', omega=2.0)
  assert isinstance(flow, SolidRotation)
  assert flow.omega == 2.0

  assert lf.registry.has(SolidRotation)
  assert 'rotation' in lf.registry
  assert 'rotation' in lf.registry.flow
  assert 'rotation' not in lf.registry.equation

  existing = UniformFlow()
  assert lf.resolve.flow(existing, types=(Flow,)) is existing

  @lf.register.flow
  class Still(Flow):
    pass

  assert lf.resolve.flow('Still', instance=False) is Still

  @lf.register('double')
  def double(x):
    return 2 * x

  assert lf.resolve('double') is double
  assert lf.resolve(double)(3) == 6

  with pytest.raises(ResolutionError):
    lf.resolve.flow('missing')

  with pytest.raises(ResolutionError):
    lf.resolve.flow(None, required=True)

  with pytest.raises(ResolutionError):
    lf.resolve.flow('rotation', types=(Equation,))


def test_lfinterp_registry():
  import lfinterp

  assert len(lfinterp.registry.equation) == 2
  assert len(lfinterp.registry.profile) == 4
  assert len(lfinterp.registry.flow) == 4
  assert set(lfinterp.registry.bench.keys()) == {'gp', 'cr', 'race'}

  burgers = lfinterp.resolve.equation('burgers', required=True)
  assert isinstance(burgers, Burgers)

  advection = lfinterp.resolve.equation('advection', speed=-2.0)
  assert advection.velocity == -2.0

  lines = lfinterp.registry.tree()
  assert lines[0] == 'registry'
  assert any('.equation' in line for line in lines)
