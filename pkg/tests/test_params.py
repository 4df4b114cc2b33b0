import pytest

from lfinterp import params
from lfinterp.params import Choice, CompareParams, Range, SimulateParams, ValidationError


def test():
  class Params(params.HyperParams):
    a = 4
    b = 'b'


  p = Params()
  assert p.a == 4
  assert p.b == 'b'

  assert len(p) == 2

  p = Params(a=3)
  assert p.a == 3
  assert p.b == 'b'

  assert p['a', 'b'] == (3, 'b')

  for k in p:
    assert k in ('a', 'b')

  assert 'a' in p
  assert 'x' not in p

  with pytest.raises(ValueError):
    Params(c=1)


def test_serialization(tmpdir):

  class Params(params.HyperParams):
    a = 4
    b = 'b'

  p = Params()

  p.save(tmpdir / 'params.json')
  p2 = p.load(tmpdir / 'params.json')
  assert (tmpdir / 'params.json').exists()
  assert p == p2

  p.save(tmpdir / 'params.yaml')
  p2 = p.load(tmpdir / 'params.yaml')
  assert (tmpdir / 'params.yaml').exists()
  assert p == p2


def test_override_skips_missing_flags():
  p = SimulateParams()
  q = p.override(steps=7, dt=None, equation='burgers')

  assert q.steps == 7
  assert q.equation == 'burgers'
  assert q.dt is None
  assert p.steps == SimulateParams().steps


def test_validation():
  class Params(params.HyperParams):
    c: Range(0.0, 1.0) = 1.0
    equation: Choice(('advection', 'burgers')) = 'advection'
    h: float = 0.5

  Params().validate()
  # ints are accepted for float fields
  Params(h=1).validate()

  with pytest.raises(ValidationError):
    Params(c=1.5).validate()

  with pytest.raises(ValidationError):
    Params(equation='euler').validate()

  with pytest.raises(ValidationError):
    Params(h='x').validate()


def test_compare_defaults():
  p = CompareParams().validate()

  assert p.equation == 'burgers'
  assert p.lambda_v == 1.0
  assert p.coarsen_s == 10
  assert p.bound_a == 8.0 and p.bound_b == 2.0
  assert p.steps == 10 ** 4
  assert (p.nodes - 1) % p.coarsen_s == 0
  assert p.amplitude < p.speed
