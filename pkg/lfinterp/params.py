"""
Scenario parameters

Parameters are declared as class attributes on a `HyperParams` subclass,
annotations become typed fields:

  class Params(HyperParams):
    steps = 100
    equation: Choice(('advection', 'burgers')) = 'advection'
    cfl_c: Range(0, 1) = 1.0

  p = Params.load('scenario.json').override(steps=10)
"""

from abc import ABCMeta
from collections.abc import Sequence
from collections import OrderedDict
from typing import Dict
import logging


log = logging.getLogger(__name__)


class ValidationError(ValueError):
  pass


class Field:
  def __init__(
    self,
    *,
    name=None,
    help=None,
    type=None,
    required=False,
    default=None,
    choices=None
  ):
    self.name = name
    self.help = help
    self.type = type
    self.required = required
    self.default = default
    self.choices = choices

  def validate(self, val):
    if val is None:
      if self.required:
        raise ValidationError(f'{self.name} is required')
      return
    try:
      if self.type and not isinstance(val, self.type):
        # ints are accepted where floats are expected
        if not (self.type is float and isinstance(val, int) and not isinstance(val, bool)):
          raise ValidationError(
            f'Failed to validate {self.name}, the type {type(val)} is not a subclass of {self.type}')
    except TypeError:
      log.debug(f'skipping type validation for {self.name} and expected type {self.type}')
    if self.choices and val not in self.choices:
      raise ValidationError(f'{self.name}={val!r} must be one of {", ".join(map(str, self.choices))}')

  def __repr__(self):
    return f"{self.__class__.__name__}(type={self.type}, default={self.default})"


class Choice(Field):
  def __init__(self, choices=None, **kwargs):
    super().__init__(choices=choices, **kwargs)


class Range(Field):
  def __init__(self, start, end, **kwargs):
    super(Range, self).__init__(**kwargs)
    self.min = min(start, end)
    self.max = max(start, end)

  def validate(self, val):
    super().validate(val)
    if val is not None and not self.min <= val <= self.max:
      raise ValidationError(f'{self.name}={val} must be within [{self.min}, {self.max}]')


class HyperParamsBase:
  __fields__: Dict[str, Field]

  def __init__(self, **args):
    for k, f in self.__fields__.items():
      setattr(self, k, f.default)

    for k, v in args.items():
      if k in self.__fields__:
        setattr(self, k, v)
      else:
        raise ValueError(
          f'Unknown parameter: {k}, should be one of {", ".join(self.__fields__)}'
        )

  def validate(self):
    for k, f in self.__fields__.items():
      try:
        f.validate(getattr(self, k))
      except ValidationError as e:
        raise ValidationError(f"{k} failed validation. {e}") from e
    return self

  @classmethod
  def load(cls, path):
    from .data.io import load
    data = load(path)
    return cls(**data)

  def save(self, path):
    from .data.io import save
    save(self.to_dict(), path)
    return path

  def to_dict(self):
    return dict(self.items())

  def override(self, **args):
    """returns a copy with every argument that is not None applied"""
    return self.fork(**{k: v for k, v in args.items() if v is not None})

  def __iter__(self):
    return iter(self.keys())

  def __getitem__(self, item):
    if isinstance(item, (tuple, list)):
      return tuple(getattr(self, k) for k in item)
    return getattr(self, item)

  def __setitem__(self, k, v):
    setattr(self, k, v)

  def __len__(self):
    return len(self.__fields__)

  def __eq__(self, other):
    return len(self) == len(other) and list(self.keys()) == list(other.keys(
    )) and all(self[k] == other[k] for k in self.keys())

  def fork(self, **args):
    return self.__class__(**{**dict(self.items()), **args})

  def __repr__(self):
    return (
      f'{self.__class__.__name__}('
      f"{', '.join(f'{k}={v}' for k, v in self.items())}"
      ')'
    )

  def __str__(self):
    return (
      f'{self.__class__.__name__}(\n' +
      ',\n'.join('  {}={}'.format(k, v) for k, v in self.items()) +
      '\n)'
    )

  def __contains__(self, key):
    return key in self.__fields__

  def keys(self):
    return self.__fields__.keys()

  def values(self):
    return [getattr(self, k) for k in self.keys()]

  def items(self):
    return ((k, getattr(self, k)) for k in self.keys())


class MetaHyperParams(ABCMeta):
  def __new__(metaclass, class_name, bases, namespace):
    fields = OrderedDict()

    for base in reversed(bases):
      if issubclass(base, HyperParamsBase) and base != HyperParamsBase:
        fields.update(base.__fields__)

    new_attributes = {
      k: v
      for (k, v) in namespace.items()
      if not k.startswith('_') and
      not callable(v) and
      not isinstance(v, (classmethod, staticmethod, property))
    }

    for name, annotation in namespace.get('__annotations__', {}).items():
      if name not in new_attributes:
        continue
      if isinstance(annotation, Field):
        annotation.name = name
        fields[name] = annotation
      else:
        fields[name] = Field(name=name, type=annotation)

    for name, value in new_attributes.items():
      if name in fields:
        # already defined annotation, need to set default
        fields[name].default = value
      else:
        # new attribute without type annotation
        fields[name] = Field(
          name=name,
          default=value,
          type=type(value) if value is not None else None
        )

    return super().__new__(
      metaclass,
      class_name,
      bases,
      {
        '__fields__': fields,
        **namespace,
      }
    )


class HyperParams(HyperParamsBase, metaclass=MetaHyperParams):
  pass


# Scenario parameter sets used by the command line

class GridParams(HyperParams):
  grid_h: float = 0.005
  nodes: int = 201
  x0: float = 0.0
  dt: float = None
  steps: int = 100
  cfl_c: Range(0.0, 1.0) = 1.0
  lambda_v: float = 0.5
  equation: Choice(('advection', 'burgers')) = 'advection'
  speed: float = 1.0
  boundary: Choice(('periodic', 'dirichlet')) = 'periodic'
  profile: Choice(('sine', 'gaussian', 'linear', 'step')) = 'sine'
  amplitude: float = 1.0
  store_every: int = 1


class SimulateParams(GridParams):
  pass


class CompareParams(GridParams):
  equation: Choice(('advection', 'burgers')) = 'burgers'
  amplitude: float = 0.8
  lambda_v: float = 1.0
  steps: int = 10 ** 4
  coarsen_s: int = 10
  bound_a: float = 8.0
  bound_b: float = 2.0
  store_every: int = 10
  paper_scale: bool = False


class DensifyParams(HyperParams):
  trajectories: int = 8
  segments: int = 10
  segment_dt: float = 0.1
  ticks_r: int = 10
  flow: Choice(('uniform', 'rotation', 'cylinder')) = 'rotation'
  workers: int = 1
  seed: int = 1
  raw_tangents: bool = False


class BenchParams(HyperParams):
  op: Choice(('gp', 'cr', 'race')) = 'cr'
  trajectories: int = None
  segments: int = None
  ticks_r: int = 10
  workers: int = 1
  repetitions: int = 5
  seed: int = 1
  paper_scale: bool = False


class ModelParams(HyperParams):
  extents: Sequence = (10.0, 10.0, 1000.0)
  grid_h: float = 0.5
  speed: float = 50.0
  duration: float = 60.0
  cfl_c: Range(0.0, 1.0) = 1.0
  flops_per_cell: float = 10.0
  fields: int = 3
  snapshots: int = 1
  trajectories: int = 10 ** 4
  segments: int = 10 ** 3
  ticks_r: int = 10
