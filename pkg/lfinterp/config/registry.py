"""
Name to component lookup for equations, boundaries, initial profiles, flows
and bench operations.

Kinds are nested registries created on attribute access, so
`registry.flow.register(SolidRotation, name='rotation')` files the sampler
under `flow` and `registry.resolve.flow('rotation', omega=2.0)` builds it.
A name is visible from the parent registry, so `'rotation' in registry`.
"""

from collections import OrderedDict
from functools import partial
from itertools import chain

from ..exceptions import LfinterpError


class RegistryError(LfinterpError):
  pass


class ResolutionError(RegistryError):
  pass


def default_names(x):
  from ..utils import camel_to_snake
  name = x.__name__
  snake = camel_to_snake(name)
  return (snake, name) if snake != name else (name,)


class Record:
  __slots__ = ('x', 'init')

  def __init__(self, x, init=None):
    """
    Args:
      x: registered class or function
      init: optional factory called as init(x, *args, **kwargs) on resolve
    """
    self.x = x
    self.init = init

  def build(self, *args, **kwargs):
    if self.init:
      return self.init(self.x, *args, **kwargs)
    return self.x(*args, **kwargs)


class Resolver:
  __slots__ = ('registry',)

  def __init__(self, registry: 'Registry'):
    self.registry = registry

  def resolve(
      self,
      x,
      required=False,
      instance=True,
      types=None,
      args=None,
      kwargs=None,
  ):
    """
    Turns a name, class or ready object into a component.

    Names are looked up in the registry. Classes are instantiated with
    `args`/`kwargs` unless `instance=False`. Anything else passes through,
    so callers can hand in a configured Equation or Flow directly.
    """
    given = x
    args, kwargs = args or (), kwargs or {}
    if isinstance(x, str):
      try:
        record = self.registry[x]
      except KeyError as e:
        raise ResolutionError(e.args[0]) from e
      if instance and (record.init or isinstance(record.x, type)):
        x = record.build(*args, **kwargs)
      else:
        x = record.x
    elif instance and isinstance(x, type):
      x = x(*args, **kwargs)

    if x is None:
      if required:
        raise ResolutionError(
          f'nothing to resolve in {self.registry.name or "registry"}, a value is required'
        )
      return x

    if types and not isinstance(x, types):
      expected = ', '.join(t.__name__ for t in types)
      raise ResolutionError(
        f'{given!r} resolved to {type(x).__name__}, expected one of {expected}'
      )
    return x

  def __call__(
      self, x, *_args, required=False, instance=True, types=None,
      args=None, kwargs=None, **_kwargs):
    return self.resolve(
      x,
      required=required,
      instance=instance,
      types=types,
      args=args or _args,
      kwargs=kwargs or _kwargs,
    )

  def __getattr__(self, name):
    return getattr(self.registry, name).resolve


class Registry:
  def __init__(self, types=None, name=None):
    """
    Args:
      types: only accept subclasses or instances of these types
      name: kind label, set for nested registries
    """
    self.name = name
    self.types = types

    self._records = OrderedDict()
    self._kinds = OrderedDict()

    self.resolve = Resolver(self)

  def register(self, x, name=None, init=None):
    if isinstance(x, str) and name is None and init is None:
      # @registry.bench('gp')
      # def bench_gp(...):
      return partial(self.register, name=x)

    if self.types and not (
        issubclass(x, self.types) if isinstance(x, type)
        else isinstance(x, self.types)):
      raise RegistryError(
        f'{x!r} is not one of {", ".join(t.__name__ for t in self.types)}, '
        f'the types accepted by {self.name or "this registry"}'
      )

    names = default_names(x) if name is None else name
    if isinstance(names, str):
      names = (names,)

    record = Record(x, init=init)
    for n in names:
      self._records[n] = record
    return x

  def __call__(self, x, name=None, init=None):
    return self.register(x, name, init)

  def __getattr__(self, name: str) -> 'Registry':
    if name.startswith('_'):
      raise AttributeError(name)
    kinds = self.__dict__['_kinds']
    if name not in kinds:
      kinds[name] = Registry(name=name)
    return kinds[name]

  def __getitem__(self, name) -> Record:
    if name in self._records:
      return self._records[name]
    for kind in self._kinds.values():
      try:
        return kind[name]
      except KeyError:
        pass
    options = ', '.join(self.keys()) or 'nothing registered'
    raise KeyError(f"unknown {self.name or 'component'} '{name}', options: {options}")

  def __contains__(self, name):
    try:
      self[name]
    except KeyError:
      return False
    return True

  def items(self):
    return (
      *((k, r.x) for k, r in self._records.items()),
      *chain.from_iterable(kind.items() for kind in self._kinds.values())
    )

  def keys(self):
    return [k for k, _ in self.items()]

  def values(self):
    # aliases share a record, count each component once
    return list(OrderedDict.fromkeys(x for _, x in self.items()))

  def has(self, x):
    return x in self.values()

  def __len__(self):
    return len(self.values())

  def tree(self, contents=True, indent=0):
    lines = []
    if not indent:
      lines.append('registry')
      indent = 2
    for name, kind in self._kinds.items():
      lines.append(f"{' ' * indent}.{name}")
      lines.extend(kind.tree(contents=contents, indent=indent + 2))

    if contents:
      for name, record in self._records.items():
        target = record.x
        details = f"{getattr(target, '__module__', '')}.{getattr(target, '__name__', target)}"
        lines.append(f"{' ' * (indent + 2)}- {name}\t\t({details})")
    return lines

  def __str__(self):
    return f"<Registry '{self.name}' ({len(self)} entries)>"
