from collections import OrderedDict

from ..utils import camel_to_snake
from .base import Callback, FunctionCallback


def broadcast(method):
  """turns a hook of Callbacks into a fan out to every enabled member"""
  name = method.__name__

  def fan_out(self, **kwargs):
    for member in self:
      if member.enabled:
        getattr(member, name)(**kwargs)

  fan_out.__name__ = name
  return fan_out


class Callbacks(Callback):
  """
  Named, ordered group of callbacks, members are reachable as attributes
  under the snake case of their class name (`callbacks.norm_monitor`).
  """

  def __init__(self, callbacks=()):
    self.__dict__['_members'] = OrderedDict()
    for c in callbacks:
      self.append(c)

  def append(self, callback: Callback):
    self._members[camel_to_snake(type(callback).__name__)] = callback
    return self

  def __getattr__(self, name):
    members = self.__dict__['_members']
    if name in members:
      return members[name]
    raise AttributeError(name)

  def __contains__(self, name):
    return name in self._members

  def __iter__(self):
    yield from self._members.values()

  def __len__(self):
    return len(self._members)

  def __repr__(self):
    return f"Callbacks({', '.join(self._members)})"

  def on(self, event, function=None):
    """registers `function` for `event`, usable as a decorator"""
    if 'function_callback' not in self._members:
      self.append(FunctionCallback())

    if function is not None:
      self.function_callback.on(event, function)
      return self

    def decorator(f):
      self.function_callback.on(event, f)
      return f

    return decorator

  @broadcast
  def on_run_start(self, history=None, equation=None):
    pass

  @broadcast
  def on_step_end(self, step=None, field=None):
    pass

  @broadcast
  def on_store(self, step=None, field=None, norm=None):
    pass

  @broadcast
  def on_run_end(self, history=None):
    pass

  @broadcast
  def on_error(self, error=None, step=None):
    pass
