import logging
from contextlib import ContextDecorator
from statistics import median
from time import perf_counter

log = logging.getLogger(__name__)


class Task(ContextDecorator):
  __slots__ = ('name', 'start_time', 'end_time', 'meta', 'log')

  def __init__(self, name=None, start=None, end=None, meta=None, log=False):
    self.name = name
    self.start_time = start
    self.end_time = end
    self.meta = meta or {}
    self.log = log

  def start(self, time=None, meta=None):
    if meta:
      self.meta.update(meta)
    self.start_time = perf_counter() if time is None else time
    if self.log:
      log.debug(f'starting {self.name or id(self)}')

  def end(self, time=None, meta=None):
    self.end_time = perf_counter() if time is None else time
    if self.log:
      log.debug(f'completed {self.name or id(self)} in {self.seconds:.9g} seconds')
    if meta:
      self.meta.update(meta)

  @classmethod
  def begin(cls, name=None, meta=None, log=False):
    t = cls(name=name, meta=meta, log=log)
    t.start()
    return t

  @property
  def seconds(self):
    if self.start_time is None or self.end_time is None:
      return None
    return self.end_time - self.start_time

  def __enter__(self):
    self.start()
    return self

  def __exit__(self, exc_type, exc_val, exc_tb):
    self.end()

  def __repr__(self):
    return f"Task({self.name or id(self)}, seconds={self.seconds})"


class Timer:
  """collects named Tasks, e.g. the repetitions of a benchmark"""

  def __init__(self, log=False):
    self.tasks = []
    self.log = log

  def task(self, name, **meta):
    task = Task.begin(name=name, meta=meta, log=self.log)
    self.tasks.append(task)
    return task

  def seconds(self, name=None):
    return [
      t.seconds for t in self.tasks
      if (name is None or t.name == name) and t.seconds is not None
    ]

  def median(self, name=None):
    return median(self.seconds(name))
