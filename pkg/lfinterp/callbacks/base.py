from collections import defaultdict

EVENTS = ('run_start', 'step_end', 'store', 'run_end', 'error')


class Callback:
  """
  Receives the events of a solver run. Every hook is optional, `run` calls

    on_run_start(history, equation)
    on_step_end(step, field)          after every step
    on_store(step, field, norm)       when a level is kept in the history
    on_run_end(history)
    on_error(error, step)             before the error propagates
  """
  enabled = True

  def disable(self):
    self.enabled = False

  def on_run_start(self, history=None, equation=None):
    pass

  def on_step_end(self, step=None, field=None):
    pass

  def on_store(self, step=None, field=None, norm=None):
    pass

  def on_run_end(self, history=None):
    pass

  def on_error(self, error=None, step=None):
    pass


class FunctionCallback(Callback):
  """forwards events to plain functions registered with `on(event, f)`"""

  def __init__(self):
    self.functions = defaultdict(list)

  def on(self, event, function):
    if event not in EVENTS:
      raise ValueError(f'unknown event {event!r}, must be one of {", ".join(EVENTS)}')
    if function not in self.functions[event]:
      self.functions[event].append(function)

  def _fire(self, event, kwargs):
    for f in self.functions[event]:
      f(**kwargs)

  def on_run_start(self, **kwargs):
    self._fire('run_start', kwargs)

  def on_step_end(self, **kwargs):
    self._fire('step_end', kwargs)

  def on_store(self, **kwargs):
    self._fire('store', kwargs)

  def on_run_end(self, **kwargs):
    self._fire('run_end', kwargs)

  def on_error(self, **kwargs):
    self._fire('error', kwargs)
