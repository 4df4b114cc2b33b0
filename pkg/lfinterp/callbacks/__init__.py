from .base import Callback, FunctionCallback
from .callbacks import Callbacks
from .logging import Logger
from .monitor import NormMonitor
from .progbar import ProgressBar


def _maybe_init(value, cls, **kwargs):
  if value is None or value is False:
    return None
  if isinstance(value, dict):
    return cls(**{**value, **kwargs})
  return cls(**kwargs)


def get_callbacks(
    interactive=False,
    log=True,
    progress=False,
    monitor=True,
):
  return [
    x for x in (
      _maybe_init(progress, ProgressBar, notebook=interactive),
      _maybe_init(log, Logger),
      _maybe_init(monitor, NormMonitor),
    ) if x]
