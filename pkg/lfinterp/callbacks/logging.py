import logging

from .base import Callback


class Logger(Callback):
  def __init__(self, freq=1000, logger=None, level=logging.INFO):
    self.freq = freq
    self.logger = logger or logging.getLogger('lfinterp.run')
    self.level = level
    self.n_steps = None

  def log(self, *args, sep='\t', **kwargs):
    parts = [str(a) for a in args]
    if kwargs:
      parts.append(sep.join(f'{k}: {v}' for k, v in kwargs.items()))
    self.logger.log(self.level, ' '.join(parts))

  def __call__(self, *args, **kwargs):
    self.log(*args, **kwargs)

  def on_run_start(self, history=None, equation=None):
    self.n_steps = history.time_spec.n_steps if history else None
    self.log(
      'Starting run',
      equation=equation,
      grid=history.grid if history else None,
      steps=self.n_steps,
    )

  def on_store(self, step=None, field=None, norm=None):
    if self.freq and step % self.freq == 0:
      self.log(step=f'{step:>8}', sup_norm=f'{norm:.6e}')

  def on_run_end(self, history=None):
    self.log(
      'Completed run',
      levels=len(history),
      final_sup_norm=f'{history.norm_history[-1]:.6e}',
    )

  def on_error(self, error=None, step=None):
    self.logger.error(f'run failed at step {step}: {error}')
