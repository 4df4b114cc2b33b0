from .base import Callback


class ProgressBar(Callback):
  def __init__(self, length=None, notebook=False, desc='steps'):
    """
    Args:
      length: number of steps, taken from the run's TimeSpec if not provided
      notebook: use notebook progress bar
    """
    self.notebook = notebook
    self.length = length
    self.desc = desc
    self.bar = None

  def on_run_start(self, history=None, equation=None):
    if self.notebook:
      try:
        from tqdm.notebook import tqdm
      except ImportError:
        from tqdm import tqdm
    else:
      from tqdm import tqdm

    total = self.length or (history.time_spec.n_steps if history else None)
    self.bar = tqdm(desc=self.desc, total=total, unit='steps')

  def on_step_end(self, step=None, field=None):
    if self.bar is not None:
      self.bar.update(1)

  def on_run_end(self, history=None):
    self.close()

  def on_error(self, error=None, step=None):
    self.close()

  def close(self):
    if self.bar is not None:
      self.bar.close()
      self.bar = None
