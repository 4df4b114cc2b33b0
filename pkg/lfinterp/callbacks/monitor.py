import logging

from .base import Callback

log = logging.getLogger(__name__)


class NormMonitor(Callback):
  """
  Records the sup norm of every stored level and counts increases beyond a
  relative slack. Nothing is enforced, schemes run above the convex
  combination limit are expected to grow.
  """

  def __init__(self, slack=1e-12, warn=True):
    self.slack = slack
    self.warn = warn
    self.steps = []
    self.norms = []
    self.increases = []

  def on_run_start(self, history=None, equation=None):
    self.steps = list(history.steps) if history else []
    self.norms = list(history.norm_history) if history else []
    self.increases = []

  def on_store(self, step=None, field=None, norm=None):
    if self.norms and norm > self.norms[-1] * (1 + self.slack):
      self.increases.append((step, self.norms[-1], norm))
      if self.warn and len(self.increases) == 1:
        log.warning(
          f'sup norm increased at step {step}: {self.norms[-1]:.17g} -> {norm:.17g}'
        )
    self.steps.append(step)
    self.norms.append(norm)

  @property
  def nonincreasing(self):
    return not self.increases
