__version__ = '0.1.0'

from .config.setup import registry, default

register = registry
resolve = registry.resolve

from .data.io import load, save
from .exceptions import (
  LfinterpError,
  DomainError,
  HypothesisError,
  CFLError,
  NumericalError,
  BlowUpError,
  TraceError,
  ResourceError,
  CheckFailure,
)


def seed(val=1):
  import random
  import numpy as np
  random.seed(val)
  np.random.seed(val)
  return val


def rng(val=None):
  """numpy Generator seeded with `val`, defaults to default.seed"""
  import numpy as np
  return np.random.default_rng(default.seed if val is None else val)
