class LfinterpError(Exception):
  pass


class DomainError(LfinterpError, ValueError):
  pass


class HypothesisError(DomainError):
  pass


class CFLError(DomainError):
  def __init__(self, cfl_number, limit=1.0, step=None, grid=None):
    self.cfl_number = cfl_number
    self.limit = limit
    self.step = step
    self.grid = grid
    super().__init__(cfl_number, limit)

  def __str__(self):
    where = ''
    if self.grid is not None:
      where += f' on {self.grid} grid'
    if self.step is not None:
      where += f' at step {self.step}'
    return f'CFL number {self.cfl_number:.6g} exceeds limit {self.limit:.6g}{where}'


class NumericalError(LfinterpError, ArithmeticError):
  pass


class BlowUpError(NumericalError):
  def __init__(self, step=None, grid=None, message=None):
    self.step = step
    self.grid = grid
    self.message = message
    super().__init__(step, grid)

  def __str__(self):
    where = f' on {self.grid} grid' if self.grid is not None else ''
    return (
      f'non-finite values{where} at step {self.step}'
      + (f' ({self.message})' if self.message else '')
    )


class TraceError(NumericalError):
  def __init__(self, trajectory, segment):
    self.trajectory = trajectory
    self.segment = segment
    super().__init__(trajectory, segment)

  def __str__(self):
    return f'non-finite velocity sampled for trajectory {self.trajectory} at segment {self.segment}'


class ResourceError(LfinterpError, MemoryError):
  def __init__(self, message, **sizes):
    self.sizes = sizes
    super().__init__(message)

  def __str__(self):
    sizes = ', '.join(f'{k}={v}' for k, v in self.sizes.items())
    return f'{self.args[0]} ({sizes})' if sizes else self.args[0]


class CheckFailure(LfinterpError):
  pass
