from .equations import (
  Advection,
  Burgers,
  Equation,
  cfl_number,
  lf_step_advection,
  lf_step_burgers,
)
from .grid import (
  GridSpec1D,
  ScalarField1D,
  SolutionHistory,
  StabilityNorm,
  TimeSpec,
  stability_norm,
)
from .lf import (
  cfl_max_dt,
  dump_history,
  max_error,
  max_stable_dt,
  observed_order,
  restrict,
  run,
)
from .profiles import Gaussian, Linear, Profile, Sine, Step, exact_advection, initial_profile
