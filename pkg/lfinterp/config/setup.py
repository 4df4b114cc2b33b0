from .defaults import default
from .registry import Registry

## Configure Registry

registry = Registry()

# Equations
from ..solver.equations import Advection, Burgers, BOUNDARIES

registry.equation.register(Advection, name=('advection', 'Advection'))
registry.equation.register(Burgers, name=('burgers', 'Burgers'))

for boundary in BOUNDARIES:
  registry.boundary.register(boundary, name=boundary)

# Initial profiles
from ..solver import profiles

registry.profile.register(profiles.Sine, name=('sine', 'Sine'))
registry.profile.register(profiles.Gaussian, name=('gaussian', 'Gaussian'))
registry.profile.register(profiles.Linear, name=('linear', 'Linear'))
registry.profile.register(profiles.Step, name=('step', 'Step'))

# Velocity samplers
from ..streamlines import flows

registry.flow.register(flows.UniformFlow, name=('uniform', 'UniformFlow'))
registry.flow.register(flows.SolidRotation, name=('rotation', 'SolidRotation'))
registry.flow.register(flows.CylinderFlow, name=('cylinder', 'CylinderFlow'))
registry.flow.register(flows.FieldFlow, name=('field', 'FieldFlow'))

# Benchmarks
from .. import perf

registry.bench.register(perf.bench_gp, name='gp')
registry.bench.register(perf.bench_cr, name='cr')
registry.bench.register(perf.race_two_methods, name='race')
