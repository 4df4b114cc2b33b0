import logging

from lfinterp import callbacks
from lfinterp.solver import Advection, GridSpec1D, Sine, TimeSpec, run


def sine_field(nodes=41, amplitude=1.0):
  grid = GridSpec1D.over(1.0, nodes)
  return Sine(amplitude=amplitude).field(grid)


def test():
  cbs = callbacks.get_callbacks(
    log={'freq': 5},
    progress=False
  )

  assert not any(isinstance(x, callbacks.ProgressBar) for x in cbs)
  assert any(isinstance(x, callbacks.Logger) for x in cbs)
  assert any(isinstance(x, callbacks.NormMonitor) for x in cbs)

  for cb in cbs:
    if isinstance(cb, callbacks.Logger):
      assert cb.freq == 5

  assert any(isinstance(x, callbacks.ProgressBar) for x in callbacks.get_callbacks(progress=True))
  assert callbacks.get_callbacks(log=False, monitor=False) == []


def test_events_are_forwarded():
  u0 = sine_field()
  time = TimeSpec(dt=0.5 * u0.grid.h, n_steps=10)

  events = []
  cbs = callbacks.Callbacks()
  cbs.on('run_start', lambda history, equation: events.append('start'))
  cbs.on('step_end', lambda step, field: events.append(step))
  cbs.on('store', lambda step, field, norm: events.append(('store', step)))

  @cbs.on('run_end')
  def end(history):
    events.append(('end', len(history)))

  run(u0, time, equation=Advection(1.0), store_every=5, callbacks=cbs)

  assert events[0] == 'start'
  assert [e for e in events if isinstance(e, int)] == list(range(1, 11))
  assert events.index(('store', 5)) == events.index(5) + 1
  assert ('store', 5) in events and ('store', 10) in events
  assert events[-1] == ('end', 3)


def test_disabled_callback_is_skipped():
  class Counter(callbacks.Callback):
    steps = 0

    def on_step_end(self, step=None, field=None):
      self.steps += 1

  counter = Counter()
  counter.disable()
  u0 = sine_field()
  run(u0, TimeSpec(dt=0.5 * u0.grid.h, n_steps=3), equation=Advection(1.0), callbacks=[counter])
  assert counter.steps == 0


def test_norm_monitor_records_increases():
  monitor = callbacks.NormMonitor(warn=False)
  u0 = sine_field()
  run(u0, TimeSpec(dt=0.5 * u0.grid.h, n_steps=20), equation=Advection(1.0), callbacks=[monitor])

  assert monitor.steps == list(range(21))
  assert monitor.nonincreasing

  monitor.on_store(step=21, field=None, norm=monitor.norms[-1] * 2)
  assert not monitor.nonincreasing
  assert monitor.increases[0][0] == 21


def test_logger(caplog):
  u0 = sine_field()
  logger = callbacks.Logger(freq=10)
  with caplog.at_level(logging.INFO, logger='lfinterp.run'):
    run(u0, TimeSpec(dt=0.5 * u0.grid.h, n_steps=20), equation=Advection(1.0), callbacks=[logger])

  messages = [r.getMessage() for r in caplog.records]
  assert any('Starting run' in m for m in messages)
  assert any('Completed run' in m for m in messages)
  assert sum('sup_norm' in m for m in messages) >= 3
