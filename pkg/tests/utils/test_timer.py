from lfinterp.utils import camel_to_snake, chunk_ranges, env_info, timestr
from lfinterp.utils.decorators import lazy
from lfinterp.utils.timer import Task, Timer


def test_task():
  with Task('solve') as task:
    sum(range(1000))
  assert task.seconds > 0

  task = Task('manual', start=1.0, end=3.5)
  assert task.seconds == 2.5
  assert Task('open').seconds is None


def test_timer():
  timer = Timer()
  for _ in range(3):
    task = timer.task('gp')
    task.end()
  timer.task('cr', workers=2)

  assert len(timer.seconds('gp')) == 3
  # unfinished tasks are not counted
  assert len(timer.seconds()) == 3
  assert timer.median('gp') >= 0
  assert timer.tasks[-1].meta == {'workers': 2}


def test_lazy():
  calls = []

  class Grid:
    @lazy
    def table(self):
      calls.append(1)
      return [1, 2, 3]

  grid = Grid()
  assert grid.table is grid.table
  assert len(calls) == 1
  assert isinstance(Grid.table, lazy)



def test_helpers():
  assert camel_to_snake('NormMonitor') == 'norm_monitor'
  assert camel_to_snake('FunctionCallback') == 'function_callback'
  assert chunk_ranges(8, 4) == [(0, 2), (2, 4), (4, 6), (6, 8)]
  assert chunk_ranges(5, 1) == [(0, 5)]
  assert len(timestr()) == len('21-01-01T00:00:00')

  info = env_info()
  assert info['cpu_count'] >= 1
  assert 'numpy_version' in info
