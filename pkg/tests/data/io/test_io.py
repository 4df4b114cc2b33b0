import lfinterp
from lfinterp.data.io import format_value, iter_csv, write_csv


def test_io(tmpdir):
  x = {
    'a': 2
  }

  lfinterp.save(x, tmpdir / 'x.json')
  y = lfinterp.load(tmpdir / 'x.json')
  assert x == y

  lfinterp.save(x, tmpdir / 'x.yaml')
  y = lfinterp.load(tmpdir / 'x.yaml')
  assert x == y


def test_numpy_values_are_saved(tmpdir):
  import numpy as np

  x = {'values': np.arange(3, dtype=np.float64), 'n': np.int64(4), 'flag': np.bool_(True)}
  lfinterp.save(x, tmpdir / 'x.json')
  assert lfinterp.load(tmpdir / 'x.json') == {'values': [0.0, 1.0, 2.0], 'n': 4, 'flag': True}


def test_csv_round_trips_floats(tmpdir):
  rows = [(0, 0.1, 1 / 3), (1, 2.0 ** -40, -7.25)]
  path = write_csv(rows, tmpdir / 'nested' / 'x.csv', header=('i', 'a', 'b'))

  loaded = list(iter_csv(path))
  assert loaded[0]._fields == ('i', 'a', 'b')
  for row, original in zip(loaded, rows):
    assert int(row.i) == original[0]
    assert float(row.a) == original[1]
    assert float(row.b) == original[2]


def test_format_value():
  assert format_value(0.1) == '0.10000000000000001'
  assert format_value(3) == 3
  assert format_value('x') == 'x'
