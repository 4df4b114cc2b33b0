"""
Reading and writing of run artifacts: scenario configs (json, yaml), reports
(json) and tables of solver levels, trajectories and timings (csv).
"""

import csv
import json
from collections import namedtuple
from pathlib import Path

import numpy as np


def format_value(x):
  """floats are written with 17 significant digits so they round trip exactly"""
  if isinstance(x, (float, np.floating)):
    return f'{float(x):.17g}'
  if isinstance(x, np.integer):
    return str(int(x))
  return x


def to_builtin(x):
  """converts numpy scalars, arrays, tuples and paths to plain json/yaml types"""
  if isinstance(x, dict):
    return {str(k): to_builtin(v) for k, v in x.items()}
  if isinstance(x, (list, tuple)):
    return [to_builtin(v) for v in x]
  if isinstance(x, np.ndarray):
    return to_builtin(x.tolist())
  if isinstance(x, np.floating):
    return float(x)
  if isinstance(x, np.integer):
    return int(x)
  if isinstance(x, np.bool_):
    return bool(x)
  if isinstance(x, Path):
    return str(x)
  return x


def _format_of(path, format):
  format = format or Path(path).suffix[1:]
  return 'yaml' if format == 'yml' else format


class Loader:
  """`load(path)` dispatches on the file suffix"""

  def __call__(self, path, format=None, **kwargs):
    format = _format_of(path, format)
    if format not in ('json', 'yaml', 'csv'):
      raise ValueError(f'unsupported file format {format!r} for {path}')
    return getattr(self, format)(str(path), **kwargs)

  def json(self, path):
    return load_json(path)

  def yaml(self, path):
    import yaml
    with open(path) as f:
      return yaml.safe_load(f)

  def csv(self, path, **kwargs):
    return list(iter_csv(path, **kwargs))


load = Loader()


class Saver:
  """`save(x, path)` dispatches on the file suffix and creates parent dirs"""

  def __call__(self, x, path, format=None, **kwargs):
    format = _format_of(path, format)
    if format not in ('json', 'yaml', 'csv'):
      raise ValueError(f'unsupported file format {format!r} for {path}')
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return getattr(self, format)(x, path, **kwargs)

  def json(self, x, path):
    return save_json(x, path)

  def yaml(self, x, path):
    import yaml
    with open(path, 'w') as f:
      yaml.safe_dump(to_builtin(x), f, sort_keys=False)
    return path

  def csv(self, rows, path, header=None):
    return write_csv(rows, path, header=header)


save = Saver()


def save_json(obj, path):
  Path(path).parent.mkdir(parents=True, exist_ok=True)
  with open(path, 'w') as f:
    json.dump(to_builtin(obj), f, indent=2)
  return path


def load_json(path):
  with open(path) as f:
    return json.load(f)


def iter_csv(path, header=True):
  """yields namedtuple rows keyed by the header, raw string values"""
  with open(path, newline='') as f:
    reader = csv.reader(f)
    if not header:
      yield from reader
      return
    Row = namedtuple('Row', next(reader))
    for r in reader:
      yield Row(*r)


def write_csv(rows, path, header=None):
  path = str(path)
  Path(path).parent.mkdir(parents=True, exist_ok=True)
  with open(path, 'w', newline='') as f:
    writer = csv.writer(f)
    if header:
      writer.writerow(header)
    for row in rows:
      writer.writerow([format_value(x) for x in row])
  return path
