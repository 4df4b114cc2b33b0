import datetime
import re
import subprocess


def env_info():
  import os
  import platform
  import socket
  import sys

  import numpy as np

  import lfinterp

  return dict(
    cwd=os.getcwd(),
    arguments=sys.argv,
    git_hash=git_hash(),
    python=dict(
      executable=sys.executable,
      version=sys.version,
    ),
    numpy_version=np.__version__,
    lfinterp_version=lfinterp.__version__,
    machine=platform.machine(),
    processor=platform.processor(),
    cpu_count=os.cpu_count(),
    hostname=socket.gethostname()
  )


def timestr(d=None):
  return f"{(d or datetime.datetime.utcnow()).strftime('%y-%m-%dT%H:%M:%S')}"


def camel_to_snake(text):
  s1 = re.sub('(.)([A-Z][a-z]+)', r'\1_\2', text)
  return re.sub('([a-z0-9])([A-Z])', r'\1_\2', s1).lower()


def chunk_ranges(length, parts):
  """
  Splits range(length) into `parts` contiguous (start, end) pairs of equal size,
  requires length % parts == 0
  """
  size = length // parts
  return [(i * size, (i + 1) * size) for i in range(parts)]


def git_hash():
  """commit of the working directory, None outside a git checkout"""
  try:
    out = subprocess.check_output(['git', 'rev-parse', 'HEAD'], stderr=subprocess.DEVNULL)
  except (OSError, subprocess.SubprocessError):
    return None
  return out.decode('utf-8').strip() or None
