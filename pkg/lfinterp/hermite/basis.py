"""
Cubic Hermite segments s(t) = a t^3 + b t^2 + c t + d on t in [0, 1]

(a, b, c, d) = T (p1, p2, v1, v2) gives s(0) = p1, s(1) = p2, s'(0) = v1, s'(1) = v2.
For M segments the coefficients come from one product G p with the
block diagonal G = diag(T, ..., T), p holding M consecutive (p1, p2, v1, v2) blocks.
"""

import math

import numpy as np

from ..exceptions import DomainError

_T = np.array([
  [2., -2., 1., 1.],
  [-3., 3., -2., -1.],
  [0., 0., 1., 0.],
  [1., 0., 0., 0.],
])
_T.setflags(write=False)

# dense G is only ever built for test sized problems
MAX_DENSE_BLOCKS = 64


def basis_matrix_t():
  return _T.copy()


def apply_blocks(t, blocks, out=None):
  """
  Multiplies every row of `blocks` (..., 4) by the 4x4 block `t`.

  Each row goes through np.matmul as its own 1x4 by 4x4 product, so a block
  gets the same arithmetic whether it is alone or one of many.
  """
  blocks = np.asarray(blocks, dtype=np.float64)
  if out is None:
    out = np.empty_like(blocks)
  np.matmul(blocks[..., None, :], t.T, out=out[..., None, :])
  return out


class HermiteCubic:
  __slots__ = ('a', 'b', 'c', 'd')

  def __init__(self, a, b, c, d):
    if not all(math.isfinite(x) for x in (a, b, c, d)):
      raise DomainError(f'cubic coefficients must be finite, got {(a, b, c, d)}')
    self.a, self.b, self.c, self.d = float(a), float(b), float(c), float(d)

  @property
  def coefficients(self):
    return np.array([self.a, self.b, self.c, self.d])

  def __call__(self, t):
    return ((self.a * t + self.b) * t + self.c) * t + self.d

  def derivative(self, t):
    return (3 * self.a * t + 2 * self.b) * t + self.c

  def __iter__(self):
    return iter((self.a, self.b, self.c, self.d))

  def __eq__(self, other):
    return isinstance(other, HermiteCubic) and tuple(self) == tuple(other)

  def __repr__(self):
    return f'HermiteCubic(a={self.a}, b={self.b}, c={self.c}, d={self.d})'


class SegmentData:
  """end points and tangents of one segment, tangents are per unit of t"""
  __slots__ = ('p1', 'p2', 'v1', 'v2')

  def __init__(self, p1, p2, v1, v2):
    if not all(math.isfinite(x) for x in (p1, p2, v1, v2)):
      raise DomainError(f'segment data must be finite, got {(p1, p2, v1, v2)}')
    self.p1, self.p2, self.v1, self.v2 = float(p1), float(p2), float(v1), float(v2)

  @property
  def vector(self):
    return np.array([self.p1, self.p2, self.v1, self.v2])

  def __repr__(self):
    return f'SegmentData(p1={self.p1}, p2={self.p2}, v1={self.v1}, v2={self.v2})'


def hermite_coefficients(seg: SegmentData) -> HermiteCubic:
  return HermiteCubic(*apply_blocks(_T, seg.vector[None, :])[0])


def evaluate_cubic(cubic: HermiteCubic, t):
  return cubic(t)


def derivative(cubic: HermiteCubic, t):
  return cubic.derivative(t)


class BlockDiagonalBasis:
  """
  The 4M x 4M matrix G = diag(T, ..., T). Only T and M are stored, the generic
  sparse and dense forms are built on request.
  """
  __slots__ = ('m_trajectories', 'block')

  def __init__(self, m_trajectories, block=None):
    if int(m_trajectories) != m_trajectories or m_trajectories < 1:
      raise DomainError(f'need at least one trajectory, got M={m_trajectories}')
    self.m_trajectories = int(m_trajectories)
    self.block = _T if block is None else block

  @property
  def shape(self):
    n = 4 * self.m_trajectories
    return n, n

  @property
  def nnz(self):
    return int(np.count_nonzero(self.block)) * self.m_trajectories

  @property
  def stored_entries(self):
    """entries inside the diagonal blocks, zeros of T included"""
    return 16 * self.m_trajectories

  @property
  def dense_entries(self):
    n = 4 * self.m_trajectories
    return n * n

  @property
  def density(self):
    return self.stored_entries / self.dense_entries

  @property
  def storage_bytes(self):
    return self.block.nbytes + np.dtype(np.int64).itemsize

  def blocks(self):
    for _ in range(self.m_trajectories):
      yield self.block

  def to_sparse(self, format='bsr'):
    import scipy.sparse
    return scipy.sparse.block_diag(list(self.blocks()), format=format)

  def sparse_bytes(self, format='bsr'):
    g = self.to_sparse(format=format)
    if format == 'coo':
      return g.data.nbytes + g.row.nbytes + g.col.nbytes
    return g.data.nbytes + g.indices.nbytes + g.indptr.nbytes

  def to_dense(self):
    if self.m_trajectories > MAX_DENSE_BLOCKS:
      raise DomainError(
        f'dense G is limited to M <= {MAX_DENSE_BLOCKS}, got M={self.m_trajectories}'
      )
    return self.to_sparse(format='csr').toarray()

  def __matmul__(self, p):
    return batch_coefficients(self, p)

  def __repr__(self):
    return f'BlockDiagonalBasis(M={self.m_trajectories}, density={self.density:.3g})'


def build_global_basis(m) -> BlockDiagonalBasis:
  return BlockDiagonalBasis(m)


def batch_coefficients(basis: BlockDiagonalBasis, p, out=None):
  """
  G p for p laid out as M trajectory major blocks (p1, p2, v1, v2), returns the
  matching M blocks (a, b, c, d) as a flat vector of length 4M.
  """
  p = np.asarray(p, dtype=np.float64)
  if p.shape != (4 * basis.m_trajectories,):
    raise DomainError(
      f'expected a vector of length 4M={4 * basis.m_trajectories}, got shape {p.shape}'
    )
  blocks = p.reshape(basis.m_trajectories, 4)
  if out is not None:
    apply_blocks(basis.block, blocks, out=out.reshape(basis.m_trajectories, 4))
    return out
  return apply_blocks(basis.block, blocks).reshape(-1)


def block_coefficients(blocks):
  """G p for an array of (..., 4) segment blocks without flattening"""
  blocks = np.asarray(blocks, dtype=np.float64)
  if blocks.shape[-1] != 4:
    raise DomainError(f'segment blocks must have a trailing axis of 4, got {blocks.shape}')
  return apply_blocks(_T, blocks)
