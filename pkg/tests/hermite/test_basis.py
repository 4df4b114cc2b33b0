import numpy as np
import pytest

from lfinterp import testing
from lfinterp.exceptions import DomainError
from lfinterp.hermite import (
  BlockDiagonalBasis,
  HermiteCubic,
  SegmentData,
  basis_matrix_t,
  batch_coefficients,
  block_coefficients,
  build_global_basis,
  derivative,
  evaluate_cubic,
  hermite_coefficients,
)


def test_basis_matrix():
  t = basis_matrix_t()
  assert t.shape == (4, 4)
  assert np.array_equal(t[2], [0, 0, 1, 0])
  assert np.array_equal(t @ np.zeros(4), np.zeros(4))
  assert np.array_equal(t @ np.array([0., 1., 1., 1.]), [0, 0, 1, 0])

  # copies are returned
  t[0, 0] = 100.0
  assert basis_matrix_t()[0, 0] == 2.0


@pytest.mark.parametrize('segment,expected', [
  ((1, 1, 0, 0), (0, 0, 0, 1)),
  ((0, 1, 1, 1), (0, 0, 1, 0)),
  ((0, 0, 0, 0), (0, 0, 0, 0)),
])
def test_hermite_coefficients(segment, expected):
  cubic = hermite_coefficients(SegmentData(*segment))
  assert cubic == HermiteCubic(*expected)


def test_endpoint_conditions():
  for p1, p2, v1, v2 in testing.random_segments(1000, seed=3, scale=10.0):
    cubic = hermite_coefficients(SegmentData(p1, p2, v1, v2))
    for got, want in (
        (evaluate_cubic(cubic, 0.0), p1),
        (evaluate_cubic(cubic, 1.0), p2),
        (derivative(cubic, 0.0), v1),
        (derivative(cubic, 1.0), v2)):
      assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_linearity():
  rng = np.random.default_rng(5)
  basis = BlockDiagonalBasis(100)
  x, y = rng.standard_normal((2, 400))
  alpha, beta = 0.5, -2.0

  combined = batch_coefficients(basis, alpha * x + beta * y)
  separate = alpha * batch_coefficients(basis, x) + beta * batch_coefficients(basis, y)
  assert np.allclose(combined, separate, rtol=0, atol=1e-12 * max(1.0, np.abs(separate).max()))

  single = hermite_coefficients(SegmentData(*(alpha * x[:4] + beta * y[:4]))).coefficients
  assert np.array_equal(single, combined[:4])


def test_non_finite_segments():
  with pytest.raises(DomainError):
    SegmentData(0.0, np.inf, 0.0, 0.0)
  with pytest.raises(DomainError):
    HermiteCubic(np.nan, 0, 0, 0)


def test_global_basis():
  g = build_global_basis(1)
  assert np.array_equal(g.to_dense(), basis_matrix_t())

  g = build_global_basis(100)
  assert g.shape == (400, 400)
  assert g.density == pytest.approx(0.01)
  assert g.density <= 1 / 100

  dense = build_global_basis(3).to_dense()
  for i in range(3):
    assert np.array_equal(dense[4 * i:4 * i + 4, 4 * i:4 * i + 4], basis_matrix_t())
  assert np.count_nonzero(dense) == 3 * np.count_nonzero(basis_matrix_t())

  with pytest.raises(DomainError):
    build_global_basis(0)
  with pytest.raises(DomainError):
    build_global_basis(1000).to_dense()


def test_sparse_storage():
  g = build_global_basis(10_000)
  assert g.nnz == 10_000 * 10
  assert g.dense_entries == 1.6e9
  # float64 sparse form against 12.8 GB dense, T plus M for the structured one
  assert g.sparse_bytes() < 2_000_000
  assert g.dense_entries * 8 / g.sparse_bytes() > 5_000
  assert g.storage_bytes < 1_000
  assert g.to_sparse().shape == (40_000, 40_000)


def test_batch_coefficients():
  basis = BlockDiagonalBasis(1)
  assert np.array_equal(basis @ [0., 1., 1., 1.], [0, 0, 1, 0])
  assert np.array_equal(batch_coefficients(BlockDiagonalBasis(7), np.zeros(28)), np.zeros(28))


@pytest.mark.parametrize('m', [1, 7, 64, 1000])
def test_batch_matches_single_segments(m):
  segments = testing.random_segments(m, seed=11)
  batch = batch_coefficients(BlockDiagonalBasis(m), segments.reshape(-1))
  expected = np.stack([hermite_coefficients(SegmentData(*s)).coefficients for s in segments])
  assert np.array_equal(batch.reshape(m, 4), expected)
  assert np.array_equal(block_coefficients(segments), expected)


def test_batch_matches_sparse_product():
  segments = testing.random_segments(32, seed=2)
  basis = BlockDiagonalBasis(32)
  p = segments.reshape(-1)
  assert np.allclose(basis.to_sparse() @ p, batch_coefficients(basis, p), atol=1e-12)


def test_batch_coefficients_out():
  basis = BlockDiagonalBasis(4)
  p = testing.random_segments(4, seed=1).reshape(-1)
  out = np.empty(16)
  ret = batch_coefficients(basis, p, out=out)
  assert ret is out
  assert np.array_equal(out, batch_coefficients(basis, p))


def test_length_mismatch():
  with pytest.raises(DomainError):
    batch_coefficients(BlockDiagonalBasis(2), np.zeros(7))
  with pytest.raises(DomainError):
    block_coefficients(np.zeros((3, 5)))
