#include "unruh/random_states.hpp"

#include <cmath>

namespace unruh {

namespace {

Matrix gaussian_matrix(long rows, long cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (long j = 0; j < cols; ++j) {
    for (long i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

}  // namespace

Vector random_pure_vector(long dim, Rng& rng) {
  Vector v = gaussian_matrix(dim, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_pure_state(const DimSignature& sig, Rng& rng) {
  Vector v = random_pure_vector(sig.total(), rng);
  Matrix rho = v * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(sig, std::move(rho));
}

DensityMatrix random_mixed_state(const DimSignature& sig, Rng& rng, long rank) {
  const long dim = sig.total();
  if (rank <= 0 || rank > dim) rank = dim;
  const Matrix g = gaussian_matrix(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(sig, std::move(rho));
}

DensityMatrix random_state(const DimSignature& sig, Rng& rng) {
  std::uniform_int_distribution<long> pick(0, sig.total());
  const long rank = pick(rng);
  if (rank == 0) return random_pure_state(sig, rng);
  return random_mixed_state(sig, rng, rank);
}

Matrix random_unitary(long dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR();
  for (long i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

std::vector<Matrix> random_channel_kraus(long dim, int n_kraus, Rng& rng) {
  // Columns of an isometry dim -> n_kraus*dim, sliced into Kraus blocks.
  const Matrix u = random_unitary(dim * n_kraus, rng);
  const Matrix iso = u.leftCols(dim);
  std::vector<Matrix> ops;
  ops.reserve(n_kraus);
  for (int k = 0; k < n_kraus; ++k) ops.push_back(iso.middleRows(k * dim, dim));
  return ops;
}

}  // namespace unruh
