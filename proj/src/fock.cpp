#include "unruh/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace unruh {

namespace {

std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * dims[i + 1];
  }
  return strides;
}

void check_index_set(const DimSignature& sig, std::span<const int> idx, bool allow_empty) {
  if (idx.empty() && !allow_empty) throw DimensionError("subsystem index set is empty");
  std::vector<bool> seen(sig.size(), false);
  for (int i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= sig.size()) {
      throw DimensionError("subsystem index " + std::to_string(i) + " out of range for " + sig.str());
    }
    if (seen[i]) throw DimensionError("duplicate subsystem index " + std::to_string(i));
    seen[i] = true;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DimSignature

DimSignature::DimSignature(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) throw DimensionError("subsystem dimension must be >= 1");
  }
}

long DimSignature::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1L, std::multiplies<>());
}

DimSignature DimSignature::concat(const DimSignature& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return DimSignature(std::move(d));
}

DimSignature DimSignature::subset(std::span<const int> indices) const {
  std::vector<int> d;
  d.reserve(indices.size());
  for (int i : indices) d.push_back(dims_.at(i));
  return DimSignature(std::move(d));
}

std::string DimSignature::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(DimSignature sig, Matrix data, double target_trace)
    : sig_(std::move(sig)), data_(std::move(data)), target_trace_(target_trace) {
  if (data_.rows() != data_.cols() || data_.rows() != sig_.total()) {
    throw DimensionError("density matrix side does not match signature " + sig_.str());
  }
  if (hermiticity_defect(data_) > tol::herm) {
    throw DimensionError("density matrix is not Hermitian within tolerance");
  }
}

DensityMatrix DensityMatrix::from_pure(DimSignature sig, const Vector& psi) {
  if (psi.size() != sig.total()) throw DimensionError("state vector length does not match signature");
  Matrix rho = psi * psi.adjoint();
  double tr = psi.squaredNorm();
  return DensityMatrix(std::move(sig), std::move(rho), tr);
}

DensityMatrix DensityMatrix::basis_projector(DimSignature sig, long index) {
  const long n = sig.total();
  if (index < 0 || index >= n) throw DimensionError("basis index out of range");
  Matrix rho = Matrix::Zero(n, n);
  rho(index, index) = 1.0;
  return DensityMatrix(std::move(sig), std::move(rho));
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (!(tr > 0)) throw std::domain_error("cannot normalize a state with nonpositive trace");
  return DensityMatrix(sig_, data_ / tr, 1.0);
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(data_)(0); }

bool DensityMatrix::is_valid() const {
  if (std::abs(trace() - target_trace_) > tol::trace) return false;
  return min_eigenvalue() >= -tol::psd * std::max(1.0, max_norm(data_));
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(int dim_in, int dim_out, Matrix data) : data_(std::move(data)) {
  if (dim_in < 1 || dim_out < 1) throw DimensionError("operator dimensions must be >= 1");
  if (data_.rows() != dim_out || data_.cols() != dim_in) {
    throw DimensionError("operator shape does not match declared dimensions");
  }
}

FockOperator::FockOperator(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) throw DimensionError("operator dimensions must be >= 1");
}

FockOperator creation_operator(int dim_in) {
  if (dim_in < 1) throw DimensionError("creation_operator: dim_in must be >= 1");
  Matrix m = Matrix::Zero(dim_in + 1, dim_in);
  for (int n = 0; n < dim_in; ++n) m(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  return FockOperator(dim_in, dim_in + 1, std::move(m));
}

FockOperator annihilation_operator(int dim) {
  if (dim < 1) throw DimensionError("annihilation_operator: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator(dim, dim, std::move(m));
}

FockOperator number_operator(int dim) {
  if (dim < 1) throw DimensionError("number_operator: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return FockOperator(dim, dim, std::move(m));
}

FockOperator identity_operator(int dim) {
  if (dim < 1) throw DimensionError("identity_operator: dim must be >= 1");
  return FockOperator(dim, dim, Matrix::Identity(dim, dim));
}

// ---------------------------------------------------------------------------
// Tensor products

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

FockOperator tensor(std::span<const FockOperator> factors) {
  if (factors.empty()) throw DimensionError("tensor: empty factor list");
  Matrix acc = factors[0].data();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i].data());
  return FockOperator(std::move(acc));
}

DensityMatrix tensor(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw DimensionError("tensor: empty factor list");
  Matrix acc = factors[0].data();
  DimSignature sig = factors[0].sig();
  double target = factors[0].target_trace();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = kron(acc, factors[i].data());
    sig = sig.concat(factors[i].sig());
    target *= factors[i].target_trace();
  }
  return DensityMatrix(std::move(sig), std::move(acc), target);
}

// ---------------------------------------------------------------------------
// Subsystem permutations

std::vector<long> permutation_index_map(const DimSignature& sig, std::span<const int> perm) {
  if (perm.size() != sig.size()) throw DimensionError("permutation length does not match signature");
  check_index_set(sig, perm, sig.size() == 0);
  const auto& dims = sig.dims();
  const auto old_strides = strides_of(dims);
  std::vector<int> new_dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = dims[perm[i]];

  const long n = sig.total();
  std::vector<long> map(n);
  std::vector<int> digits(perm.size(), 0);
  for (long idx = 0; idx < n; ++idx) {
    long old = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) old += digits[i] * old_strides[perm[i]];
    map[idx] = old;
    for (int i = static_cast<int>(perm.size()) - 1; i >= 0; --i) {
      if (++digits[i] < new_dims[i]) break;
      digits[i] = 0;
    }
  }
  return map;
}

DensityMatrix permute_subsystems(const DensityMatrix& state, std::span<const int> perm) {
  const auto map = permutation_index_map(state.sig(), perm);
  const long n = state.side();
  Matrix out(n, n);
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) out(i, j) = state.data()(map[i], map[j]);
  }
  return DensityMatrix(state.sig().subset(perm), std::move(out), state.target_trace());
}

Vector permute_subsystems(const Vector& psi, const DimSignature& sig, std::span<const int> perm) {
  const auto map = permutation_index_map(sig, perm);
  Vector out(psi.size());
  for (long i = 0; i < psi.size(); ++i) out(i) = psi(map[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Partial trace

namespace {

// Traced indices complement `keep`, in ascending order.
std::vector<int> complement(std::size_t n, std::span<const int> keep) {
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;
  std::vector<int> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) rest.push_back(static_cast<int>(i));
  }
  return rest;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep) {
  const auto& sig = state.sig();
  check_index_set(sig, keep, false);
  std::vector<int> perm(keep.begin(), keep.end());
  const auto traced = complement(sig.size(), keep);
  perm.insert(perm.end(), traced.begin(), traced.end());

  const auto map = permutation_index_map(sig, perm);
  const DimSignature kept_sig = sig.subset(keep);
  const long dk = kept_sig.total();
  const long dt = sig.total() / dk;

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& rho = state.data();
  for (long j = 0; j < dk; ++j) {
    for (long i = 0; i < dk; ++i) {
      cplx acc = 0;
      for (long t = 0; t < dt; ++t) acc += rho(map[i * dt + t], map[j * dt + t]);
      out(i, j) = acc;
    }
  }
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(kept_sig, std::move(out), state.target_trace());
}

DensityMatrix partial_trace_pure(const Vector& psi, const DimSignature& sig, std::span<const int> keep) {
  check_index_set(sig, keep, false);
  if (psi.size() != sig.total()) throw DimensionError("state vector length does not match signature");
  std::vector<int> perm(keep.begin(), keep.end());
  const auto traced = complement(sig.size(), keep);
  perm.insert(perm.end(), traced.begin(), traced.end());

  const DimSignature kept_sig = sig.subset(keep);
  const long dk = kept_sig.total();
  const long dt = sig.total() / dk;
  const Vector permuted = permute_subsystems(psi, sig, perm);
  // Row-major (kept, traced) layout reshaped to a dk x dt matrix.
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      permuted.data(), dk, dt);
  Matrix out = m * m.adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(kept_sig, std::move(out), psi.squaredNorm());
}

// ---------------------------------------------------------------------------
// Partial transpose

Matrix partial_transpose(const DensityMatrix& state, std::span<const int> subsystems) {
  const auto& sig = state.sig();
  check_index_set(sig, subsystems, true);
  const auto& dims = sig.dims();
  const auto strides = strides_of(dims);
  const long n = state.side();

  // Swapping row/column digits of the transposed subsystems.
  Matrix out(n, n);
  std::vector<int> rd(dims.size()), cd(dims.size());
  for (long i = 0; i < n; ++i) {
    long rem = i;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      rd[s] = static_cast<int>(rem / strides[s]);
      rem %= strides[s];
    }
    for (long j = 0; j < n; ++j) {
      long remj = j;
      for (std::size_t s = 0; s < dims.size(); ++s) {
        cd[s] = static_cast<int>(remj / strides[s]);
        remj %= strides[s];
      }
      long ni = i, nj = j;
      for (int s : subsystems) {
        const long delta = static_cast<long>(cd[s] - rd[s]) * strides[s];
        ni += delta;
        nj -= delta;
      }
      out(ni, nj) = state.data()(i, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local operations on vectors

Vector apply_on_subsystem(const Vector& psi, DimSignature& sig, int index, const Matrix& op) {
  if (index < 0 || static_cast<std::size_t>(index) >= sig.size()) {
    throw DimensionError("apply_on_subsystem: index out of range");
  }
  if (psi.size() != sig.total()) throw DimensionError("state vector length does not match signature");
  const int d_in = sig[index];
  if (op.cols() != d_in) throw DimensionError("apply_on_subsystem: operator input dimension mismatch");
  const long d_out = op.rows();

  long left = 1;
  for (int i = 0; i < index; ++i) left *= sig[i];
  const long right = sig.total() / (left * d_in);

  Vector out = Vector::Zero(left * d_out * right);
  for (long l = 0; l < left; ++l) {
    // Slab view: d_in rows, `right` columns, row-major.
    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> in_slab(psi.data() + l * d_in * right, d_in, right);
    Eigen::Map<RowMat> out_slab(out.data() + l * d_out * right, d_out, right);
    out_slab.noalias() = op * in_slab;
  }
  auto dims = sig.dims();
  dims[index] = static_cast<int>(d_out);
  sig = DimSignature(std::move(dims));
  return out;
}

namespace {

// Composite indices of `sig` whose digits lie below `limit` per subsystem,
// listed in row-major order of the restricted signature.
std::vector<long> sub_indices(const DimSignature& big, const std::vector<int>& limit) {
  const auto strides = strides_of(big.dims());
  const DimSignature small(limit);
  std::vector<long> out;
  out.reserve(small.total());
  std::vector<int> digits(limit.size(), 0);
  for (long idx = 0; idx < small.total(); ++idx) {
    long b = 0;
    for (std::size_t s = 0; s < limit.size(); ++s) b += digits[s] * strides[s];
    out.push_back(b);
    for (int s = static_cast<int>(limit.size()) - 1; s >= 0; --s) {
      if (++digits[s] < limit[s]) break;
      digits[s] = 0;
    }
  }
  return out;
}

}  // namespace

DensityMatrix restrict_levels(const DensityMatrix& state, const std::vector<int>& new_dims) {
  const auto& sig = state.sig();
  if (new_dims.size() != sig.size()) throw DimensionError("restrict_levels: signature length mismatch");
  for (std::size_t i = 0; i < new_dims.size(); ++i) {
    if (new_dims[i] < 1 || new_dims[i] > sig[i]) throw DimensionError("restrict_levels: invalid new dimension");
  }
  const auto idx = sub_indices(sig, new_dims);
  const long n = static_cast<long>(idx.size());
  Matrix out(n, n);
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) out(i, j) = state.data()(idx[i], idx[j]);
  }
  const double tr = out.trace().real();
  return DensityMatrix(DimSignature(new_dims), std::move(out), tr);
}

DensityMatrix pad_levels(const DensityMatrix& state, const std::vector<int>& new_dims) {
  const auto& sig = state.sig();
  if (new_dims.size() != sig.size()) throw DimensionError("pad_levels: signature length mismatch");
  for (std::size_t i = 0; i < new_dims.size(); ++i) {
    if (new_dims[i] < sig[i]) throw DimensionError("pad_levels: new dimension smaller than old");
  }
  const DimSignature big(new_dims);
  const auto idx = sub_indices(big, sig.dims());
  Matrix out = Matrix::Zero(big.total(), big.total());
  const long n = state.side();
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) out(idx[i], idx[j]) = state.data()(i, j);
  }
  return DensityMatrix(big, std::move(out), state.target_trace());
}

// ---------------------------------------------------------------------------
// Spectral routines

double max_norm(const Matrix& mat) { return mat.size() == 0 ? 0.0 : mat.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& mat) {
  if (mat.rows() != mat.cols()) return std::numeric_limits<double>::infinity();
  const double scale = max_norm(mat);
  if (scale == 0.0) return 0.0;
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() / std::max(scale, 1.0);
}

Eigensystem hermitian_eigensystem(const Matrix& mat) {
  if (mat.rows() != mat.cols()) throw DimensionError("hermitian_eigensystem: matrix is not square");
  if (hermiticity_defect(mat) > tol::herm) {
    throw DimensionError("hermitian_eigensystem: matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigensystem: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& mat) {
  if (mat.rows() != mat.cols()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  if (hermiticity_defect(mat) > tol::herm) {
    throw DimensionError("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

}  // namespace unruh
