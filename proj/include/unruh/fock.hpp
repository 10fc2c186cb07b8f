#pragma once

// Truncated Fock-space linear algebra.
//
// Composite indices are row-major over the DimSignature order: the leftmost
// subsystem varies slowest. Every routine in the library assumes this.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unruh {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double herm = 1e-10;  // max abs asymmetry, relative to max-norm
inline constexpr double psd = 1e-10;
inline constexpr double eig = 1e-12;
inline constexpr double trace = 1e-10;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested object would not fit the configured size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimSignature {
 public:
  DimSignature() = default;
  explicit DimSignature(std::vector<int> dims);
  DimSignature(std::initializer_list<int> dims) : DimSignature(std::vector<int>(dims)) {}

  std::size_t size() const { return dims_.size(); }
  int operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<int>& dims() const { return dims_; }
  /// Product of all local dimensions.
  long total() const;

  DimSignature concat(const DimSignature& other) const;
  DimSignature subset(std::span<const int> indices) const;
  std::string str() const;

  bool operator==(const DimSignature&) const = default;

 private:
  std::vector<int> dims_;
};

/// Dense complex Hermitian state with a subsystem signature. The target trace
/// is 1 for physical states; channel outputs record the trace they actually
/// carry after truncation.
class DensityMatrix {
 public:
  DensityMatrix(DimSignature sig, Matrix data, double target_trace = 1.0);

  static DensityMatrix from_pure(DimSignature sig, const Vector& psi);
  static DensityMatrix basis_projector(DimSignature sig, long index);

  const DimSignature& sig() const { return sig_; }
  const Matrix& data() const { return data_; }
  long side() const { return data_.rows(); }
  double trace() const { return data_.trace().real(); }
  double target_trace() const { return target_trace_; }
  /// True when the recorded trace is below one (truncated channel output).
  bool truncated() const { return target_trace_ < 1.0 - tol::trace; }

  /// Copy scaled to unit trace.
  DensityMatrix normalized() const;
  /// Smallest eigenvalue; throws if Hermiticity is violated.
  double min_eigenvalue() const;
  /// Checks trace against target and PSD within tol::psd.
  bool is_valid() const;

 private:
  DimSignature sig_;
  Matrix data_;
  double target_trace_;
};

/// Rectangular operator between truncated Fock spaces (dim_out x dim_in).
class FockOperator {
 public:
  FockOperator(int dim_in, int dim_out, Matrix data);
  explicit FockOperator(Matrix data);

  int dim_in() const { return static_cast<int>(data_.cols()); }
  int dim_out() const { return static_cast<int>(data_.rows()); }
  const Matrix& data() const { return data_; }

 private:
  Matrix data_;
};

FockOperator creation_operator(int dim_in);
FockOperator annihilation_operator(int dim);
FockOperator number_operator(int dim);
FockOperator identity_operator(int dim);

FockOperator tensor(std::span<const FockOperator> factors);
DensityMatrix tensor(std::span<const DensityMatrix> factors);
Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced state on `keep`; kept subsystems retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep);
/// Reduced state of a pure vector without forming the full projector.
DensityMatrix partial_trace_pure(const Vector& psi, const DimSignature& sig, std::span<const int> keep);

/// Reorders subsystems: output slot i holds input subsystem perm[i].
DensityMatrix permute_subsystems(const DensityMatrix& state, std::span<const int> perm);
Vector permute_subsystems(const Vector& psi, const DimSignature& sig, std::span<const int> perm);
/// Composite-index map for a subsystem permutation: result[new_index] = old_index.
std::vector<long> permutation_index_map(const DimSignature& sig, std::span<const int> perm);

/// Transposes the listed subsystems' indices.
Matrix partial_transpose(const DensityMatrix& state, std::span<const int> subsystems);

/// Applies `op` (dim_out x sig[index]) to one tensor factor of a vector.
/// `sig` is updated in place to the new local dimension.
Vector apply_on_subsystem(const Vector& psi, DimSignature& sig, int index, const Matrix& op);

/// Keeps only levels below new_dims[i] on each subsystem.
DensityMatrix restrict_levels(const DensityMatrix& state, const std::vector<int>& new_dims);
/// Zero-pads each subsystem up to new_dims[i] levels.
DensityMatrix pad_levels(const DensityMatrix& state, const std::vector<int>& new_dims);

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;
};

Eigensystem hermitian_eigensystem(const Matrix& mat);
RealVector hermitian_eigenvalues(const Matrix& mat);
/// max |A - A^dagger| / max(1, max|A|).
double hermiticity_defect(const Matrix& mat);
/// max |a_ij|.
double max_norm(const Matrix& mat);

}  // namespace unruh
