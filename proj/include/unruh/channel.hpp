#pragma once

// Kraus representation of the Unruh channel on N-partite qudit systems with
// M accelerated parties, plus CPTP verification with truncation bookkeeping.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "unruh/fock.hpp"
#include "unruh/report.hpp"

namespace unruh {

inline constexpr double kMaxAcceleration = 2.5;
inline constexpr double kDefaultEpsilon = 1e-10;

/// Omega <= 0 sends the acceleration parameter to infinity.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// r from the dimensionless Rindler frequency: cosh r = (1 - exp(-2 pi Omega))^(-1/2).
double r_from_omega(double omega);

struct AccelerationParam {
  double r = 0.0;
  std::optional<double> omega;

  static AccelerationParam from_r(double r);
  static AccelerationParam from_omega(double omega);
  void validate() const;
};

struct ChannelSpec {
  std::vector<int> local_dims;            // per party, user order
  std::vector<int> accelerated;           // party indices, ordered
  std::vector<AccelerationParam> accel;   // one per accelerated party
  std::vector<int> cutoffs;               // K_m, one per accelerated party

  int n_parties() const { return static_cast<int>(local_dims.size()); }
  int n_accelerated() const { return static_cast<int>(accelerated.size()); }
  void validate() const;

  DimSignature input_signature() const;
  /// Accelerated parties enlarged from d to d + K_m, user order.
  DimSignature output_signature() const;
  /// Position of `party` in `accelerated`, or -1.
  int accelerated_slot(int party) const;

  /// Largest lost weight per accelerated party over its input levels.
  std::vector<double> party_tails() const;
  /// Bound on the trace deficit for any input: 1 - prod_m (1 - tail_m).
  double certified_tail() const;

  /// Cutoffs chosen as the smallest K with max_l tail(r, l, K) <= epsilon.
  static ChannelSpec certified(std::vector<int> local_dims, std::vector<int> accelerated,
                               std::vector<double> r, double epsilon = kDefaultEpsilon);
  static ChannelSpec certified(std::vector<int> local_dims, std::vector<int> accelerated,
                               std::vector<AccelerationParam> accel, double epsilon = kDefaultEpsilon);
};

/// Probability weight lost by keeping Kraus indices 0..K on Fock input |level>.
double truncation_tail(double r, int level, int K);
/// Smallest K with max_{l < d} truncation_tail(r, l, K) <= epsilon.
int certified_cutoff(double r, int d, double epsilon = kDefaultEpsilon, int max_cutoff = 20000);

/// Single-mode Kraus operators A_0..A_K, each (d_in + K) x d_in.
std::vector<FockOperator> kraus_single(double r, int d_in, int K);

struct KrausBudget {
  std::size_t max_operators = 1u << 16;
  std::size_t max_elements = 16'000'000;  // summed dense entries over all operators
};

class KrausSet {
 public:
  /// Generic family on explicit signatures; `spec` is attached when the
  /// operators come from kraus_multiparty.
  static KrausSet from_operators(std::vector<FockOperator> ops, DimSignature in_sig, DimSignature out_sig,
                                 std::optional<ChannelSpec> spec = std::nullopt);

  const std::vector<FockOperator>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  const DimSignature& input_signature() const { return in_sig_; }
  const DimSignature& output_signature() const { return out_sig_; }
  const std::optional<ChannelSpec>& spec() const { return spec_; }

  /// Sum_k A_k^dagger A_k.
  const Matrix& completeness() const { return completeness_; }
  /// max |Sum_k A_k^dagger A_k - I|.
  double completeness_defect() const { return completeness_defect_; }
  /// Trace-deficit bound from the spec's truncation tails; 0 without a spec.
  double certified_tail() const { return spec_ ? spec_->certified_tail() : 0.0; }

  /// Multi-index (k_1..k_M) of each operator; empty without a spec.
  const std::vector<std::vector<int>>& multi_indices() const { return multi_indices_; }
  /// Canonical slot i (inertial parties first, accelerated last) holds user party permutation()[i].
  const std::vector<int>& permutation() const { return permutation_; }

  /// Copy with operator `index` removed. Used to inject faults in verification.
  KrausSet without_operator(std::size_t index) const;

  const std::vector<Eigen::SparseMatrix<cplx>>& sparse_ops() const { return sparse_; }

 private:
  friend KrausSet kraus_multiparty(const ChannelSpec&, const KrausBudget&);
  KrausSet() = default;
  void finish();

  std::vector<FockOperator> ops_;
  std::vector<Eigen::SparseMatrix<cplx>> sparse_;
  DimSignature in_sig_;
  DimSignature out_sig_;
  std::optional<ChannelSpec> spec_;
  Matrix completeness_;
  double completeness_defect_ = 0.0;
  std::vector<std::vector<int>> multi_indices_;
  std::vector<int> permutation_;
};

KrausSet kraus_multiparty(const ChannelSpec& spec, const KrausBudget& budget = {});

/// Sum_k A_k rho A_k^dagger. The output's target trace is Tr(rho Sum A^dagger A),
/// i.e. the input trace minus the exact truncation deficit for this rho.
DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

/// Sum_ij |i><j| (x) E(|i><j|) on input (x) output.
DensityMatrix choi_matrix(const KrausSet& ks, long max_side = 4096);

PropertySuite verify_cptp(const KrausSet& ks, int samples, std::uint64_t seed, long choi_max_side = 4096);

}  // namespace unruh
