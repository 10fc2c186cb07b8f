#pragma once

// Free-state predicates, free operations and the sampled property suites for
// resource nongeneration under the Unruh channel.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unruh/channel.hpp"
#include "unruh/fock.hpp"
#include "unruh/random_states.hpp"
#include "unruh/report.hpp"

namespace unruh {

/// Residual tolerance for every freeness check; outputs are renormalized first.
inline constexpr double kFreenessTolerance = 1e-9;
inline constexpr double kMonotoneTolerance = 1e-9;
inline constexpr double kContractionSlack = 1e-10;

enum class PredicateKind { Incoherent, PptSeparable };

struct FreeStatePredicate {
  PredicateKind kind = PredicateKind::Incoherent;
  std::vector<int> bipartition;  // subsystems on the B side, PPT only
  double tol = kFreenessTolerance;

  static FreeStatePredicate incoherent(double tol = kFreenessTolerance);
  static FreeStatePredicate ppt(std::vector<int> bipartition, double tol = kFreenessTolerance);

  std::string name() const;
  /// Distance from the free set: max off-diagonal magnitude, or -min eig of the
  /// partial transpose. The state is renormalized to unit trace first.
  double residual(const DensityMatrix& rho) const;
  bool holds(const DensityMatrix& rho) const { return residual(rho) <= tol; }
  /// PPT is only sufficient for separability on 2x2 and 2x3 cuts.
  bool exact_for(const DimSignature& sig) const;
};

std::vector<DensityMatrix> free_state_sampler(const FreeStatePredicate& pred, const DimSignature& sig, int n,
                                              std::uint64_t seed);

enum class FreeOpKind { Identity, DiagonalUnitary, Permutation, FullDephasing, LocalFreeOp };

std::string to_string(FreeOpKind kind);

/// A concrete free operation on a fixed signature, stored as Kraus matrices.
struct FreeOperation {
  FreeOpKind kind = FreeOpKind::Identity;
  DimSignature sig;
  std::vector<Matrix> kraus;

  DensityMatrix apply(const DensityMatrix& rho) const;
};

/// Builds the operation and confirms by sampling that it maps the predicate's
/// free set into itself; throws std::invalid_argument for unsupported pairs.
FreeOperation register_free_operation(FreeOpKind kind, const DimSignature& sig, const FreeStatePredicate& pred,
                                      std::uint64_t seed);

/// Hadamard rotation on levels {0, 1} of one subsystem; a deliberately non-free
/// post-processing step for the contrapositive of the free-operation theorem.
Matrix hadamard_rotation(const DimSignature& sig, int subsystem);

PropertyReport nrng_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed);

/// Part (a): freeness through the dilation pipeline (optionally followed by a
/// unitary on the output). Part (b): V rho V^dagger keeps the purity of rho.
PropertySuite theorem2_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed,
                             const std::optional<Matrix>& post_unitary = std::nullopt);

PropertyReport geometry_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed);

enum class CompositionOrder { Pre, Post };

/// Pre: E after Phi on the input space. Post: Phi after E on the output space.
PropertyReport composition_check(const ChannelSpec& spec, const FreeOperation& free_op, CompositionOrder order,
                                 const FreeStatePredicate& pred, int n, std::uint64_t seed);

/// Lambda = p E + (1 - p) P Phi P^dagger with P zero-padding the input into the output space.
PropertyReport convex_mixture_check(const ChannelSpec& spec, const FreeOperation& free_op, double p,
                                    const FreeStatePredicate& pred, int n, std::uint64_t seed);

/// (Phi_A (x) E_B) on joint free states of A (x) B. `pred_joint` must be stated
/// on the joint signature; PPT bipartitions refer to joint subsystem indices.
PropertyReport tensor_composition_check(const FreeOperation& op_a, const ChannelSpec& spec_b,
                                        const FreeStatePredicate& pred_joint, int n, std::uint64_t seed);

/// Quantifiers: l1_coherence, relative_entropy_coherence, negativity,
/// robustness_coherence_qubit. Negativity uses `bipartition`, defaulting to the
/// accelerated parties.
PropertyReport monotonicity_check(const ChannelSpec& spec, const std::string& quantifier,
                                  const std::optional<FreeOperation>& free_op, int n, std::uint64_t seed,
                                  std::vector<int> bipartition = {});

/// Distances: trace, bures, relative-entropy, hilbert-schmidt (report-only).
PropertyReport contraction_check(const ChannelSpec& spec, const std::string& distance, int n, std::uint64_t seed);

}  // namespace unruh
