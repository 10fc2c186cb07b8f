#pragma once

// Resource quantifiers and state distances. Entropies use base-2 logarithms.

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "unruh/fock.hpp"

namespace unruh {

class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigenvalues below this are treated as zero in entropies.
inline constexpr double kEntropyCutoff = 1e-14;

double von_neumann_entropy(const DensityMatrix& rho);

double l1_coherence(const DensityMatrix& rho);
double relative_entropy_coherence(const DensityMatrix& rho);
double negativity(const DensityMatrix& rho, std::span<const int> bipartition);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double hilbert_schmidt_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Generalized robustness of coherence of a qubit, found by a direct search
/// over the mixing state tau in the Bloch ball.
double robustness_coherence_qubit(const DensityMatrix& rho);

/// Certified upper bound on the generalized robustness of coherence in any
/// dimension: builds an explicit tau with (rho + s tau)/(1 + s) diagonal and
/// returns that s (equal to the l1 coherence).
double robustness_coherence_upper_bound(const DensityMatrix& rho);

struct MeasureReport {
  std::string state_id;
  std::map<std::string, double> values;
};

/// Names accepted by evaluate_measure.
const std::vector<std::string>& measure_names();

/// Evaluates a named quantifier; values within 1e-12 below zero are clamped.
double evaluate_measure(const std::string& name, const DensityMatrix& rho, std::span<const int> bipartition);

MeasureReport measure_report(const DensityMatrix& rho, const std::vector<std::string>& names,
                             std::span<const int> bipartition, std::string state_id = {});

}  // namespace unruh
