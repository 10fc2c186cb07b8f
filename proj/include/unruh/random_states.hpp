#pragma once

#include <cstdint>
#include <random>

#include "unruh/fock.hpp"

namespace unruh {

using Rng = std::mt19937_64;

/// Haar-random normalized vector.
Vector random_pure_vector(long dim, Rng& rng);
DensityMatrix random_pure_state(const DimSignature& sig, Rng& rng);
/// Wishart-style G G^dagger / Tr with G of shape (dim x rank). rank <= 0 means full rank.
DensityMatrix random_mixed_state(const DimSignature& sig, Rng& rng, long rank = 0);
/// Alternates pure and mixed draws of random rank; the default test workload.
DensityMatrix random_state(const DimSignature& sig, Rng& rng);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
Matrix random_unitary(long dim, Rng& rng);
/// Random Kraus family of a CPTP map dim -> dim with `n_kraus` operators.
std::vector<Matrix> random_channel_kraus(long dim, int n_kraus, Rng& rng);

}  // namespace unruh
