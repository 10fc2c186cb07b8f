#pragma once

// Stinespring picture of the Unruh channel: each accelerated level |l> is
// embedded into Rindler modes I (x) II by the two-mode squeezer, region II is
// traced out. Serves as an independent oracle for the Kraus construction.

#include <vector>

#include "unruh/channel.hpp"
#include "unruh/fock.hpp"

namespace unruh {

/// Amplitudes indexed (n_I, n_II) for one embedded Fock level.
struct TwoModeState {
  Matrix amplitudes;  // (cutoff+1) x (cutoff+1)
  double r = 0.0;
  int level = 0;
  int cutoff = 0;
  double declared_tail = 0.0;  // truncation_tail(r, level, cutoff - level)

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Closed-form expansion: amplitude tanh^n r / cosh^(l+1) r * sqrt((n+l)!/(n! l!)) at (n+l, n).
TwoModeState rindler_expand(int level, double r, int cutoff);

/// exp[r (a_I^dag a_II^dag - a_I a_II)] on the (cutoff+1)^2 two-mode space,
/// index n_I * (cutoff+1) + n_II.
FockOperator squeezing_operator(double r, int cutoff);

enum class EmbeddingMethod { ClosedForm, MatrixExponential };

/// Isometry V: C^d -> I (x) II, (cutoff+1)^2 x d, column l = vec of the embedded level.
Matrix dilation_isometry(double r, int d, int cutoff, EmbeddingMethod method = EmbeddingMethod::ClosedForm);

/// Smallest common cutoff covering d_m - 1 + K_m for every accelerated party.
int dilation_cutoff(const ChannelSpec& spec);

/// V rho V^dagger as a weighted mixture of pure vectors. Signature layout:
/// each accelerated party expands to two adjacent slots (I then II).
struct DilatedState {
  DimSignature sig;
  std::vector<double> weights;
  std::vector<Vector> vectors;
  std::vector<int> region_one_slots;
  std::vector<int> region_two_slots;
};

DilatedState dilate(const DensityMatrix& rho, const ChannelSpec& spec, int cutoff,
                    EmbeddingMethod method = EmbeddingMethod::ClosedForm);

/// Tr_II [V rho V^dagger], truncated to d + K_m levels on each Rindler-I factor.
DensityMatrix dilate_and_trace(const DensityMatrix& rho, const ChannelSpec& spec, int cutoff,
                               EmbeddingMethod method = EmbeddingMethod::ClosedForm);

/// Trace distance between the Kraus channel and the dilation at dilation_cutoff(spec).
double oracle_compare(const DensityMatrix& rho, const ChannelSpec& spec);

}  // namespace unruh
