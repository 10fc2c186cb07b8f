#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "unruh/measures.hpp"
#include "unruh/random_states.hpp"

using namespace unruh;

namespace {

DensityMatrix bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(DimSignature{2, 2}, v);
}

DensityMatrix plus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(DimSignature{2}, v);
}

DensityMatrix qubit(double x, double y, double z) {
  Matrix m(2, 2);
  m << 1 + z, cplx(x, -y), cplx(x, y), 1 - z;
  return DensityMatrix(DimSignature{2}, m / 2.0);
}

}  // namespace

TEST(Measures, KnownValues) {
  const std::vector<int> b{1};
  EXPECT_NEAR(negativity(bell(), b), 0.5, 1e-14);
  EXPECT_NEAR(l1_coherence(bell()), 1.0, 1e-14);
  EXPECT_NEAR(l1_coherence(plus()), 1.0, 1e-14);
  EXPECT_NEAR(relative_entropy_coherence(plus()), 1.0, 1e-13);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(DimSignature{2}, Matrix::Identity(2, 2) / 2.0)), 1.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(bell()), 0.0, 1e-13);
  const std::vector<int> a{0};
  EXPECT_NEAR(von_neumann_entropy(partial_trace(bell(), a)), 1.0, 1e-13);

  const DensityMatrix zero = DensityMatrix::basis_projector(DimSignature{2}, 0);
  const DensityMatrix one = DensityMatrix::basis_projector(DimSignature{2}, 1);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(zero, plus()), 0.5, 1e-13);
  EXPECT_NEAR(bures_distance(zero, plus()), std::sqrt(2.0 - std::sqrt(2.0)), 1e-13);
  EXPECT_NEAR(hilbert_schmidt_distance(zero, one), std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(std::isinf(relative_entropy(plus(), zero)));
  EXPECT_NEAR(relative_entropy(zero, DensityMatrix(DimSignature{2}, Matrix::Identity(2, 2) / 2.0)), 1.0, 1e-13);
}

TEST(Measures, ProductStateHasNoNegativity) {
  Rng rng(1);
  const std::vector<DensityMatrix> parts{random_state(DimSignature{2}, rng), random_state(DimSignature{3}, rng)};
  const std::vector<int> b{1};
  EXPECT_NEAR(negativity(tensor(parts), b), 0.0, 1e-13);
}

// Qubits: the generalized robustness equals 2|rho_01| (= l1 coherence).
TEST(Robustness, QubitSearchMatchesClosedForm) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    double x = u(rng), y = u(rng), z = u(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1) x /= n, y /= n, z /= n;
    const DensityMatrix rho = qubit(x, y, z);
    EXPECT_NEAR(robustness_coherence_qubit(rho), std::hypot(x, y), 1e-8);
    EXPECT_NEAR(robustness_coherence_upper_bound(rho), std::hypot(x, y), 1e-14);
  }
  EXPECT_EQ(robustness_coherence_qubit(qubit(0, 0, 1)), 0.0);
}

TEST(Robustness, UpperBoundInHigherDimensions) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_state(DimSignature{2, 3}, rng);
    EXPECT_NEAR(robustness_coherence_upper_bound(rho), l1_coherence(rho), 1e-12);
  }
  EXPECT_THROW(robustness_coherence_qubit(bell()), UnsupportedDimensionError);
}

TEST(Measures, NamedLookup) {
  const std::vector<int> b{1};
  const MeasureReport rep = measure_report(bell(), {"negativity", "l1_coherence"}, b, "bell");
  EXPECT_NEAR(rep.values.at("negativity"), 0.5, 1e-14);
  EXPECT_THROW(evaluate_measure("nope", bell(), b), std::invalid_argument);
  EXPECT_THROW(trace_distance(bell(), plus()), DimensionError);
}

// Generators: random states of random rank on random small signatures.
TEST(Property, MetricAxiomsAndRanges) {
  Rng rng(7);
  const std::vector<DimSignature> sigs{DimSignature{2}, DimSignature{3}, DimSignature{2, 2}, DimSignature{2, 3}};
  for (int t = 0; t < 100; ++t) {
    const DimSignature& sig = sigs[t % sigs.size()];
    const DensityMatrix a = random_state(sig, rng), b = random_state(sig, rng), c = random_state(sig, rng);
    const double dab = trace_distance(a, b);
    EXPECT_NEAR(dab, trace_distance(b, a), 1e-13);
    EXPECT_LE(dab, trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    EXPECT_NEAR(dab, 0.5 * oracle::trace_norm_hermitian(a.data() - b.data()), 1e-13);
    const double f = fidelity(a, b);
    EXPECT_GE(f, -1e-12);
    EXPECT_LE(f, 1.0 + 1e-9);
    // Fuchs-van de Graaf.
    EXPECT_LE(1.0 - std::sqrt(std::max(0.0, f)), dab + 1e-8);
    EXPECT_LE(dab, std::sqrt(std::max(0.0, 1.0 - f)) + 1e-8);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-8);
    EXPECT_GE(relative_entropy_coherence(a), 0.0);
    EXPECT_GE(l1_coherence(a), 0.0);
    EXPECT_GE(von_neumann_entropy(a), -1e-13);
    EXPECT_LE(von_neumann_entropy(a), std::log2(static_cast<double>(sig.total())) + 1e-12);
    if (sig.size() == 2) {
      const std::vector<int> bpart{1};
      EXPECT_GE(negativity(a, bpart), 0.0);
    }
  }
}

TEST(Property, PinskerBound) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix a = random_mixed_state(DimSignature{3}, rng);
    const DensityMatrix b = random_mixed_state(DimSignature{3}, rng);
    const double d = trace_distance(a, b);
    // D(a||b) in bits >= 2 T^2 / ln 2.
    EXPECT_GE(relative_entropy(a, b), 2.0 * d * d / std::log(2.0) - 1e-12);
  }
}
