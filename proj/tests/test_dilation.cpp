#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "unruh/dilation.hpp"
#include "unruh/measures.hpp"
#include "unruh/random_states.hpp"

using namespace unruh;

TEST(RindlerExpand, AmplitudesAndNorm) {
  for (double r : {0.0, 0.3, 1.0, 1.8}) {
    for (int l : {0, 1, 2}) {
      const int cutoff = 50;
      const TwoModeState s = rindler_expand(l, r, cutoff);
      for (int n = 0; n + l <= cutoff; n += 7) {
        const double expect = std::sqrt(oracle::binom(n + l, l)) * std::pow(std::tanh(r), n) / std::pow(std::cosh(r), l + 1);
        EXPECT_NEAR(s.amplitudes(n + l, n).real(), expect, 1e-14);
      }
      EXPECT_NEAR(s.norm_squared() + s.declared_tail, 1.0, 1e-13);
      EXPECT_NEAR(s.declared_tail, oracle::tail_by_summation(r, l, cutoff - l), 1e-13);
    }
  }
  EXPECT_THROW(rindler_expand(5, 0.3, 3), std::invalid_argument);
}

TEST(Squeezing, TruncatedExponentialIsOrthogonal) {
  const FockOperator s = squeezing_operator(0.8, 12);
  const long n = s.data().rows();
  EXPECT_EQ(n, 13 * 13);
  EXPECT_LT((s.data().adjoint() * s.data() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(s.data().imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Squeezing, VacuumColumnMatchesClosedFormOnConvergedLevels) {
  // Truncating the generator distorts the highest levels; levels up to half the
  // cutoff are converged.
  const double r = 1.0;
  const int cutoff = 40;
  const FockOperator s = squeezing_operator(r, cutoff);
  const TwoModeState closed = rindler_expand(0, r, cutoff);
  double worst = 0.0;
  for (int n = 0; n <= cutoff / 2; ++n) {
    worst = std::max(worst, std::abs(s.data()(static_cast<long>(n) * (cutoff + 1) + n, 0) - closed.amplitudes(n, n)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Squeezing, IsometriesAgreeOnConvergedLevels) {
  const double r = 0.5;
  const int cutoff = 40, d = 3;
  const Matrix a = dilation_isometry(r, d, cutoff, EmbeddingMethod::ClosedForm);
  const Matrix b = dilation_isometry(r, d, cutoff, EmbeddingMethod::MatrixExponential);
  // Level l lands on (n + l, n); compare on n + l <= cutoff / 2.
  for (int l = 0; l < d; ++l) {
    for (int n = 0; n + l <= cutoff / 2; ++n) {
      const long idx = static_cast<long>(n + l) * (cutoff + 1) + n;
      EXPECT_NEAR(std::abs(a(idx, l) - b(idx, l)), 0.0, 1e-10) << l << ' ' << n;
    }
  }
}

TEST(Dilation, ZeroAccelerationReturnsInput) {
  Rng rng(3);
  const ChannelSpec spec = ChannelSpec::certified({2, 2}, {0}, std::vector<double>{0.0});
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = random_state(spec.input_signature(), rng);
    const DensityMatrix out = dilate_and_trace(rho, spec, dilation_cutoff(spec));
    EXPECT_LT((out.data() - rho.data()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

// Independent route: dense V, dense V rho V^dagger, loop partial trace over II,
// then keep the first d + K levels of region I.
TEST(Dilation, MatchesDenseConstruction) {
  Rng rng(5);
  const double r = 0.4;
  const ChannelSpec spec = ChannelSpec::certified({2}, {0}, std::vector<double>{r});
  const int cutoff = dilation_cutoff(spec);
  const Matrix v = dilation_isometry(r, 2, cutoff);
  for (int t = 0; t < 5; ++t) {
    const DensityMatrix rho = random_state(DimSignature{2}, rng);
    const Matrix big = v * rho.data() * v.adjoint();
    const Matrix red = oracle::partial_trace(big, {cutoff + 1, cutoff + 1}, {0});
    const int keep = 2 + spec.cutoffs[0];
    const DensityMatrix out = dilate_and_trace(rho, spec, cutoff);
    ASSERT_EQ(out.side(), keep);
    EXPECT_LT((out.data() - red.topLeftCorner(keep, keep)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Dilation, OracleEquivalenceWithKraus) {
  Rng rng(7);
  const std::vector<ChannelSpec> specs = {
      ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.5}),
      ChannelSpec::certified({2, 2}, {0, 1}, std::vector<double>{0.3, 0.7}),
      ChannelSpec::certified({3, 2}, {0}, std::vector<double>{1.0}),
  };
  for (const auto& spec : specs) {
    for (int t = 0; t < 5; ++t) {
      EXPECT_LT(oracle_compare(random_state(spec.input_signature(), rng), spec), 1e-8);
    }
  }
}

TEST(Dilation, PurityOfDilatedPureStates) {
  Rng rng(9);
  const ChannelSpec spec = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.6}, 1e-14);
  const DensityMatrix rho = random_pure_state(spec.input_signature(), rng);
  const DilatedState ds = dilate(rho, spec, dilation_cutoff(spec));
  ASSERT_EQ(ds.vectors.size(), 1u);
  EXPECT_NEAR(ds.weights[0] * ds.vectors[0].squaredNorm(), 1.0, 1e-12);
  EXPECT_EQ(ds.region_one_slots, (std::vector<int>{1}));
  EXPECT_EQ(ds.region_two_slots, (std::vector<int>{2}));
}

TEST(Dilation, RejectsShortCutoffAndWrongState) {
  const ChannelSpec spec = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.5});
  const DensityMatrix rho = DensityMatrix::basis_projector(DimSignature{2, 2}, 0);
  EXPECT_THROW(dilate(rho, spec, 3), std::invalid_argument);
  EXPECT_THROW(dilate(DensityMatrix::basis_projector(DimSignature{4}, 0), spec, 30), DimensionError);
}
