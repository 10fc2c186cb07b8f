#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "unruh/channel.hpp"
#include "unruh/random_states.hpp"

using namespace unruh;

namespace {

const double kRHalf = std::atanh(std::sqrt(0.5));  // tanh^2 r = 1/2, r = 0.881373587...

// Single-mode Kraus matrix from the closed form, (d+K) x d.
Matrix oracle_kraus(double r, int d, int K, int k) {
  Matrix a = Matrix::Zero(d + K, d);
  for (int n = 0; n < d; ++n) a(n + k, n) = oracle::kraus_entry(r, k, n);
  return a;
}

// Dense sum over Kraus products, one factor per party, in user order.
Matrix oracle_channel(const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& acc,
                      const std::vector<double>& r, const std::vector<int>& K) {
  std::vector<std::vector<Matrix>> per_party(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) per_party[p] = {Matrix::Identity(dims[p], dims[p])};
  for (std::size_t m = 0; m < acc.size(); ++m) {
    per_party[acc[m]].clear();
    for (int k = 0; k <= K[m]; ++k) per_party[acc[m]].push_back(oracle_kraus(r[m], dims[acc[m]], K[m], k));
  }
  std::vector<Matrix> ops{Matrix::Identity(1, 1)};
  for (const auto& choices : per_party) {
    std::vector<Matrix> next;
    for (const auto& o : ops) {
      for (const auto& c : choices) next.push_back(oracle::kron(o, c));
    }
    ops = std::move(next);
  }
  Matrix out = Matrix::Zero(ops[0].rows(), ops[0].rows());
  for (const auto& o : ops) out += o * rho * o.adjoint();
  return out;
}

}  // namespace

TEST(Omega, MapsToRAndRejectsNonpositive) {
  for (double w : {0.05, 0.1, 0.5, 1.0, 3.0}) {
    const double r = r_from_omega(w);
    EXPECT_NEAR(std::cosh(r), 1.0 / std::sqrt(1.0 - std::exp(-2 * M_PI * w)), 1e-10 * std::cosh(r));
  }
  EXPECT_THROW(r_from_omega(0.0), DivergenceError);
  EXPECT_THROW(r_from_omega(-1.0), DivergenceError);
  EXPECT_THROW(AccelerationParam::from_r(2.6).validate(), BudgetError);
  EXPECT_NO_THROW(AccelerationParam::from_r(2.5).validate());
  EXPECT_THROW(AccelerationParam::from_omega(0.001).validate(), BudgetError);
}

TEST(Tail, FrozenValueAtHalf) {
  // Sum_{k>40} (k+1) 2^-k / 4 = 43 * 2^-42.
  EXPECT_NEAR(truncation_tail(kRHalf, 1, 40), 43.0 * std::ldexp(1.0, -42), 1e-24);
  EXPECT_NEAR(truncation_tail(kRHalf, 0, 40), std::ldexp(1.0, -41), 1e-25);
}

TEST(Tail, AgreesWithTermwiseSummation) {
  for (double r : {0.1, 0.5, kRHalf, 1.3}) {
    for (int l : {0, 1, 3}) {
      for (int K : {0, 5, 20, 60}) {
        const double expect = oracle::tail_by_summation(r, l, K);
        EXPECT_NEAR(truncation_tail(r, l, K), expect, 1e-13 * std::max(expect, 1e-3)) << r << ' ' << l << ' ' << K;
      }
    }
  }
}

TEST(Tail, PositiveAndStrictlyDecreasing) {
  for (double r : {0.2, 1.0, 2.5}) {
    double prev = 1.0;
    for (int K = 0; K < 400; K += 7) {
      const double t = truncation_tail(r, 1, K);
      if (t == 0.0) break;
      EXPECT_GT(t, 0.0);
      EXPECT_LT(t, prev);
      prev = t;
    }
  }
  EXPECT_EQ(truncation_tail(0.0, 2, 3), 0.0);
}

TEST(Cutoff, CertifiedValuesFrozen) {
  const std::vector<std::pair<double, int>> frozen = {{0.3, 10}, {0.5, 16},  {0.7, 25},  {0.881374, 37},
                                                      {1.2, 71}, {1.6, 160}, {2.0, 358}, {2.5, 976}};
  for (const auto& [r, K] : frozen) {
    EXPECT_EQ(certified_cutoff(r, 2), K) << r;
    EXPECT_LE(std::max(truncation_tail(r, 0, K), truncation_tail(r, 1, K)), 1e-10);
    EXPECT_GT(std::max(truncation_tail(r, 0, K - 1), truncation_tail(r, 1, K - 1)), 1e-10);
  }
  EXPECT_EQ(certified_cutoff(0.0, 3), 0);
  EXPECT_THROW(certified_cutoff(2.5, 2, 1e-10, 100), BudgetError);
}

TEST(KrausSingle, EntriesMatchClosedForm) {
  for (double r : {0.0, 0.4, kRHalf, 1.7}) {
    const int d = 3, K = 12;
    const auto ops = kraus_single(r, d, K);
    ASSERT_EQ(ops.size(), static_cast<std::size_t>(K + 1));
    for (int k = 0; k <= K; ++k) {
      EXPECT_LT((ops[k].data() - oracle_kraus(r, d, K, k)).cwiseAbs().maxCoeff(), 1e-14) << r << ' ' << k;
    }
  }
}

TEST(Spec, ValidationErrors) {
  ChannelSpec s = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.5});
  EXPECT_EQ(s.output_signature().dims(), (std::vector<int>{2, 2 + s.cutoffs[0]}));
  s.accelerated = {2};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_THROW(ChannelSpec::certified({2, 2}, {1, 1}, std::vector<double>{0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(ChannelSpec::certified({2, 1}, {1}, std::vector<double>{0.5}), DimensionError);
  EXPECT_THROW(ChannelSpec::certified({2, 2}, {1}, std::vector<double>{3.0}), BudgetError);
}

TEST(Multiparty, MatchesDenseOracleIncludingPartyOrder) {
  Rng rng(101);
  struct Case {
    std::vector<int> dims, acc;
    std::vector<double> r;
    std::vector<int> K;
  };
  const std::vector<Case> cases = {
      {{2, 2}, {1}, {0.5}, {6}},
      {{2, 3}, {0}, {0.7}, {5}},
      {{3, 2, 2}, {0, 2}, {0.3, 0.9}, {4, 3}},
      {{2, 2, 2}, {1}, {1.1}, {5}},
  };
  for (const auto& c : cases) {
    ChannelSpec spec{c.dims, c.acc, {}, c.K};
    for (double r : c.r) spec.accel.push_back(AccelerationParam::from_r(r));
    const KrausSet ks = kraus_multiparty(spec);
    for (int t = 0; t < 5; ++t) {
      const DensityMatrix rho = random_state(spec.input_signature(), rng);
      const DensityMatrix out = apply_channel(ks, rho);
      const Matrix expect = oracle_channel(rho.data(), c.dims, c.acc, c.r, c.K);
      EXPECT_LT((out.data() - expect).cwiseAbs().maxCoeff(), 1e-13) << spec.input_signature().str();
      EXPECT_NEAR(out.target_trace(), expect.trace().real(), 1e-13);
    }
  }
}

TEST(Channel, IdentityAtZeroAcceleration) {
  Rng rng(7);
  const ChannelSpec spec = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.0});
  EXPECT_EQ(spec.cutoffs[0], 0);
  const KrausSet ks = kraus_multiparty(spec);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_state(spec.input_signature(), rng);
    EXPECT_LT(oracle::trace_norm_hermitian(apply_channel(ks, rho).data() - rho.data()), 1e-14);
  }
}

TEST(Channel, VacuumThermalizes) {
  const int K = 60;
  ChannelSpec spec{{2}, {0}, {AccelerationParam::from_r(kRHalf)}, {K}};
  const DensityMatrix out = apply_channel(kraus_multiparty(spec), DensityMatrix::basis_projector(DimSignature{2}, 0));
  double mean = 0.0;
  for (int k = 0; k < out.side(); ++k) {
    if (k <= K) EXPECT_NEAR(out.data()(k, k).real(), std::ldexp(1.0, -(k + 1)), 1e-15);
    mean += k * out.data()(k, k).real();
  }
  Matrix off = out.data();
  off.diagonal().setZero();
  EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(mean, std::sinh(kRHalf) * std::sinh(kRHalf), 1e-12);
}

TEST(Channel, FockInputDeficitEqualsTail) {
  ChannelSpec spec{{2}, {0}, {AccelerationParam::from_r(kRHalf)}, {40}};
  const KrausSet ks = kraus_multiparty(spec);
  for (int l = 0; l < 2; ++l) {
    const DensityMatrix out = apply_channel(ks, DensityMatrix::basis_projector(DimSignature{2}, l));
    EXPECT_NEAR(1.0 - out.trace(), truncation_tail(kRHalf, l, 40), 1e-14);
  }
}

TEST(Channel, DiagonalInputsStayDiagonal) {
  Rng rng(9);
  const ChannelSpec spec = ChannelSpec::certified({2, 3}, {0, 1}, std::vector<double>{0.6, 0.9});
  const KrausSet ks = kraus_multiparty(spec);
  for (int t = 0; t < 10; ++t) {
    Matrix d = Matrix::Zero(6, 6);
    double total = 0.0;
    for (int i = 0; i < 6; ++i) total += std::real(d(i, i) = std::uniform_real_distribution<double>(0, 1)(rng));
    const DensityMatrix out = apply_channel(ks, DensityMatrix(spec.input_signature(), d / total));
    Matrix off = out.data();
    off.diagonal().setZero();
    EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Channel, BudgetAndSignatureErrors) {
  const ChannelSpec spec = ChannelSpec::certified({2, 2}, {0, 1}, std::vector<double>{2.0, 2.0});
  EXPECT_THROW(kraus_multiparty(spec), BudgetError);
  const ChannelSpec small = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{0.5});
  KrausBudget tiny;
  tiny.max_operators = 3;
  EXPECT_THROW(kraus_multiparty(small, tiny), BudgetError);
  EXPECT_THROW(apply_channel(kraus_multiparty(small), DensityMatrix::basis_projector(DimSignature{4}, 0)),
               DimensionError);
}

TEST(Verify, CptpSuitePassesAndDetectsDroppedOperator) {
  for (double r : {0.25, 0.5, kRHalf, 1.2}) {
    const ChannelSpec spec = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{r});
    const KrausSet ks = kraus_multiparty(spec);
    const PropertySuite suite = verify_cptp(ks, 30, 1);
    for (const auto& c : suite.checks) EXPECT_TRUE(c.pass) << r << ' ' << c.property << ' ' << c.worst_violation;
    const PropertySuite broken = verify_cptp(ks.without_operator(1), 30, 1);
    ASSERT_NE(broken.find("trace_preservation"), nullptr);
    EXPECT_FALSE(broken.find("trace_preservation")->pass);
  }
}

TEST(Verify, ChoiPositiveAndSkippedOverBudget) {
  for (double r : {0.25, 0.5, kRHalf, 1.2}) {
    ChannelSpec spec{{2}, {0}, {AccelerationParam::from_r(r)}, {8}};
    const DensityMatrix choi = choi_matrix(kraus_multiparty(spec));
    EXPECT_EQ(choi.side(), 2 * 10);
    EXPECT_GE(hermitian_eigenvalues(choi.data()).minCoeff(), -1e-10);
    // Partial trace over the output gives Sum A^dag A (transposed) on the input.
    const std::vector<int> keep{0};
    const Matrix in = partial_trace(choi, keep).data();
    EXPECT_NEAR(in(0, 0).real(), 1.0 - truncation_tail(r, 0, 8), 1e-13);
  }
  const ChannelSpec big = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{1.2});
  const PropertySuite s = verify_cptp(kraus_multiparty(big), 5, 1, 64);
  EXPECT_FALSE(s.find("complete_positivity")->assertable);
  EXPECT_TRUE(s.pass());
  EXPECT_THROW(choi_matrix(kraus_multiparty(big), 64), BudgetError);
}

// Generator: random specs with up to three parties and one or two accelerated.
TEST(Property, OutputsArePositiveWithBoundedDeficit) {
  Rng rng(2024);
  std::uniform_int_distribution<int> nparties(1, 3), dim(2, 3);
  std::uniform_real_distribution<double> rdist(0.0, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> dims(nparties(rng));
    for (auto& d : dims) d = dim(rng);
    std::vector<int> acc{static_cast<int>(rng() % dims.size())};
    std::vector<double> r{rdist(rng)};
    const ChannelSpec spec = ChannelSpec::certified(dims, acc, r);
    const KrausSet ks = kraus_multiparty(spec);
    for (int t = 0; t < 3; ++t) {
      const DensityMatrix rho = random_state(spec.input_signature(), rng);
      const DensityMatrix out = apply_channel(ks, rho);
      EXPECT_GE(hermitian_eigenvalues(out.data()).minCoeff(), -1e-12);
      const double deficit = 1.0 - out.trace();
      EXPECT_GE(deficit, -1e-13);
      EXPECT_LE(deficit, spec.certified_tail() + 1e-13);
    }
  }
}
