#include "unruh/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "unruh/random_states.hpp"

namespace unruh {

// ---------------------------------------------------------------------------
// Acceleration parameter

double r_from_omega(double omega) {
  if (!(omega > 0.0)) {
    throw DivergenceError("r_from_omega: Omega must be > 0 (r diverges as Omega -> 0)");
  }
  // tanh^2 r = exp(-2 pi Omega), which avoids acosh cancellation near r = 0.
  return std::atanh(std::exp(-M_PI * omega));
}

AccelerationParam AccelerationParam::from_r(double r) {
  AccelerationParam p{r, std::nullopt};
  p.validate();
  return p;
}

AccelerationParam AccelerationParam::from_omega(double omega) {
  AccelerationParam p{r_from_omega(omega), omega};
  p.validate();
  return p;
}

void AccelerationParam::validate() const {
  if (!std::isfinite(r) || r < 0.0) throw DivergenceError("acceleration parameter r must be finite and >= 0");
  if (r > kMaxAcceleration) {
    throw BudgetError("acceleration parameter r = " + std::to_string(r) + " exceeds the supported maximum 2.5");
  }
  if (omega) {
    if (!(*omega > 0.0)) throw DivergenceError("Omega must be > 0");
    const double lhs = std::cosh(r);
    const double rhs = 1.0 / std::sqrt(-std::expm1(-2.0 * M_PI * *omega));
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, rhs)) {
      throw std::invalid_argument("acceleration parameter r inconsistent with Omega");
    }
  }
}

// ---------------------------------------------------------------------------
// Truncation tails

double truncation_tail(double r, int level, int K) {
  if (r < 0 || level < 0 || K < 0) throw std::invalid_argument("truncation_tail: arguments must be nonnegative");
  const double t = std::tanh(r);
  if (t == 0.0) return 0.0;
  const double x = t * t;
  const double lc = std::log(std::cosh(r));
  // Remainder series sum_{k > K} C(k+l, l) x^k / cosh^(2(l+1)) r, summed forward
  // so the result stays positive and strictly decreasing in K.
  const int k0 = K + 1;
  double term = std::exp(std::lgamma(k0 + level + 1.0) - std::lgamma(k0 + 1.0) - std::lgamma(level + 1.0) +
                         k0 * std::log(x) - 2.0 * (level + 1) * lc);
  double sum = 0.0;
  for (long k = k0; k < k0 + 50'000'000L; ++k) {
    sum += term;
    const double ratio_next = x * (k + 1.0 + level) / (k + 1.0);
    const double next = term * ratio_next;
    if (ratio_next < 1.0) {
      const double ratio_after = x * (k + 2.0 + level) / (k + 2.0);
      const double bound = next / (1.0 - ratio_after);
      if (bound <= 1e-17 * sum || next == 0.0) {
        sum += next;
        break;
      }
    }
    term = next;
  }
  return sum;
}

int certified_cutoff(double r, int d, double epsilon, int max_cutoff) {
  if (d < 1) throw std::invalid_argument("certified_cutoff: d must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("certified_cutoff: epsilon must be > 0");
  auto worst = [&](int K) {
    double w = 0.0;
    for (int l = 0; l < d; ++l) w = std::max(w, truncation_tail(r, l, K));
    return w;
  };
  if (worst(0) <= epsilon) return 0;
  // Exponential then binary search; the tail is decreasing in K.
  int lo = 0, hi = 1;
  while (worst(hi) > epsilon) {
    lo = hi;
    hi *= 2;
    if (hi > max_cutoff) {
      if (worst(max_cutoff) > epsilon) {
        throw BudgetError("certified_cutoff: tail bound needs K > " + std::to_string(max_cutoff));
      }
      hi = max_cutoff;
      break;
    }
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (worst(mid) > epsilon ? lo : hi) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// ChannelSpec

void ChannelSpec::validate() const {
  const int n = n_parties();
  const int m = n_accelerated();
  if (n < 1) throw std::invalid_argument("ChannelSpec: at least one party required");
  if (m < 1 || m > n) throw std::invalid_argument("ChannelSpec: need 1 <= M <= N accelerated parties");
  if (static_cast<int>(accel.size()) != m || static_cast<int>(cutoffs.size()) != m) {
    throw std::invalid_argument("ChannelSpec: one acceleration parameter and cutoff per accelerated party");
  }
  for (int d : local_dims) {
    if (d < 1) throw DimensionError("ChannelSpec: local dimensions must be >= 1");
  }
  std::vector<bool> seen(n, false);
  for (int i = 0; i < m; ++i) {
    const int p = accelerated[i];
    if (p < 0 || p >= n) throw std::invalid_argument("ChannelSpec: accelerated party index out of range");
    if (seen[p]) throw std::invalid_argument("ChannelSpec: duplicate accelerated party");
    seen[p] = true;
    if (local_dims[p] < 2) throw DimensionError("ChannelSpec: accelerated parties need d >= 2");
    if (cutoffs[i] < 0) throw std::invalid_argument("ChannelSpec: cutoffs must be >= 0");
    accel[i].validate();
  }
}

DimSignature ChannelSpec::input_signature() const { return DimSignature(local_dims); }

DimSignature ChannelSpec::output_signature() const {
  std::vector<int> dims = local_dims;
  for (int i = 0; i < n_accelerated(); ++i) dims[accelerated[i]] += cutoffs[i];
  return DimSignature(std::move(dims));
}

int ChannelSpec::accelerated_slot(int party) const {
  for (int i = 0; i < n_accelerated(); ++i) {
    if (accelerated[i] == party) return i;
  }
  return -1;
}

std::vector<double> ChannelSpec::party_tails() const {
  std::vector<double> tails;
  for (int i = 0; i < n_accelerated(); ++i) {
    double w = 0.0;
    for (int l = 0; l < local_dims[accelerated[i]]; ++l) w = std::max(w, truncation_tail(accel[i].r, l, cutoffs[i]));
    tails.push_back(w);
  }
  return tails;
}

double ChannelSpec::certified_tail() const {
  double kept = 1.0;
  for (double t : party_tails()) kept *= 1.0 - t;
  return 1.0 - kept;
}

ChannelSpec ChannelSpec::certified(std::vector<int> local_dims, std::vector<int> accelerated, std::vector<double> r,
                                   double epsilon) {
  std::vector<AccelerationParam> accel;
  for (double v : r) accel.push_back(AccelerationParam::from_r(v));
  return certified(std::move(local_dims), std::move(accelerated), std::move(accel), epsilon);
}

ChannelSpec ChannelSpec::certified(std::vector<int> local_dims, std::vector<int> accelerated,
                                   std::vector<AccelerationParam> accel, double epsilon) {
  ChannelSpec spec{std::move(local_dims), std::move(accelerated), std::move(accel), {}};
  if (spec.accel.size() != spec.accelerated.size()) {
    throw std::invalid_argument("ChannelSpec: one acceleration parameter per accelerated party");
  }
  for (std::size_t i = 0; i < spec.accelerated.size(); ++i) {
    const int p = spec.accelerated[i];
    if (p < 0 || p >= spec.n_parties()) throw std::invalid_argument("ChannelSpec: accelerated party index out of range");
    spec.accel[i].validate();
    spec.cutoffs.push_back(certified_cutoff(spec.accel[i].r, spec.local_dims[p], epsilon));
  }
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Kraus operators

std::vector<FockOperator> kraus_single(double r, int d_in, int K) {
  if (r < 0 || d_in < 1 || K < 0) throw std::invalid_argument("kraus_single: invalid arguments");
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  std::vector<FockOperator> ops;
  ops.reserve(K + 1);
  for (int k = 0; k <= K; ++k) {
    Matrix a = Matrix::Zero(d_in + K, d_in);
    const double tk = std::pow(t, k);
    double binom = 1.0;  // C(n+k, n), built up over n
    double cpow = c;     // cosh^(n+1)
    for (int n = 0; n < d_in; ++n) {
      if (n > 0) {
        binom *= static_cast<double>(n + k) / n;
        cpow *= c;
      }
      a(n + k, n) = std::sqrt(binom) * tk / cpow;
    }
    ops.emplace_back(d_in, d_in + K, std::move(a));
  }
  return ops;
}

void KrausSet::finish() {
  const long din = in_sig_.total();
  completeness_ = Matrix::Zero(din, din);
  sparse_.clear();
  sparse_.reserve(ops_.size());
  for (const auto& op : ops_) {
    sparse_.push_back(op.data().sparseView(0.0, 0.0));
    completeness_ += sparse_.back().adjoint() * sparse_.back();
  }
  completeness_ = 0.5 * (completeness_ + completeness_.adjoint().eval());
  completeness_defect_ = max_norm(completeness_ - Matrix::Identity(din, din));
}

KrausSet KrausSet::from_operators(std::vector<FockOperator> ops, DimSignature in_sig, DimSignature out_sig,
                                  std::optional<ChannelSpec> spec) {
  if (ops.empty()) throw std::invalid_argument("KrausSet: empty operator family");
  for (const auto& op : ops) {
    if (op.dim_in() != in_sig.total() || op.dim_out() != out_sig.total()) {
      throw DimensionError("KrausSet: operator shape does not match signatures");
    }
  }
  KrausSet ks;
  ks.ops_ = std::move(ops);
  ks.in_sig_ = std::move(in_sig);
  ks.out_sig_ = std::move(out_sig);
  ks.spec_ = std::move(spec);
  ks.permutation_.resize(ks.in_sig_.size());
  std::iota(ks.permutation_.begin(), ks.permutation_.end(), 0);
  ks.finish();
  return ks;
}

KrausSet KrausSet::without_operator(std::size_t index) const {
  if (index >= ops_.size()) throw std::out_of_range("KrausSet::without_operator: index out of range");
  if (ops_.size() == 1) throw std::invalid_argument("KrausSet::without_operator: cannot remove the only operator");
  KrausSet ks = *this;
  ks.ops_.erase(ks.ops_.begin() + static_cast<long>(index));
  if (!ks.multi_indices_.empty()) ks.multi_indices_.erase(ks.multi_indices_.begin() + static_cast<long>(index));
  ks.finish();
  return ks;
}

KrausSet kraus_multiparty(const ChannelSpec& spec, const KrausBudget& budget) {
  spec.validate();
  const int n = spec.n_parties();
  const int m = spec.n_accelerated();

  std::size_t count = 1;
  for (int K : spec.cutoffs) {
    count *= static_cast<std::size_t>(K) + 1;
    if (count > budget.max_operators) {
      throw BudgetError("kraus_multiparty: operator count exceeds budget of " + std::to_string(budget.max_operators));
    }
  }
  const DimSignature in_sig = spec.input_signature();
  const DimSignature out_sig = spec.output_signature();
  const double elements = static_cast<double>(count) * in_sig.total() * out_sig.total();
  if (elements > static_cast<double>(budget.max_elements)) {
    throw BudgetError("kraus_multiparty: dense Kraus storage exceeds budget of " +
                      std::to_string(budget.max_elements) + " entries");
  }

  // Canonical order: inertial parties (user order), then accelerated parties.
  std::vector<int> perm;
  for (int p = 0; p < n; ++p) {
    if (spec.accelerated_slot(p) < 0) perm.push_back(p);
  }
  const int n_inertial = static_cast<int>(perm.size());
  perm.insert(perm.end(), spec.accelerated.begin(), spec.accelerated.end());

  long inertial_dim = 1;
  for (int i = 0; i < n_inertial; ++i) inertial_dim *= spec.local_dims[perm[i]];

  std::vector<std::vector<FockOperator>> single;
  single.reserve(m);
  for (int i = 0; i < m; ++i) {
    single.push_back(kraus_single(spec.accel[i].r, spec.local_dims[spec.accelerated[i]], spec.cutoffs[i]));
  }

  // The canonical -> user index maps for input and output composite indices.
  const auto map_in = permutation_index_map(in_sig, perm);
  const auto map_out = permutation_index_map(out_sig, perm);

  KrausSet ks;
  ks.in_sig_ = in_sig;
  ks.out_sig_ = out_sig;
  ks.spec_ = spec;
  ks.permutation_ = perm;
  ks.ops_.reserve(count);
  ks.multi_indices_.reserve(count);

  const Matrix inertial_id = Matrix::Identity(inertial_dim, inertial_dim);
  std::vector<int> idx(m, 0);
  for (std::size_t c = 0; c < count; ++c) {
    Matrix acc = inertial_id;
    for (int i = 0; i < m; ++i) acc = kron(acc, single[i][idx[i]].data());
    Matrix user(acc.rows(), acc.cols());
    for (long j = 0; j < acc.cols(); ++j) {
      for (long i = 0; i < acc.rows(); ++i) user(map_out[i], map_in[j]) = acc(i, j);
    }
    ks.ops_.emplace_back(static_cast<int>(in_sig.total()), static_cast<int>(out_sig.total()), std::move(user));
    ks.multi_indices_.push_back(idx);
    // Lexicographic increment, last index fastest.
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[i] <= spec.cutoffs[i]) break;
      idx[i] = 0;
    }
  }
  ks.finish();
  return ks;
}

// ---------------------------------------------------------------------------
// Channel application

namespace {

Matrix apply_sparse(const std::vector<Eigen::SparseMatrix<cplx>>& ops, const Matrix& rho, long out_side) {
  Matrix out = Matrix::Zero(out_side, out_side);
  const Eigen::SparseMatrix<cplx> rs = rho.sparseView(0.0, 0.0);
  for (const auto& a : ops) {
    const Eigen::SparseMatrix<cplx> term = a * rs * Eigen::SparseMatrix<cplx>(a.adjoint());
    out += term;
  }
  return 0.5 * (out + out.adjoint());
}

}  // namespace

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
  if (!(rho.sig() == ks.input_signature())) {
    throw DimensionError("apply_channel: state signature " + rho.sig().str() + " does not match channel input " +
                         ks.input_signature().str());
  }
  Matrix out = apply_sparse(ks.sparse_ops(), rho.data(), ks.output_signature().total());
  const double kept = (rho.data() * ks.completeness()).trace().real();
  return DensityMatrix(ks.output_signature(), std::move(out), kept);
}

DensityMatrix choi_matrix(const KrausSet& ks, long max_side) {
  const long din = ks.input_signature().total();
  const long dout = ks.output_signature().total();
  if (din * dout > max_side) {
    throw BudgetError("choi_matrix: side " + std::to_string(din * dout) + " exceeds budget " + std::to_string(max_side));
  }
  // Sum_k |a_k><a_k| with a_k = Sum_i |i> (x) A_k|i>.
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  Vector a(din * dout);
  for (const auto& op : ks.ops()) {
    for (long i = 0; i < din; ++i) a.segment(i * dout, dout) = op.data().col(i);
    choi.noalias() += a * a.adjoint();
  }
  choi = 0.5 * (choi + choi.adjoint().eval());
  const double tr = choi.trace().real();
  return DensityMatrix(ks.input_signature().concat(ks.output_signature()), std::move(choi), tr);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

double trace_norm(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  return hermitian_eigenvalues(h).cwiseAbs().sum();
}

}  // namespace

PropertySuite verify_cptp(const KrausSet& ks, int samples, std::uint64_t seed, long choi_max_side) {
  PropertySuite suite{"cptp", {}};
  Rng rng(seed);
  const DimSignature sig = ks.input_signature();
  const double bound = ks.certified_tail();
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  PropertyReport lin{"linearity", samples, 0.0, 1e-12, true, seed, true, ""};
  PropertyReport trace{"trace_preservation", samples, 0.0, 1e-12, true, seed, true, ""};
  PropertyReport pos{"positivity", samples, 0.0, tol::psd, true, seed, true, ""};
  PropertyReport cp{"complete_positivity", 1, 0.0, tol::psd, true, seed, true, ""};

  double worst_deficit = 0.0;
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix r1 = random_state(sig, rng);
    const DensityMatrix r2 = random_state(sig, rng);
    const double p = unif(rng);
    const DensityMatrix mix(sig, p * r1.data() + (1 - p) * r2.data());

    const DensityMatrix e1 = apply_channel(ks, r1);
    const DensityMatrix e2 = apply_channel(ks, r2);
    const DensityMatrix em = apply_channel(ks, mix);
    lin.worst_violation = std::max(lin.worst_violation, trace_norm(em.data() - p * e1.data() - (1 - p) * e2.data()));

    for (const DensityMatrix* out : {&e1, &e2}) {
      const double deficit = 1.0 - out->trace();
      worst_deficit = std::max(worst_deficit, deficit);
      trace.worst_violation = std::max(trace.worst_violation, std::max(deficit - bound, -deficit));
      pos.worst_violation = std::max(pos.worst_violation, std::max(0.0, -out->min_eigenvalue()));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst deficit %.6e, certified tail bound %.6e", worst_deficit, bound);
  trace.note = buf;

  try {
    const DensityMatrix choi = choi_matrix(ks, choi_max_side);
    cp.worst_violation = std::max(0.0, -choi.min_eigenvalue());
  } catch (const BudgetError& e) {
    cp.assertable = false;
    cp.samples = 0;
    cp.note = std::string("skipped: ") + e.what();
  }

  for (auto* r : {&lin, &trace, &pos, &cp}) {
    r->finalize();
    suite.checks.push_back(*r);
  }
  return suite;
}

}  // namespace unruh
