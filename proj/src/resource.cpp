#include "unruh/resource.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "unruh/dilation.hpp"
#include "unruh/measures.hpp"

namespace unruh {

namespace {

std::vector<int> complement_of(int n, const std::vector<int>& idx) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(i);
  }
  return out;
}

std::vector<double> random_weights(int m, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

// Column i of the result is the input basis vector i zero-padded into `out_dims`.
Matrix padding_isometry(const DimSignature& in, const std::vector<int>& out_dims) {
  const DimSignature out(out_dims);
  Matrix p = Matrix::Zero(out.total(), in.total());
  std::vector<int> digits(in.size(), 0);
  for (long i = 0; i < in.total(); ++i) {
    long j = 0;
    for (std::size_t s = 0; s < in.size(); ++s) j = j * out_dims[s] + digits[s];
    p(j, i) = 1.0;
    for (int s = static_cast<int>(in.size()) - 1; s >= 0; --s) {
      if (++digits[s] < in[s]) break;
      digits[s] = 0;
    }
  }
  return p;
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
  return 0.5 * (out + out.adjoint());
}

std::string necessary_only_note(const FreeStatePredicate& pred, const DimSignature& sig) {
  if (pred.kind == PredicateKind::PptSeparable && !pred.exact_for(sig)) {
    return "PPT (necessary only) on output cut";
  }
  return {};
}

void append_note(PropertyReport& r, const std::string& s) {
  if (s.empty()) return;
  r.note += r.note.empty() ? s : "; " + s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Predicates

FreeStatePredicate FreeStatePredicate::incoherent(double tol) { return {PredicateKind::Incoherent, {}, tol}; }

FreeStatePredicate FreeStatePredicate::ppt(std::vector<int> bipartition, double tol) {
  if (bipartition.empty()) throw std::invalid_argument("ppt predicate needs a nonempty bipartition");
  return {PredicateKind::PptSeparable, std::move(bipartition), tol};
}

std::string FreeStatePredicate::name() const {
  return kind == PredicateKind::Incoherent ? "incoherent" : "ppt-separable";
}

double FreeStatePredicate::residual(const DensityMatrix& rho) const {
  const DensityMatrix n = rho.normalized();
  if (kind == PredicateKind::Incoherent) {
    Matrix off = n.data();
    off.diagonal().setZero();
    return max_norm(off);
  }
  const Matrix pt = partial_transpose(n, bipartition);
  return std::max(0.0, -hermitian_eigenvalues(0.5 * (pt + pt.adjoint())).minCoeff());
}

bool FreeStatePredicate::exact_for(const DimSignature& sig) const {
  if (kind == PredicateKind::Incoherent) return true;
  const auto rest = complement_of(static_cast<int>(sig.size()), bipartition);
  const long db = sig.subset(bipartition).total();
  const long da = sig.subset(rest).total();
  return (da == 2 && (db == 2 || db == 3)) || (da == 3 && db == 2);
}

std::vector<DensityMatrix> free_state_sampler(const FreeStatePredicate& pred, const DimSignature& sig, int n,
                                              std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("free_state_sampler: n must be >= 1");
  Rng rng(seed);
  std::vector<DensityMatrix> out;
  out.reserve(n);
  const long dim = sig.total();

  if (pred.kind == PredicateKind::Incoherent) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<long> pick(0, dim - 1);
    for (int s = 0; s < n; ++s) {
      Matrix rho = Matrix::Zero(dim, dim);
      if (coin(rng) == 0) {
        const long i = pick(rng);
        rho(i, i) = 1.0;
      } else {
        const auto w = random_weights(static_cast<int>(dim), rng);
        for (long i = 0; i < dim; ++i) rho(i, i) = w[i];
      }
      out.emplace_back(sig, std::move(rho));
    }
    return out;
  }

  const int nsub = static_cast<int>(sig.size());
  for (int b : pred.bipartition) {
    if (b < 0 || b >= nsub) throw DimensionError("free_state_sampler: bipartition index out of range");
  }
  const std::vector<int> a_side = complement_of(nsub, pred.bipartition);
  if (a_side.empty()) throw std::invalid_argument("free_state_sampler: bipartition must leave a nonempty A side");
  std::vector<int> order = a_side;
  order.insert(order.end(), pred.bipartition.begin(), pred.bipartition.end());
  // perm[j] = position of user subsystem j inside `order`.
  std::vector<int> perm(nsub);
  for (int pos = 0; pos < nsub; ++pos) perm[order[pos]] = pos;

  const DimSignature sig_a = sig.subset(a_side);
  const DimSignature sig_b = sig.subset(pred.bipartition);
  std::uniform_int_distribution<int> terms(1, 4);
  for (int s = 0; s < n; ++s) {
    const int m = terms(rng);
    const auto w = random_weights(m, rng);
    Matrix acc = Matrix::Zero(dim, dim);
    for (int t = 0; t < m; ++t) {
      const DensityMatrix ra = random_state(sig_a, rng);
      const DensityMatrix rb = random_state(sig_b, rng);
      acc += w[t] * kron(ra.data(), rb.data());
    }
    const DensityMatrix grouped(sig_a.concat(sig_b), 0.5 * (acc + acc.adjoint()));
    out.push_back(permute_subsystems(grouped, perm));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free operations

std::string to_string(FreeOpKind kind) {
  switch (kind) {
    case FreeOpKind::Identity: return "identity";
    case FreeOpKind::DiagonalUnitary: return "diagonal-unitary";
    case FreeOpKind::Permutation: return "permutation";
    case FreeOpKind::FullDephasing: return "full-dephasing";
    case FreeOpKind::LocalFreeOp: return "local-free-op";
  }
  return "unknown";
}

DensityMatrix FreeOperation::apply(const DensityMatrix& rho) const {
  if (!(rho.sig() == sig)) {
    throw DimensionError("free operation on " + sig.str() + " applied to state on " + rho.sig().str());
  }
  Matrix out = apply_kraus(kraus, rho.data());
  const double tr = out.trace().real();
  return DensityMatrix(sig, std::move(out), tr);
}

FreeOperation register_free_operation(FreeOpKind kind, const DimSignature& sig, const FreeStatePredicate& pred,
                                      std::uint64_t seed) {
  if (pred.kind == PredicateKind::Incoherent && kind == FreeOpKind::LocalFreeOp) {
    throw std::invalid_argument("local-free-op is not a free operation of the incoherent theory");
  }
  Rng rng(seed);
  FreeOperation op{kind, sig, {}};
  const long dim = sig.total();
  switch (kind) {
    case FreeOpKind::Identity:
      op.kraus.push_back(Matrix::Identity(dim, dim));
      break;
    case FreeOpKind::DiagonalUnitary:
    case FreeOpKind::Permutation: {
      Matrix acc = Matrix::Identity(1, 1);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
      for (std::size_t s = 0; s < sig.size(); ++s) {
        const int d = sig[s];
        Matrix local = Matrix::Zero(d, d);
        if (kind == FreeOpKind::DiagonalUnitary) {
          for (int i = 0; i < d; ++i) local(i, i) = std::polar(1.0, angle(rng));
        } else {
          std::vector<int> p(d);
          std::iota(p.begin(), p.end(), 0);
          std::shuffle(p.begin(), p.end(), rng);
          for (int i = 0; i < d; ++i) local(p[i], i) = 1.0;
        }
        acc = kron(acc, local);
      }
      op.kraus.push_back(std::move(acc));
      break;
    }
    case FreeOpKind::FullDephasing:
      for (long i = 0; i < dim; ++i) {
        Matrix k = Matrix::Zero(dim, dim);
        k(i, i) = 1.0;
        op.kraus.push_back(std::move(k));
      }
      break;
    case FreeOpKind::LocalFreeOp: {
      std::vector<Matrix> acc{Matrix::Identity(1, 1)};
      for (std::size_t s = 0; s < sig.size(); ++s) {
        const auto local = random_channel_kraus(sig[s], 2, rng);
        std::vector<Matrix> next;
        for (const auto& a : acc) {
          for (const auto& l : local) next.push_back(kron(a, l));
        }
        acc = std::move(next);
      }
      op.kraus = std::move(acc);
      break;
    }
  }

  // A single subsystem has no cut: every state is separable, nothing to probe.
  if (pred.kind == PredicateKind::PptSeparable && sig.size() < 2) return op;
  // Registration: sampled free states must stay free.
  const auto probe = free_state_sampler(pred, sig, 20, seed ^ 0x5eedULL);
  for (const auto& rho : probe) {
    if (pred.residual(op.apply(rho)) > pred.tol) {
      throw std::invalid_argument(to_string(kind) + " failed the free-set preservation check for " + pred.name());
    }
  }
  return op;
}

Matrix hadamard_rotation(const DimSignature& sig, int subsystem) {
  if (subsystem < 0 || static_cast<std::size_t>(subsystem) >= sig.size() || sig[subsystem] < 2) {
    throw DimensionError("hadamard_rotation: subsystem needs at least two levels");
  }
  Matrix acc = Matrix::Identity(1, 1);
  for (std::size_t s = 0; s < sig.size(); ++s) {
    Matrix local = Matrix::Identity(sig[s], sig[s]);
    if (static_cast<int>(s) == subsystem) {
      const double h = 1.0 / std::sqrt(2.0);
      local(0, 0) = h;
      local(0, 1) = h;
      local(1, 0) = h;
      local(1, 1) = -h;
    }
    acc = kron(acc, local);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Property suites

PropertyReport nrng_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed) {
  PropertyReport rep{"nrng:" + pred.name(), n, 0.0, kFreenessTolerance, true, seed, true, ""};
  const KrausSet ks = kraus_multiparty(spec);
  for (const auto& rho : free_state_sampler(pred, spec.input_signature(), n, seed)) {
    rep.worst_violation = std::max(rep.worst_violation, pred.residual(apply_channel(ks, rho)));
  }
  append_note(rep, necessary_only_note(pred, spec.output_signature()));
  rep.finalize();
  return rep;
}

PropertySuite theorem2_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed,
                             const std::optional<Matrix>& post_unitary) {
  PropertySuite suite{"theorem2:" + pred.name(), {}};
  PropertyReport a{"freeness_through_dilation", n, 0.0, kFreenessTolerance, true, seed, true, ""};
  PropertyReport b{"isometric_purity", 0, 0.0, 1e-10, true, seed, true, ""};
  const int cutoff = dilation_cutoff(spec);
  const DimSignature in_sig = spec.input_signature();
  if (post_unitary) {
    const long d = spec.output_signature().total();
    if (post_unitary->rows() != d || post_unitary->cols() != d) {
      throw DimensionError("theorem2_check: post-processing unitary does not match the output space");
    }
    a.note = "post-processed by a supplied unitary";
  }

  // Part (b) runs at a tighter cutoff so the truncated embedding is isometric
  // well below the purity tolerance.
  const ChannelSpec tight = ChannelSpec::certified(spec.local_dims, spec.accelerated, spec.accel, 1e-14);
  const int tight_cutoff = std::max(cutoff, dilation_cutoff(tight));
  auto purity_defect = [&](const DensityMatrix& rho) {
    const DilatedState ds = dilate(rho, spec, tight_cutoff);
    const std::size_t m = ds.vectors.size();
    double tr = 0.0, pur = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      tr += ds.weights[i] * ds.vectors[i].squaredNorm();
      for (std::size_t j = 0; j < m; ++j) {
        pur += ds.weights[i] * ds.weights[j] * std::norm(ds.vectors[i].dot(ds.vectors[j]));
      }
    }
    const double in_purity = (rho.data() * rho.data()).trace().real() / (rho.trace() * rho.trace());
    return std::abs(pur / (tr * tr) - in_purity);
  };

  const auto samples = free_state_sampler(pred, in_sig, n, seed);
  for (const auto& rho : samples) {
    DensityMatrix out = dilate_and_trace(rho, spec, cutoff);
    if (post_unitary) {
      Matrix rotated = (*post_unitary) * out.data() * post_unitary->adjoint();
      out = DensityMatrix(out.sig(), 0.5 * (rotated + rotated.adjoint()), out.target_trace());
    }
    a.worst_violation = std::max(a.worst_violation, pred.residual(out));
    b.worst_violation = std::max(b.worst_violation, purity_defect(rho));
    ++b.samples;
  }
  // Pure free states: every basis projector is free for both predicates.
  for (long i = 0; i < std::min<long>(in_sig.total(), n); ++i) {
    b.worst_violation = std::max(b.worst_violation, purity_defect(DensityMatrix::basis_projector(in_sig, i)));
    ++b.samples;
  }
  append_note(a, necessary_only_note(pred, spec.output_signature()));
  a.finalize();
  b.finalize();
  suite.checks = {a, b};
  return suite;
}

PropertyReport geometry_check(const ChannelSpec& spec, const FreeStatePredicate& pred, int n, std::uint64_t seed) {
  PropertyReport rep{"geometry:" + pred.name(), n, 0.0, kFreenessTolerance, true, seed, true, ""};
  const KrausSet ks = kraus_multiparty(spec);
  const auto first = free_state_sampler(pred, spec.input_signature(), n, seed);
  const auto second = free_state_sampler(pred, spec.input_signature(), n, seed + 1);
  Rng rng(seed + 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < n; ++s) {
    // Endpoints are included so the check also covers p in {0, 1}.
    const double p = s == 0 ? 0.0 : s == 1 ? 1.0 : unif(rng);
    const DensityMatrix mix(spec.input_signature(), p * first[s].data() + (1 - p) * second[s].data());
    const DensityMatrix out = apply_channel(ks, mix);
    const Matrix lin = out.data() - p * apply_channel(ks, first[s]).data() - (1 - p) * apply_channel(ks, second[s]).data();
    rep.worst_violation = std::max({rep.worst_violation, pred.residual(out), max_norm(lin)});
  }
  append_note(rep, necessary_only_note(pred, spec.output_signature()));
  rep.finalize();
  return rep;
}

PropertyReport composition_check(const ChannelSpec& spec, const FreeOperation& free_op, CompositionOrder order,
                                 const FreeStatePredicate& pred, int n, std::uint64_t seed) {
  const bool pre = order == CompositionOrder::Pre;
  const DimSignature expected = pre ? spec.input_signature() : spec.output_signature();
  if (!(free_op.sig == expected)) {
    throw DimensionError("composition_check: free operation acts on " + free_op.sig.str() + " but the " +
                         (pre ? "input" : "output") + " space is " + expected.str());
  }
  PropertyReport rep{std::string("composition:") + (pre ? "pre" : "post") + ":" + to_string(free_op.kind) + ":" +
                         pred.name(),
                     n, 0.0, kFreenessTolerance, true, seed, true, ""};
  const KrausSet ks = kraus_multiparty(spec);
  for (const auto& rho : free_state_sampler(pred, spec.input_signature(), n, seed)) {
    const DensityMatrix out = pre ? apply_channel(ks, free_op.apply(rho)) : free_op.apply(apply_channel(ks, rho));
    rep.worst_violation = std::max(rep.worst_violation, pred.residual(out));
  }
  append_note(rep, necessary_only_note(pred, spec.output_signature()));
  rep.finalize();
  return rep;
}

PropertyReport convex_mixture_check(const ChannelSpec& spec, const FreeOperation& free_op, double p,
                                    const FreeStatePredicate& pred, int n, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("convex_mixture_check: p must lie in [0, 1]");
  if (!(free_op.sig == spec.input_signature())) {
    throw DimensionError("convex_mixture_check: free operation must act on the input space");
  }
  char label[64];
  std::snprintf(label, sizeof label, "convex_mixture:p=%g:", p);
  PropertyReport rep{std::string(label) + to_string(free_op.kind) + ":" + pred.name(), n, 0.0, kFreenessTolerance,
                     true, seed, true, "embedding: zero-padding"};

  const KrausSet ks = kraus_multiparty(spec);
  const DimSignature out_sig = spec.output_signature();
  const Matrix pad = padding_isometry(spec.input_signature(), out_sig.dims());
  std::vector<FockOperator> ops;
  if (p > 0.0) {
    for (const auto& a : ks.ops()) ops.emplace_back(std::sqrt(p) * a.data());
  }
  if (p < 1.0) {
    for (const auto& f : free_op.kraus) ops.emplace_back(std::sqrt(1.0 - p) * (pad * f));
  }
  const KrausSet mixture = KrausSet::from_operators(std::move(ops), spec.input_signature(), out_sig);

  // Completeness may only fall short by the channel's share of the truncation budget.
  const double budget = p * spec.certified_tail() + 1e-12;
  const double cptp_violation = std::max(0.0, mixture.completeness_defect() - budget);
  rep.worst_violation = cptp_violation > 0 ? cptp_violation + rep.tolerance : 0.0;

  for (const auto& rho : free_state_sampler(pred, spec.input_signature(), n, seed)) {
    rep.worst_violation = std::max(rep.worst_violation, pred.residual(apply_channel(mixture, rho)));
  }
  append_note(rep, necessary_only_note(pred, out_sig));
  rep.finalize();
  return rep;
}

PropertyReport tensor_composition_check(const FreeOperation& op_a, const ChannelSpec& spec_b,
                                        const FreeStatePredicate& pred_joint, int n, std::uint64_t seed) {
  PropertyReport rep{"tensor_composition:" + to_string(op_a.kind) + ":" + pred_joint.name(), n, 0.0,
                     kFreenessTolerance, true, seed, true, ""};
  const KrausSet ks_b = kraus_multiparty(spec_b);
  const DimSignature in_sig = op_a.sig.concat(spec_b.input_signature());
  const DimSignature out_sig = op_a.sig.concat(spec_b.output_signature());

  std::vector<FockOperator> joint;
  for (const auto& f : op_a.kraus) {
    for (const auto& a : ks_b.ops()) joint.emplace_back(kron(f, a.data()));
  }
  const KrausSet ks = KrausSet::from_operators(std::move(joint), in_sig, out_sig);

  // Marginal predicate on A: the joint cut restricted to A's subsystems.
  const int na = static_cast<int>(op_a.sig.size());
  std::vector<int> a_idx(na);
  std::iota(a_idx.begin(), a_idx.end(), 0);
  std::optional<FreeStatePredicate> marginal;
  if (pred_joint.kind == PredicateKind::Incoherent) {
    marginal = FreeStatePredicate::incoherent(pred_joint.tol);
  } else {
    std::vector<int> b_in_a;
    for (int b : pred_joint.bipartition) {
      if (b < na) b_in_a.push_back(b);
    }
    if (!b_in_a.empty() && static_cast<int>(b_in_a.size()) < na) {
      marginal = FreeStatePredicate::ppt(b_in_a, pred_joint.tol);
    }
  }
  if (!marginal) append_note(rep, "closure on A holds trivially (A lies on one side of the cut)");

  for (const auto& rho : free_state_sampler(pred_joint, in_sig, n, seed)) {
    if (marginal) {
      const double closure = marginal->residual(partial_trace(rho, a_idx));
      rep.worst_violation = std::max(rep.worst_violation, closure);
    }
    rep.worst_violation = std::max(rep.worst_violation, pred_joint.residual(apply_channel(ks, rho)));
  }
  append_note(rep, necessary_only_note(pred_joint, out_sig));
  rep.finalize();
  return rep;
}

PropertyReport monotonicity_check(const ChannelSpec& spec, const std::string& quantifier,
                                  const std::optional<FreeOperation>& free_op, int n, std::uint64_t seed,
                                  std::vector<int> bipartition) {
  static const std::vector<std::string> allowed = {"l1_coherence", "relative_entropy_coherence", "negativity",
                                                   "robustness_coherence_qubit"};
  if (std::find(allowed.begin(), allowed.end(), quantifier) == allowed.end()) {
    throw std::invalid_argument("monotonicity_check: unsupported quantifier " + quantifier);
  }
  const DimSignature in_sig = spec.input_signature();
  const bool robustness = quantifier == "robustness_coherence_qubit";
  if (robustness && in_sig.total() != 2) {
    throw UnsupportedDimensionError("monotonicity_check: robustness is only supported on qubit inputs");
  }
  if (quantifier == "negativity") {
    if (spec.n_parties() < 2) throw DimensionError("monotonicity_check: negativity needs at least two parties");
    if (bipartition.empty()) bipartition = spec.accelerated;
    if (static_cast<int>(bipartition.size()) >= spec.n_parties()) {
      throw DimensionError("monotonicity_check: bipartition must leave a nonempty complement");
    }
  }
  if (free_op && !(free_op->sig == in_sig)) throw DimensionError("monotonicity_check: free operation must act on the input");

  PropertyReport rep{"monotonicity:" + quantifier + (free_op ? ":" + to_string(free_op->kind) : ""), n, 0.0,
                     kMonotoneTolerance, true, seed, true, ""};
  if (robustness) rep.note = "outputs above qubit size use the certified witness upper bound";

  const KrausSet ks = kraus_multiparty(spec);
  auto q = [&](const DensityMatrix& rho) {
    if (robustness && rho.side() != 2) return robustness_coherence_upper_bound(rho);
    return evaluate_measure(quantifier, rho, bipartition);
  };
  auto evolve = [&](const DensityMatrix& rho) {
    const DensityMatrix in = free_op ? free_op->apply(rho) : rho;
    return apply_channel(ks, in).normalized();
  };

  Rng rng(seed);
  std::uniform_int_distribution<int> parts(2, 4);
  double worst_single = 0.0, worst_convex = 0.0;
  for (int s = 0; s < n; ++s) {
    const DensityMatrix rho = random_state(in_sig, rng);
    worst_single = std::max(worst_single, q(evolve(rho)) - q(rho));

    const int m = parts(rng);
    const auto w = random_weights(m, rng);
    Matrix mix = Matrix::Zero(in_sig.total(), in_sig.total());
    double avg = 0.0;
    for (int i = 0; i < m; ++i) {
      const DensityMatrix ri = random_state(in_sig, rng);
      mix += w[i] * ri.data();
      avg += w[i] * q(ri);
    }
    const DensityMatrix sigma(in_sig, 0.5 * (mix + mix.adjoint()));
    worst_convex = std::max(worst_convex, q(evolve(sigma)) - avg);
  }
  rep.worst_violation = std::max({0.0, worst_single, worst_convex});
  char buf[160];
  std::snprintf(buf, sizeof buf, "max single-state increase %.3e, max convex-decomposition excess %.3e", worst_single,
                worst_convex);
  append_note(rep, buf);
  rep.finalize();
  return rep;
}

PropertyReport contraction_check(const ChannelSpec& spec, const std::string& distance, int n, std::uint64_t seed) {
  double (*dist)(const DensityMatrix&, const DensityMatrix&) = nullptr;
  if (distance == "trace") {
    dist = trace_distance;
  } else if (distance == "bures") {
    dist = bures_distance;
  } else if (distance == "relative-entropy") {
    dist = relative_entropy;
  } else if (distance == "hilbert-schmidt") {
    dist = hilbert_schmidt_distance;
  } else {
    throw std::invalid_argument("contraction_check: unknown distance " + distance);
  }
  const bool report_only = distance == "hilbert-schmidt";
  PropertyReport rep{"contraction:" + distance, n, 0.0, kContractionSlack, true, seed, !report_only, ""};

  const KrausSet ks = kraus_multiparty(spec);
  const DimSignature sig = spec.input_signature();
  Rng rng(seed);
  double worst_ratio = 0.0;
  for (int s = 0; s < n; ++s) {
    // Relative entropy needs supp(rho) within supp(sigma): use full-rank draws.
    const DensityMatrix rho = distance == "relative-entropy" ? random_mixed_state(sig, rng) : random_state(sig, rng);
    const DensityMatrix sigma = distance == "relative-entropy" ? random_mixed_state(sig, rng) : random_state(sig, rng);
    const double before = dist(rho, sigma);
    const double after = dist(apply_channel(ks, rho).normalized(), apply_channel(ks, sigma).normalized());
    if (!std::isfinite(before)) continue;
    rep.worst_violation = std::max(rep.worst_violation, after - before);
    if (before > 0) worst_ratio = std::max(worst_ratio, after / before);
  }
  rep.worst_violation = std::max(0.0, rep.worst_violation);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%smax ratio D(E rho, E sigma)/D(rho, sigma) = %.6f", report_only ? "report-only; " : "",
                worst_ratio);
  rep.note = buf;
  rep.finalize();
  return rep;
}

}  // namespace unruh
