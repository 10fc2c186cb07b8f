#include "unruh/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace unruh {

namespace {

void require_same_signature(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.sig() == b.sig())) throw DimensionError("signature mismatch: " + a.sig().str() + " vs " + b.sig().str());
}

double entropy_of(const RealVector& eig) {
  double s = 0.0;
  for (long i = 0; i < eig.size(); ++i) {
    const double p = eig(i);
    if (p > kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}

Matrix psd_sqrt(const Matrix& m) {
  const Eigensystem es = hermitian_eigensystem(m);
  RealVector root = es.values.cwiseMax(0.0).cwiseSqrt();
  return es.vectors * root.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of(hermitian_eigenvalues(rho.data())); }

double l1_coherence(const DensityMatrix& rho) {
  const Matrix& m = rho.data();
  return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double relative_entropy_coherence(const DensityMatrix& rho) {
  const RealVector diag = rho.data().diagonal().real();
  return std::max(0.0, entropy_of(diag) - von_neumann_entropy(rho));
}

double negativity(const DensityMatrix& rho, std::span<const int> bipartition) {
  if (bipartition.empty()) throw DimensionError("negativity: empty bipartition");
  const Matrix pt = partial_transpose(rho, bipartition);
  const double norm1 = hermitian_eigenvalues(0.5 * (pt + pt.adjoint())).cwiseAbs().sum();
  return std::max(0.0, 0.5 * (norm1 - rho.trace()));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_signature(rho, sigma);
  const Matrix diff = rho.data() - sigma.data();
  return 0.5 * hermitian_eigenvalues(0.5 * (diff + diff.adjoint())).cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_signature(rho, sigma);
  // Nuclear norm of sqrt(rho) sqrt(sigma): no square roots of rounding-level eigenvalues.
  const Matrix prod = psd_sqrt(rho.data()) * psd_sqrt(sigma.data());
  const double root_f = Eigen::JacobiSVD<Matrix>(prod).singularValues().sum();
  return root_f * root_f;
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double root_f = std::sqrt(fidelity(rho, sigma));
  return std::sqrt(std::max(0.0, rho.trace() + sigma.trace() - 2.0 * root_f));
}

double hilbert_schmidt_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_signature(rho, sigma);
  return (rho.data() - sigma.data()).norm();
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_signature(rho, sigma);
  const Eigensystem es = hermitian_eigensystem(sigma.data());
  // rho expressed in sigma's eigenbasis; only its diagonal enters Tr rho log sigma.
  const Matrix rot = es.vectors.adjoint() * rho.data() * es.vectors;
  double cross = 0.0;
  double weight_off_support = 0.0;
  for (long i = 0; i < es.values.size(); ++i) {
    const double w = rot(i, i).real();
    if (es.values(i) > kEntropyCutoff) {
      cross += w * std::log2(es.values(i));
    } else {
      weight_off_support += std::max(0.0, w);
    }
  }
  if (weight_off_support > 1e-12) return std::numeric_limits<double>::infinity();
  const RealVector rev = hermitian_eigenvalues(rho.data());
  double self = 0.0;
  for (long i = 0; i < rev.size(); ++i) {
    if (rev(i) > kEntropyCutoff) self += rev(i) * std::log2(rev(i));
  }
  return std::max(0.0, self - cross);
}

// ---------------------------------------------------------------------------
// Robustness of coherence

namespace {

struct BlochPoint {
  double u, theta, phi;
};

// tau_01 for Bloch vector u (sin t cos p, sin t sin p, cos t), u clamped to [0, 1].
cplx tau_offdiag(const BlochPoint& b) {
  const double u = std::clamp(b.u, 0.0, 1.0);
  const double x = u * std::sin(b.theta) * std::cos(b.phi);
  const double y = u * std::sin(b.theta) * std::sin(b.phi);
  return cplx(x, -y) / 2.0;
}

double mixture_offdiag(cplx c, double s, const BlochPoint& b) { return std::abs(c + s * tau_offdiag(b)); }

// Nelder-Mead over (u, theta, phi).
BlochPoint nelder_mead(cplx c, double s, BlochPoint start, double step) {
  using P = std::array<double, 3>;
  auto f = [&](const P& p) { return mixture_offdiag(c, s, {p[0], p[1], p[2]}); };
  std::array<P, 4> simplex;
  simplex[0] = {start.u, start.theta, start.phi};
  for (int i = 0; i < 3; ++i) {
    simplex[i + 1] = simplex[0];
    simplex[i + 1][i] += step;
  }
  std::array<double, 4> vals;
  for (int i = 0; i < 4; ++i) vals[i] = f(simplex[i]);

  for (int iter = 0; iter < 2000; ++iter) {
    std::array<int, 4> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[3], second = order[2];
    if (vals[worst] - vals[best] < 1e-16 && iter > 10) break;
    P centroid{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[order[i]][d] / 3.0;
    }
    auto along = [&](double t) {
      P p;
      for (int d = 0; d < 3; ++d) p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      return p;
    };
    const P reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const P expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        vals[worst] = fe;
      } else {
        simplex[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      simplex[worst] = reflected;
      vals[worst] = fr;
    } else {
      const P contracted = along(0.5);
      const double fc = f(contracted);
      if (fc < vals[worst]) {
        simplex[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          const int k = order[i];
          for (int d = 0; d < 3; ++d) simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
          vals[k] = f(simplex[k]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  return {simplex[best][0], simplex[best][1], simplex[best][2]};
}

// Smallest residual |c + s tau_01| over the Bloch ball.
double best_residual(cplx c, double s) {
  BlochPoint best{1.0, M_PI / 2, 0.0};
  double best_val = mixture_offdiag(c, s, best);
  for (int iu = 1; iu <= 4; ++iu) {
    for (int it = 0; it <= 8; ++it) {
      for (int ip = 0; ip < 16; ++ip) {
        const BlochPoint b{iu / 4.0, it * M_PI / 8, ip * M_PI / 8};
        const double v = mixture_offdiag(c, s, b);
        if (v < best_val) {
          best_val = v;
          best = b;
        }
      }
    }
  }
  for (double step : {0.2, 0.02, 1e-3}) {
    best = nelder_mead(c, s, best, step);
  }
  return mixture_offdiag(c, s, best);
}

}  // namespace

double robustness_coherence_qubit(const DensityMatrix& rho) {
  if (rho.side() != 2) {
    throw UnsupportedDimensionError("robustness_coherence_qubit: only single-qubit states are supported");
  }
  const cplx c = rho.data()(0, 1) / rho.trace();
  if (std::abs(c) < 1e-15) return 0.0;
  const double feasible_tol = 1e-12;
  auto feasible = [&](double s) { return best_residual(c, s) <= feasible_tol; };

  double hi = 1.0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("robustness_coherence_qubit: search failed to find a feasible point");
  }
  double lo = 0.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

double robustness_coherence_upper_bound(const DensityMatrix& rho) {
  const Matrix m = rho.data() / rho.trace();
  const long n = m.rows();
  Matrix off = m;
  off.diagonal().setZero();
  const double s = off.cwiseAbs().sum();
  if (s < 1e-15) return 0.0;
  // tau = (L - off) / s with L_ii = sum_j |m_ij|: diagonally dominant, hence PSD.
  Matrix tau = -off;
  for (long i = 0; i < n; ++i) tau(i, i) = off.row(i).cwiseAbs().sum();
  tau /= s;
  const double min_eig = hermitian_eigenvalues(0.5 * (tau + tau.adjoint())).minCoeff();
  Matrix mixed = (m + s * tau) / (1.0 + s);
  mixed.diagonal().setZero();
  if (min_eig < -1e-12 || std::abs(tau.trace().real() - 1.0) > 1e-12 || max_norm(mixed) > 1e-12) {
    throw std::runtime_error("robustness_coherence_upper_bound: witness construction failed");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Named measures

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names = {"l1_coherence", "relative_entropy_coherence", "negativity",
                                                 "von_neumann_entropy", "robustness_coherence_qubit"};
  return names;
}

double evaluate_measure(const std::string& name, const DensityMatrix& rho, std::span<const int> bipartition) {
  double v;
  if (name == "l1_coherence") {
    v = l1_coherence(rho);
  } else if (name == "relative_entropy_coherence") {
    v = relative_entropy_coherence(rho);
  } else if (name == "negativity") {
    v = negativity(rho, bipartition);
  } else if (name == "von_neumann_entropy") {
    v = von_neumann_entropy(rho);
  } else if (name == "robustness_coherence_qubit") {
    v = robustness_coherence_qubit(rho);
  } else {
    throw std::invalid_argument("unknown measure: " + name);
  }
  if (v < 0.0 && v >= -1e-12) v = 0.0;
  return v;
}

MeasureReport measure_report(const DensityMatrix& rho, const std::vector<std::string>& names,
                             std::span<const int> bipartition, std::string state_id) {
  MeasureReport report{std::move(state_id), {}};
  for (const auto& n : names) report.values[n] = evaluate_measure(n, rho, bipartition);
  return report;
}

}  // namespace unruh
