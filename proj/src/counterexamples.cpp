#include "unruh/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unruh/channel.hpp"

namespace unruh {

Vector bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

Vector bell_psi_plus() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

double ahn_trace_formula(double r) {
  if (r < 0) throw std::invalid_argument("ahn_trace_formula: r must be >= 0");
  const double c2 = std::cosh(r) * std::cosh(r);
  return 0.5 * (1.0 / c2 + c2);
}

double ahn_series_tail(double r, int cutoff) {
  const double t = std::tanh(r);
  const double x = t * t;
  if (x == 0.0) return 0.0;
  const double c2 = std::cosh(r) * std::cosh(r);
  const double m = cutoff + 1.0;  // first dropped index
  const double xm = std::pow(x, m);
  // |00>: x^n / cosh^4, geometric remainder x^m / (1 - x) / cosh^4 = x^m / cosh^2.
  const double zero = xm / c2;
  // |11>: (n + 1) x^n / cosh^2, remainder x^m ((m+1)/(1-x) + x/(1-x)^2) / cosh^2.
  const double one = xm * ((m + 1.0) + x * c2);
  return 0.5 * (zero + one);
}

int ahn_cutoff(double r, double tail, int budget) {
  if (r < 0) throw std::invalid_argument("ahn_cutoff: r must be >= 0");
  for (int c = 0; c <= budget; ++c) {
    if (ahn_series_tail(r, c) < tail) return c;
  }
  throw BudgetError("ahn_cutoff: r = " + std::to_string(r) + " needs more than " + std::to_string(budget) +
                    " terms for the requested tail");
}

namespace {

// Amplitude of A_n |a b>, landing on |a>|n+b>_I|n>_II.
double ahn_amplitude(double r, int n, int a, int b) {
  const double t = std::tanh(r), c = std::cosh(r);
  double amp = std::pow(t, n) / (c * c);
  if (a == 1) amp *= c;
  if (b == 1) amp *= std::sqrt(n + 1.0);
  return amp;
}

long out_index(int a, int nI, int nII, int cutoff) {
  return (static_cast<long>(a) * (cutoff + 2) + nI) * (cutoff + 1) + nII;
}

}  // namespace

AhnKrausSet ahn_operators(double r, int cutoff) {
  if (r < 0 || cutoff < 0) throw std::invalid_argument("ahn_operators: need r >= 0, cutoff >= 0");
  AhnKrausSet s{r, cutoff, {}};
  const long dout = s.output_signature().total();
  if (4.0 * dout * (cutoff + 1) > 16e6) throw BudgetError("ahn_operators: dense operator family too large; use ahn_apply");
  for (int n = 0; n <= cutoff; ++n) {
    Matrix op = Matrix::Zero(dout, 4);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) op(out_index(a, n + b, n, cutoff), 2 * a + b) = ahn_amplitude(r, n, a, b);
    }
    s.ops.push_back(std::move(op));
  }
  return s;
}

DensityMatrix ahn_apply(const Vector& psi, double r, int cutoff) {
  if (psi.size() != 4) throw DimensionError("ahn_apply: input must be a two-qubit vector");
  if (r < 0 || cutoff < 0) throw std::invalid_argument("ahn_apply: need r >= 0, cutoff >= 0");
  // Different n land on orthogonal region-II states, so tracing II leaves
  // Sum_n |phi_n><phi_n| with phi_n the (A, I) part of A_n |psi>.
  const int dI = cutoff + 2;
  Matrix phi = Matrix::Zero(2L * dI, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) phi(static_cast<long>(a) * dI + n + b, n) += ahn_amplitude(r, n, a, b) * psi(2 * a + b);
    }
  }
  Matrix acc = phi * phi.adjoint();
  const double tr = acc.trace().real();
  return DensityMatrix(DimSignature{2, dI}, std::move(acc), tr);
}

DensityMatrix ahn_apply(double r, int cutoff) { return ahn_apply(bell_phi_plus(), r, cutoff); }

std::vector<AhnRow> side_by_side_report(const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw std::invalid_argument("side_by_side_report: empty grid");
  std::vector<AhnRow> rows;
  auto make_row = [](const std::string& name, const Vector& psi, double r, bool with_formula) {
    AhnRow row;
    row.state = name;
    row.r = r;
    row.ahn_cutoff = ahn_cutoff(r);
    const double series_tail = ahn_series_tail(r, row.ahn_cutoff);
    row.ahn_trace = ahn_apply(psi, r, row.ahn_cutoff).trace();
    row.formula = with_formula ? ahn_trace_formula(r) : std::numeric_limits<double>::quiet_NaN();
    row.deviation = std::abs(row.ahn_trace - 1.0);

    const ChannelSpec spec = ChannelSpec::certified({2, 2}, {1}, std::vector<double>{r});
    row.unruh_cutoff = spec.cutoffs[0];
    row.unruh_tail = spec.certified_tail();
    const DensityMatrix out = apply_channel(kraus_multiparty(spec), DensityMatrix::from_pure(DimSignature{2, 2}, psi));
    row.unruh_deficit = 1.0 - out.trace();
    row.verdict = row.deviation > std::max(1e-9, series_tail) ? "non-trace-preserving" : "trace-preserving";
    return row;
  };
  for (double r : r_grid) rows.push_back(make_row("bell-phi-plus", bell_phi_plus(), r, true));
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  rows.push_back(make_row("bell-psi-plus", bell_psi_plus(), r_max, false));
  return rows;
}

}  // namespace unruh
