#include "unruh/dilation.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "unruh/measures.hpp"

namespace unruh {

TwoModeState rindler_expand(int level, double r, int cutoff) {
  if (level < 0 || r < 0 || cutoff < level) throw std::invalid_argument("rindler_expand: need 0 <= level <= cutoff, r >= 0");
  TwoModeState s;
  s.r = r;
  s.level = level;
  s.cutoff = cutoff;
  s.amplitudes = Matrix::Zero(cutoff + 1, cutoff + 1);
  const double t = std::tanh(r);
  const double lc = std::log(std::cosh(r));
  // sqrt((n+l)!/(n! l!)) tanh^n / cosh^(l+1), built iteratively in n.
  double amp = std::exp(-(level + 1) * lc);
  for (int n = 0; n + level <= cutoff; ++n) {
    if (n > 0) amp *= t * std::sqrt(static_cast<double>(n + level) / n);
    s.amplitudes(n + level, n) = amp;
    if (amp == 0.0) break;
  }
  s.declared_tail = truncation_tail(r, level, cutoff - level);
  return s;
}

FockOperator squeezing_operator(double r, int cutoff) {
  if (r < 0 || cutoff < 1) throw std::invalid_argument("squeezing_operator: need r >= 0, cutoff >= 1");
  const int n = cutoff + 1;
  Matrix s = Matrix::Zero(static_cast<long>(n) * n, static_cast<long>(n) * n);
  // The generator conserves n_I - n_II, so the truncated exponential is the
  // direct sum of exponentials of its tridiagonal blocks.
  for (int delta = -cutoff; delta <= cutoff; ++delta) {
    std::vector<std::pair<int, int>> states;
    for (int a = 0; a < n; ++a) {
      const int b = a - delta;
      if (b >= 0 && b < n) states.emplace_back(a, b);
    }
    const int m = static_cast<int>(states.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j + 1 < m; ++j) {
      const auto [a, b] = states[j];
      const double c = r * std::sqrt(static_cast<double>(a + 1) * (b + 1));
      g(j + 1, j) = c;
      g(j, j + 1) = -c;
    }
    const Eigen::MatrixXd e = g.exp();
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        s(static_cast<long>(states[i].first) * n + states[i].second,
          static_cast<long>(states[j].first) * n + states[j].second) = e(i, j);
      }
    }
  }
  return FockOperator(std::move(s));
}

Matrix dilation_isometry(double r, int d, int cutoff, EmbeddingMethod method) {
  if (d < 1 || cutoff < d - 1) throw std::invalid_argument("dilation_isometry: cutoff must be >= d - 1");
  const long n = cutoff + 1;
  Matrix v(n * n, d);
  if (method == EmbeddingMethod::ClosedForm) {
    for (int l = 0; l < d; ++l) {
      const TwoModeState s = rindler_expand(l, r, cutoff);
      for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) v(a * n + b, l) = s.amplitudes(a, b);
      }
    }
  } else {
    const FockOperator s = squeezing_operator(r, cutoff);
    for (int l = 0; l < d; ++l) v.col(l) = s.data().col(static_cast<long>(l) * n);
  }
  return v;
}

int dilation_cutoff(const ChannelSpec& spec) {
  int c = 1;
  for (int i = 0; i < spec.n_accelerated(); ++i) {
    c = std::max(c, spec.local_dims[spec.accelerated[i]] - 1 + spec.cutoffs[i]);
  }
  return c;
}

DilatedState dilate(const DensityMatrix& rho, const ChannelSpec& spec, int cutoff, EmbeddingMethod method) {
  spec.validate();
  if (!(rho.sig() == spec.input_signature())) throw DimensionError("dilate: state signature does not match spec");
  for (int i = 0; i < spec.n_accelerated(); ++i) {
    if (cutoff < spec.local_dims[spec.accelerated[i]] - 1 + spec.cutoffs[i]) {
      throw std::invalid_argument("dilate: cutoff must be >= d - 1 + K for every accelerated party");
    }
  }

  std::vector<Matrix> isometries(spec.n_parties());
  for (int i = 0; i < spec.n_accelerated(); ++i) {
    const int p = spec.accelerated[i];
    isometries[p] = dilation_isometry(spec.accel[i].r, spec.local_dims[p], cutoff, method);
  }

  const Eigensystem es = hermitian_eigensystem(rho.data());
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  if (es.values(0) < -tol::psd * scale) throw std::invalid_argument("dilate: input state is not positive semidefinite");

  DilatedState out;
  bool sig_set = false;
  for (long c = es.values.size() - 1; c >= 0; --c) {
    const double w = es.values(c);
    if (w <= 1e-15 * scale) continue;
    Vector psi = es.vectors.col(c);
    DimSignature sig = rho.sig();
    // Highest party first so lower slot indices stay valid after each split.
    for (int p = spec.n_parties() - 1; p >= 0; --p) {
      if (spec.accelerated_slot(p) < 0) continue;
      psi = apply_on_subsystem(psi, sig, p, isometries[p]);
      auto dims = sig.dims();
      dims[p] = cutoff + 1;
      dims.insert(dims.begin() + p + 1, cutoff + 1);
      sig = DimSignature(std::move(dims));
    }
    if (!sig_set) {
      out.sig = sig;
      sig_set = true;
    }
    out.weights.push_back(w);
    out.vectors.push_back(std::move(psi));
  }

  int slot = 0;
  for (int p = 0; p < spec.n_parties(); ++p) {
    if (spec.accelerated_slot(p) >= 0) {
      out.region_one_slots.push_back(slot);
      out.region_two_slots.push_back(slot + 1);
      slot += 2;
    } else {
      ++slot;
    }
  }
  if (!sig_set) {
    std::vector<int> dims;
    for (int p = 0; p < spec.n_parties(); ++p) {
      if (spec.accelerated_slot(p) >= 0) {
        dims.push_back(cutoff + 1);
        dims.push_back(cutoff + 1);
      } else {
        dims.push_back(spec.local_dims[p]);
      }
    }
    out.sig = DimSignature(std::move(dims));
  }
  return out;
}

DensityMatrix dilate_and_trace(const DensityMatrix& rho, const ChannelSpec& spec, int cutoff, EmbeddingMethod method) {
  const DilatedState ds = dilate(rho, spec, cutoff, method);

  std::vector<int> keep;
  for (int s = 0; s < static_cast<int>(ds.sig.size()); ++s) {
    if (std::find(ds.region_two_slots.begin(), ds.region_two_slots.end(), s) == ds.region_two_slots.end()) {
      keep.push_back(s);
    }
  }
  const DimSignature kept_sig = ds.sig.subset(keep);
  const DimSignature out_sig = spec.output_signature();
  std::vector<int> perm = keep;
  for (int s : ds.region_two_slots) perm.push_back(s);

  // Rows of the (kept, traced) reshape whose Rindler-I digits stay below d + K.
  std::vector<long> rows;
  std::vector<int> digits(out_sig.size(), 0);
  for (long i = 0; i < out_sig.total(); ++i) {
    long idx = 0;
    for (std::size_t s = 0; s < out_sig.size(); ++s) idx = idx * kept_sig[s] + digits[s];
    rows.push_back(idx);
    for (int s = static_cast<int>(out_sig.size()) - 1; s >= 0; --s) {
      if (++digits[s] < out_sig[s]) break;
      digits[s] = 0;
    }
  }

  const long dk = kept_sig.total();
  const long dt = ds.sig.total() / dk;
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix acc = Matrix::Zero(out_sig.total(), out_sig.total());
  RowMat sel(static_cast<long>(rows.size()), dt);
  for (std::size_t c = 0; c < ds.vectors.size(); ++c) {
    const Vector permuted = permute_subsystems(ds.vectors[c], ds.sig, perm);
    const Eigen::Map<const RowMat> m(permuted.data(), dk, dt);
    for (std::size_t i = 0; i < rows.size(); ++i) sel.row(static_cast<long>(i)) = m.row(rows[i]);
    acc.noalias() += ds.weights[c] * (sel * sel.adjoint());
  }
  acc = 0.5 * (acc + acc.adjoint().eval());
  const double tr = acc.trace().real();
  return DensityMatrix(out_sig, std::move(acc), tr);
}

double oracle_compare(const DensityMatrix& rho, const ChannelSpec& spec) {
  const KrausSet ks = kraus_multiparty(spec);
  const DensityMatrix kraus_out = apply_channel(ks, rho);
  const DensityMatrix dilated = dilate_and_trace(rho, spec, dilation_cutoff(spec));
  return trace_distance(kraus_out, dilated);
}

}  // namespace unruh
