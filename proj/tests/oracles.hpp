#pragma once

// Slow, loop-based reference implementations used as test oracles. They share
// no code with the library beyond the matrix types.

#include <cmath>
#include <vector>

#include "unruh/fock.hpp"

namespace oracle {

using unruh::cplx;
using unruh::Matrix;
using unruh::Vector;

inline std::vector<int> digits_of(long index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    d[s] = static_cast<int>(index % dims[s]);
    index /= dims[s];
  }
  return d;
}

inline long index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
  long idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + digits[s];
  return idx;
}

inline long product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
  std::vector<int> kdims;
  for (int k : keep) kdims.push_back(dims[k]);
  const long dk = product(kdims);
  Matrix out = Matrix::Zero(dk, dk);
  const long n = product(dims);
  for (long i = 0; i < n; ++i) {
    const auto di = digits_of(i, dims);
    for (long j = 0; j < n; ++j) {
      const auto dj = digits_of(j, dims);
      bool traced_equal = true;
      for (std::size_t s = 0; s < dims.size() && traced_equal; ++s) {
        bool kept = false;
        for (int k : keep) kept |= (k == static_cast<int>(s));
        if (!kept && di[s] != dj[s]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::vector<int> ki, kj;
      for (int k : keep) {
        ki.push_back(di[k]);
        kj.push_back(dj[k]);
      }
      out(index_of(ki, kdims), index_of(kj, kdims)) += rho(i, j);
    }
  }
  return out;
}

// Output slot s holds input subsystem perm[s].
inline Matrix permute(const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& perm) {
  std::vector<int> ndims;
  for (int p : perm) ndims.push_back(dims[p]);
  const long n = product(dims);
  Matrix out(n, n);
  for (long i = 0; i < n; ++i) {
    const auto di = digits_of(i, dims);
    for (long j = 0; j < n; ++j) {
      const auto dj = digits_of(j, dims);
      std::vector<int> ni, nj;
      for (int p : perm) {
        ni.push_back(di[p]);
        nj.push_back(dj[p]);
      }
      out(index_of(ni, ndims), index_of(nj, ndims)) = rho(i, j);
    }
  }
  return out;
}

inline Matrix partial_transpose(const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& sub) {
  const long n = product(dims);
  Matrix out(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      auto di = digits_of(i, dims);
      auto dj = digits_of(j, dims);
      for (int s : sub) std::swap(di[s], dj[s]);
      out(index_of(di, dims), index_of(dj, dims)) = rho(i, j);
    }
  }
  return out;
}

// Binomial coefficient through lgamma, independent of the library's recurrences.
inline double binom(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Single-mode Kraus element <n+k| A_k |n> written straight from the closed form.
inline double kraus_entry(double r, int k, int n) {
  return std::sqrt(binom(n + k, k)) * std::pow(std::tanh(r), k) / std::pow(std::cosh(r), n + 1);
}

// Lost weight for input |l> with Kraus indices 0..K, summed term by term from
// the far end of the series backwards.
inline double tail_by_summation(double r, int l, int K) {
  const double x = std::tanh(r) * std::tanh(r);
  const double c = 1.0 / std::pow(std::cosh(r), 2 * (l + 1));
  double sum = 0.0;
  for (int k = K + 20000; k > K; --k) sum += binom(k + l, l) * std::pow(x, k) * c;
  return sum;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline double trace_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle
