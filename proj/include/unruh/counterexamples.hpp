#pragma once

// The earlier Kraus family for the Unruh channel, kept only to show that it is
// not trace preserving on |Phi+>. Operators act on a two-qubit input (A, B);
// B is embedded into Rindler modes (I, II):
//
//   A_n = (1/sqrt(n!)) tanh^n r / cosh^2 r (cosh r)^{n_A} (x) (b_I^dag)^n
//
// with region II carrying |n>. On basis states this gives
//   A_n |a b> = tanh^n r / cosh^2 r cosh^a r sqrt(C(n+b, b)) |a>|n+b>_I|n>_II.

#include <string>
#include <vector>

#include "unruh/fock.hpp"

namespace unruh {

inline constexpr int kAhnCutoffBudget = 600;

struct AhnKrausSet {
  double r = 0.0;
  int cutoff = 0;            // operators n = 0..cutoff
  std::vector<Matrix> ops;   // each (2 * (cutoff+2) * (cutoff+1)) x 4, layout (A, I, II)

  DimSignature output_signature() const { return DimSignature{2, cutoff + 2, cutoff + 1}; }
};

/// Smallest cutoff whose dropped series weight on |Phi+> is below `tail`.
/// Throws BudgetError when it would exceed `budget`.
int ahn_cutoff(double r, double tail = 1e-12, int budget = kAhnCutoffBudget);

/// Weight of |Phi+> dropped by keeping n = 0..cutoff.
double ahn_series_tail(double r, int cutoff);

AhnKrausSet ahn_operators(double r, int cutoff);

/// Sum_n A_n |psi><psi| A_n^dag with region II traced out; signature (2, cutoff+2).
DensityMatrix ahn_apply(const Vector& psi, double r, int cutoff);
/// The map on |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix ahn_apply(double r, int cutoff);

/// (sech^2 r + cosh^2 r) / 2.
double ahn_trace_formula(double r);

struct AhnRow {
  std::string state;
  double r = 0.0;
  int ahn_cutoff = 0;
  double ahn_trace = 0.0;
  double formula = 0.0;       // NaN where no closed form is used
  double deviation = 0.0;     // |ahn_trace - 1|
  int unruh_cutoff = 0;
  double unruh_deficit = 0.0; // 1 - Tr E(rho) for the trace-preserving channel
  double unruh_tail = 0.0;    // certified bound on that deficit
  std::string verdict;
};

/// One |Phi+> row per r, plus one |Psi+> row at the largest r of the grid.
std::vector<AhnRow> side_by_side_report(const std::vector<double>& r_grid);

Vector bell_phi_plus();
Vector bell_psi_plus();

}  // namespace unruh
