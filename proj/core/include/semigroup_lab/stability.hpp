#pragma once

#include <vector>

#include "semigroup_lab/chernoff.hpp"

namespace semigroup_lab {

/// Stability constants (M, a) of the power growth condition
/// ||F(s/n)^m|| <= M exp(a m s / n).
struct GrowthBound {
  GrowthBound(double m, double a);
  double M;
  double a;
};

/// Finite certification grid standing in for "all n, m in N, s >= 0".
struct CertGrid {
  CertGrid(std::vector<int> n_values, std::vector<int> m_values, std::vector<double> s_values);

  /// n, m in {1, 2, 4, 8, 16, 32}; s in {0.25, 0.5, 1, 2, 4}.
  static CertGrid default_grid();

  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<double> s_values;
};

struct Violation {
  int n;
  int m;
  double s;
  double lhs_norm;
  double rhs_bound;
};

struct ViolationReport {
  bool passed = true;
  std::vector<Violation> violations;  // sorted by grid index (n, m, s)
  double max_ratio = 0.0;             // max over the grid of lhs / rhs
};

/// Checks ||F(s/n)^m|| <= M exp(a m s / n) (1 + tol) on every grid point.
ViolationReport verify_growth_bound(const ChernoffFamily& f, const GrowthBound& bound,
                                    const CertGrid& grid, double tol = 1e-10);

/// Fits (M, a) from log ||F(s/n)^m|| against m s / n: least-squares slope
/// for a, envelope intercept for M (clamped up to 1), slope reduced toward
/// the M = 1 envelope when the intercept clamps. The returned bound passes
/// verify_growth_bound on the same grid at tol 1e-10.
/// Throws FitError when all grid products m s / n coincide.
GrowthBound estimate_growth_bound(const ChernoffFamily& f, const CertGrid& grid);

/// True iff condition (i) (full grid) and condition (i*) (the m = n
/// diagonal) agree -- both pass or both fail -- at tol 1e-10.
bool check_i_star_equivalence(const ChernoffFamily& f, const GrowthBound& bound,
                              const CertGrid& grid);

}  // namespace semigroup_lab
