#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "semigroup_lab/evolution.hpp"

namespace semigroup_lab {

/// The abstract Cauchy problem x'(s) = Z x(s), x(0) = x0, on [0, horizon].
struct CauchyProblem {
  GeneratorSpec generator;
  VectorState x0;
  double horizon;
};

/// Product-formula solution with its refinement history. The gap sequence
/// records the max-over-grid distance between successive n-refinements; the
/// final entry is the certificate's cauchy gap.
struct SolutionCertificate {
  std::vector<double> s_grid;
  std::vector<VectorState> states;
  int n_used = 0;
  std::vector<double> gaps;
  std::map<std::string, double> residuals;  // identity checks attached by callers

  double final_gap() const { return gaps.empty() ? 0.0 : gaps.back(); }
  double gap_sum() const;
};

/// Oracle solution exp(s Z) x0. Requires s <= horizon.
VectorState reference_solution(const CauchyProblem& p, double s);

/// Refines the trajectory along n_schedule until successive refinements
/// differ by less than tol in max-over-grid norm. The family must declare
/// the problem's generator. Throws ToleranceNotReached (carrying the final
/// gap) when the schedule is exhausted.
SolutionCertificate solve_via_chernoff(const ChernoffFamily& f, const CauchyProblem& p,
                                       const std::vector<double>& s_grid, double tol,
                                       const std::vector<int>& n_schedule);

/// Residuals between a finite difference of the oracle solution and the
/// trajectory of Z x0, per grid point.
struct DerivativeCheckReport {
  std::vector<double> s_grid;
  std::vector<double> residuals;
  double max_residual = 0.0;
};

DerivativeCheckReport derivative_representation_check(const ChernoffFamily& f,
                                                      const CauchyProblem& p,
                                                      const std::vector<double>& s_grid, int n);

struct IntegralIdentityResult {
  Complex lhs;      // T_m(x, phi) - T_l(x, phi)
  Complex rhs;      // trapezoid of T_s(x, Z* phi) over [l, m]
  double residual;  // |lhs - rhs|
};

/// Both sides of the pairing integral identity with T_s replaced by the
/// n-th trajectory and the integral by a composite trapezoid rule.
IntegralIdentityResult integral_identity_check(const ChernoffFamily& f, const VectorState& x,
                                               const VectorState& phi, double l, double m, int n,
                                               int quad_points = 1024);

/// || T_{s1} T_{s2} x - T_{s1+s2} x || where T_s is the n-th product
/// approximant F(s/n)^n of the limit semigroup at time s.
double semigroup_law_check(const ChernoffFamily& f, double s1, double s2, const VectorState& x,
                           int n);

/// Global reconstruction {G(l/2)}^{[2s/l]} G(s - [2s/l] l/2) from local data
/// G on [0, l).
LinearMap extend_from_local(const std::function<LinearMap(double)>& local, double l, double s);

}  // namespace semigroup_lab
