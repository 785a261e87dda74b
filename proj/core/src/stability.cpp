#include "semigroup_lab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semigroup_lab {

namespace {

constexpr double kNormTol = 1e-12;

template <typename T>
void require_increasing(const std::vector<T>& values, const char* what) {
  if (values.empty()) throw InputError(std::string(what) + ": list must be nonempty");
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i + 1])) {
      throw InputError(std::string(what) + ": list must be strictly increasing");
    }
  }
}

// Walks the grid in (n, m, s) order, handing each point's power norm to the
// sink. Powers of F(s/n) are formed incrementally over the sorted m list.
template <typename Sink>
void for_each_grid_norm(const ChernoffFamily& f, const CertGrid& grid, Sink&& sink) {
  for (int n : grid.n_values) {
    for (double s : grid.s_values) {
      const LinearMap step = f.evaluate(s / n);
      LinearMap current = LinearMap::identity(step.dim(), step.field());
      int exponent = 0;
      for (int m : grid.m_values) {
        for (; exponent < m; ++exponent) current = current * step;
        sink(n, m, s, operator_norm(current, kNormTol));
      }
    }
  }
}

}  // namespace

GrowthBound::GrowthBound(double m, double a) : M(m), a(a) {
  if (!(m >= 1.0) || !std::isfinite(m)) throw InputError("GrowthBound: M must be >= 1");
  if (!std::isfinite(a)) throw InputError("GrowthBound: a must be finite");
}

CertGrid::CertGrid(std::vector<int> n, std::vector<int> m, std::vector<double> s)
    : n_values(std::move(n)), m_values(std::move(m)), s_values(std::move(s)) {
  require_increasing(n_values, "CertGrid n_values");
  require_increasing(m_values, "CertGrid m_values");
  require_increasing(s_values, "CertGrid s_values");
  if (n_values.front() < 1 || m_values.front() < 1 || !(s_values.front() > 0.0)) {
    throw InputError("CertGrid: n, m must be >= 1 and s > 0");
  }
}

CertGrid CertGrid::default_grid() {
  return CertGrid({1, 2, 4, 8, 16, 32}, {1, 2, 4, 8, 16, 32}, {0.25, 0.5, 1.0, 2.0, 4.0});
}

ViolationReport verify_growth_bound(const ChernoffFamily& f, const GrowthBound& bound,
                                    const CertGrid& grid, double tol) {
  ViolationReport report;
  for_each_grid_norm(f, grid, [&](int n, int m, double s, double lhs) {
    const double rhs = bound.M * std::exp(bound.a * m * s / n);
    if (rhs > 0.0) report.max_ratio = std::max(report.max_ratio, lhs / rhs);
    if (lhs > rhs * (1.0 + tol)) {
      report.violations.push_back({n, m, s, lhs, rhs});
    }
  });
  // Grid walk is (n, m, s); reports are sorted by grid index (n, m, s).
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& x, const Violation& y) {
              if (x.n != y.n) return x.n < y.n;
              if (x.m != y.m) return x.m < y.m;
              return x.s < y.s;
            });
  report.passed = report.violations.empty();
  return report;
}

GrowthBound estimate_growth_bound(const ChernoffFamily& f, const CertGrid& grid) {
  // Samples (u, y) with u = m s / n and y = log ||F(s/n)^m||.
  std::vector<double> u, y;
  for_each_grid_norm(f, grid, [&](int n, int m, double s, double norm) {
    if (norm <= 0.0) return;  // fully decayed points carry no constraint
    u.push_back(static_cast<double>(m) * s / n);
    y.push_back(std::log(norm));
  });

  const auto [umin, umax] = std::minmax_element(u.begin(), u.end());
  if (u.size() < 2 || !(*umin < *umax)) {
    throw FitError("estimate_growth_bound: grid spans fewer than two distinct m s / n products");
  }

  // Least-squares slope of y against u.
  const double n_pts = static_cast<double>(u.size());
  double su = 0.0, sy = 0.0, suu = 0.0, suy = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sy += y[i];
    suu += u[i] * u[i];
    suy += u[i] * y[i];
  }
  double a = (n_pts * suy - su * sy) / (n_pts * suu - su * su);

  // Envelope intercept so every sample sits under log M + a u.
  double log_m = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < u.size(); ++i) log_m = std::max(log_m, y[i] - a * u[i]);
  double m_const = std::exp(log_m);

  if (m_const <= 1.0) {
    // The intercept clamps to M = 1; reduce a to the smallest slope whose
    // M = 1 envelope still covers all samples (ties broken toward smaller a).
    double a_env = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < u.size(); ++i) a_env = std::max(a_env, y[i] / u[i]);
    a = std::min(a, a_env);
    m_const = 1.0;
  }
  return GrowthBound(m_const, a);
}

bool check_i_star_equivalence(const ChernoffFamily& f, const GrowthBound& bound,
                              const CertGrid& grid) {
  constexpr double tol = 1e-10;
  const bool full_pass = verify_growth_bound(f, bound, grid, tol).passed;

  bool diagonal_pass = true;
  for (int n : grid.n_values) {
    for (double s : grid.s_values) {
      const double lhs = operator_norm(power(f.evaluate(s / n), n), kNormTol);
      const double rhs = bound.M * std::exp(bound.a * s);
      if (lhs > rhs * (1.0 + tol)) diagonal_pass = false;
    }
  }
  return full_pass == diagonal_pass;
}

}  // namespace semigroup_lab
