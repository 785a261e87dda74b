#include "semigroup_lab/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semigroup_lab {

namespace {

void require_matching_generator(const ChernoffFamily& f, const CauchyProblem& p) {
  const LinearMap& zf = f.generator().map;
  const LinearMap& zp = p.generator.map;
  if (zf.dim() != zp.dim()) {
    throw InputError("declared generator dimension does not match the problem");
  }
  const double diff = (zf - zp).frobenius_norm();
  if (diff > 1e-12 * (1.0 + zp.frobenius_norm())) {
    throw InputError("family's declared generator does not match the problem generator");
  }
}

double max_state_distance(const std::vector<VectorState>& a, const std::vector<VectorState>& b) {
  double m = 0.0;
  for (size_t j = 0; j < a.size(); ++j) m = std::max(m, distance(a[j], b[j]));
  return m;
}

}  // namespace

double SolutionCertificate::gap_sum() const {
  return std::accumulate(gaps.begin(), gaps.end(), 0.0);
}

VectorState reference_solution(const CauchyProblem& p, double s) {
  if (s < 0.0 || s > p.horizon * (1.0 + 1e-12)) {
    throw InputError("reference_solution: s outside [0, horizon]");
  }
  if (s == 0.0) return p.x0;
  return apply(matrix_exponential(s * p.generator.map), p.x0);
}

SolutionCertificate solve_via_chernoff(const ChernoffFamily& f, const CauchyProblem& p,
                                       const std::vector<double>& s_grid, double tol,
                                       const std::vector<int>& n_schedule) {
  require_matching_generator(f, p);
  if (!(tol > 0.0)) throw InputError("solve_via_chernoff: tol must be positive");
  if (n_schedule.size() < 2) throw InputError("solve_via_chernoff: schedule needs >= 2 entries");
  for (size_t i = 0; i + 1 < n_schedule.size(); ++i) {
    if (!(n_schedule[i] < n_schedule[i + 1])) {
      throw InputError("solve_via_chernoff: schedule must be strictly increasing");
    }
  }
  for (double s : s_grid) {
    if (s < 0.0 || s > p.horizon * (1.0 + 1e-12)) {
      throw InputError("solve_via_chernoff: grid point outside [0, horizon]");
    }
  }

  const double t = p.horizon;
  SolutionCertificate cert;
  cert.s_grid = s_grid;

  std::vector<VectorState> previous = trajectory(f, t, n_schedule.front(), s_grid, p.x0).states;
  for (size_t j = 1; j < n_schedule.size(); ++j) {
    std::vector<VectorState> current = trajectory(f, t, n_schedule[j], s_grid, p.x0).states;
    cert.gaps.push_back(max_state_distance(previous, current));
    previous = std::move(current);
    if (cert.gaps.back() <= tol) {
      cert.states = std::move(previous);
      cert.n_used = n_schedule[j];
      return cert;
    }
  }
  throw ToleranceNotReached("solve_via_chernoff: schedule exhausted at gap " +
                                std::to_string(cert.gaps.back()),
                            cert.gaps.back());
}

DerivativeCheckReport derivative_representation_check(const ChernoffFamily& f,
                                                      const CauchyProblem& p,
                                                      const std::vector<double>& s_grid, int n) {
  require_matching_generator(f, p);
  const double t = p.horizon;
  const VectorState zx0 = apply(p.generator.map, p.x0);
  const EvolutionTrace trace = trajectory(f, t, n, s_grid, zx0);

  DerivativeCheckReport report;
  report.s_grid = s_grid;
  for (size_t j = 0; j < s_grid.size(); ++j) {
    const double s = s_grid[j];
    double residual = 0.0;
    if (s == 0.0) {
      // f'(0) = Z x0 exactly; the trajectory at s = 0 is Z x0 as well.
      residual = distance(zx0, trace.states[j]);
    } else {
      // Central difference of the oracle, falling back to a backward
      // difference at the horizon's edge.
      const double h = s * 1e-4;
      const VectorState derivative =
          (s + h <= p.horizon)
              ? (1.0 / (2.0 * h)) *
                    (reference_solution(p, s + h) - reference_solution(p, s - h))
              : (1.0 / h) * (reference_solution(p, s) - reference_solution(p, s - h));
      residual = distance(derivative, trace.states[j]);
    }
    report.residuals.push_back(residual);
    report.max_residual = std::max(report.max_residual, residual);
  }
  return report;
}

IntegralIdentityResult integral_identity_check(const ChernoffFamily& f, const VectorState& x,
                                               const VectorState& phi, double l, double m, int n,
                                               int quad_points) {
  if (l < 0.0 || m < l) throw InputError("integral_identity_check: need 0 <= l <= m");
  if (quad_points < 1) throw InputError("integral_identity_check: quad_points must be >= 1");
  if (l == m) return IntegralIdentityResult{0.0, 0.0, 0.0};

  const double t = m;  // trajectory horizon; s = m lands on the full power n
  const VectorState adjoint_phi = apply(adjoint_map(f.generator().map), phi);

  std::vector<double> nodes(static_cast<size_t>(quad_points) + 1);
  const double width = (m - l) / quad_points;
  for (int j = 0; j <= quad_points; ++j) nodes[static_cast<size_t>(j)] = l + j * width;
  nodes.back() = m;  // guard the endpoint against accumulation error

  const EvolutionTrace trace = trajectory(f, t, n, nodes, x);

  const Complex lhs = pairing(trace.states.back(), phi) - pairing(trace.states.front(), phi);

  Complex rhs = 0.0;
  for (size_t j = 0; j < trace.states.size(); ++j) {
    const Complex value = pairing(trace.states[j], adjoint_phi);
    const double weight = (j == 0 || j + 1 == trace.states.size()) ? 0.5 : 1.0;
    rhs += weight * value;
  }
  rhs *= width;

  return IntegralIdentityResult{lhs, rhs, std::abs(lhs - rhs)};
}

double semigroup_law_check(const ChernoffFamily& f, double s1, double s2, const VectorState& x,
                           int n) {
  if (s1 < 0.0 || s2 < 0.0) throw InputError("semigroup_law_check: times must be nonnegative");
  if (n < 1) throw InputError("semigroup_law_check: n must be >= 1");
  auto apply_time = [&](double s, const VectorState& v) {
    return s == 0.0 ? v : product_power(f, s, n, v);
  };
  const VectorState composed = apply_time(s1, apply_time(s2, x));
  const VectorState direct = apply_time(s1 + s2, x);
  return distance(composed, direct);
}

LinearMap extend_from_local(const std::function<LinearMap(double)>& local, double l, double s) {
  if (!(l > 0.0)) throw InputError("extend_from_local: l must be positive");
  if (s < 0.0) throw InputError("extend_from_local: s must be nonnegative");

  const int j = floor_index(1, 2.0 * s, l);  // [2 s / l] with roundoff snap
  const double remainder = std::max(0.0, s - j * (l / 2.0));
  const LinearMap tail = local(remainder);
  if (j == 0) return tail;
  return power(local(l / 2.0), j) * tail;
}

}  // namespace semigroup_lab
