#include "semigroup_lab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "semigroup_lab/stability.hpp"

namespace semigroup_lab {

namespace {

constexpr double kExactErrorFloor = 1e-12;

// Rescales F to G(s) = exp(-a s) F(s) when the estimated growth exponent a
// is positive; the lemma-style checks assume the exponent-zero class.
std::pair<ChernoffFamily, double> rescaled_for_lemmas(const ChernoffFamily& f) {
  const GrowthBound bound = estimate_growth_bound(f, CertGrid::default_grid());
  const double a = std::max(0.0, bound.a);
  if (a == 0.0) return {f, 0.0};
  GeneratorSpec gen{f.generator().map - a * LinearMap::identity(f.dim(), f.generator().map.field()),
                    f.generator().label + " - aI"};
  ChernoffFamily rescaled = ChernoffFamily::custom(
      [f, a](double s) { return std::exp(-a * s) * f.evaluate(s); }, std::move(gen),
      f.name() + "/rescaled");
  return {rescaled, a};
}

std::array<BucketSummary, 3> bucketize(const std::vector<std::pair<double, double>>& ratio_value) {
  std::array<BucketSummary, 3> buckets{};
  for (size_t b = 0; b < kLemmaThresholds.size(); ++b) {
    buckets[b].threshold = kLemmaThresholds[b];
    for (const auto& [ratio, value] : ratio_value) {
      if (ratio <= kLemmaThresholds[b]) {
        buckets[b].count += 1;
        buckets[b].max_value = std::max(buckets[b].max_value, value);
      }
    }
  }
  return buckets;
}

bool buckets_non_increasing(const std::array<BucketSummary, 3>& buckets) {
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& bucket : buckets) {
    if (bucket.count == 0) continue;
    if (bucket.max_value > previous) return false;
    previous = bucket.max_value;
  }
  return true;
}

}  // namespace

int floor_index(int n, double s, double t) {
  if (!(t > 0.0)) throw InputError("floor_index: t must be positive");
  if (s < 0.0) throw InputError("floor_index: s must be nonnegative");
  const double r = static_cast<double>(n) * s / t;
  const int k = static_cast<int>(std::floor(r + 1e-9 * (1.0 + std::abs(r))));
  return std::max(0, k);
}

VectorState product_power(const ChernoffFamily& f, double t, int n, const VectorState& x) {
  if (n < 1) throw InputError("product_power: n must be >= 1");
  const LinearMap step = f.evaluate(t / n);
  VectorState y = x;
  for (int i = 0; i < n; ++i) y = apply(step, y);
  return y;
}

EvolutionTrace trajectory(const ChernoffFamily& f, double t, int n, std::vector<double> s_grid,
                          const VectorState& x0) {
  if (n < 1) throw InputError("trajectory: n must be >= 1");
  if (!(t > 0.0)) throw InputError("trajectory: t must be positive");

  // Sort the requested floor indices; apply the step map cumulatively.
  std::vector<size_t> order(s_grid.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<int> indices(s_grid.size());
  for (size_t j = 0; j < s_grid.size(); ++j) indices[j] = floor_index(n, s_grid[j], t);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return indices[a] < indices[b]; });

  const LinearMap step = f.evaluate(t / n);
  std::vector<VectorState> states(s_grid.size(), x0);
  VectorState current = x0;
  int applied = 0;
  for (size_t j : order) {
    for (; applied < indices[j]; ++applied) current = apply(step, current);
    states[j] = current;
  }
  return EvolutionTrace{f, t, n, std::move(s_grid), std::move(states), x0};
}

PairingTrace weak_pairing_trace(const EvolutionTrace& trace, const VectorState& phi) {
  if (phi.dim() != trace.x0.dim()) {
    throw DimensionError("weak_pairing_trace: functional dimension mismatch");
  }
  PairingTrace result{{}, phi};
  result.values.reserve(trace.states.size());
  for (const auto& state : trace.states) result.values.push_back(pairing(state, phi));
  return result;
}

ConvergenceReport make_convergence_report(std::vector<int> n_values,
                                          std::vector<double> errors) {
  if (n_values.size() != errors.size()) {
    throw InputError("make_convergence_report: n and error lists must align");
  }
  ConvergenceReport report;
  report.n_values = std::move(n_values);
  report.errors = std::move(errors);
  report.local_orders.assign(report.errors.size(), std::numeric_limits<double>::quiet_NaN());
  report.monotone = true;
  report.exact = true;
  for (size_t i = 0; i < report.errors.size(); ++i) {
    if (report.errors[i] > kExactErrorFloor) report.exact = false;
    if (i > 0) {
      if (report.errors[i] > report.errors[i - 1]) report.monotone = false;
      if (report.errors[i] > 0.0 && report.errors[i - 1] > 0.0) {
        report.local_orders[i] = std::log(report.errors[i - 1] / report.errors[i]) /
                                 std::log(static_cast<double>(report.n_values[i]) /
                                          static_cast<double>(report.n_values[i - 1]));
      }
    }
  }

  report.fitted_order = std::numeric_limits<double>::quiet_NaN();
  if (!report.exact) {
    // Fit over the last max(3, half) points to suppress preasymptotic
    // pollution; drop points at roundoff level.
    const size_t total = report.errors.size();
    const size_t window = std::max<size_t>(3, total / 2);
    std::vector<double> log_n, log_e;
    for (size_t i = total - std::min(window, total); i < total; ++i) {
      if (report.errors[i] > 1e-15) {
        log_n.push_back(std::log(static_cast<double>(report.n_values[i])));
        log_e.push_back(std::log(report.errors[i]));
      }
    }
    if (log_n.size() >= 2) {
      const double n_pts = static_cast<double>(log_n.size());
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (size_t i = 0; i < log_n.size(); ++i) {
        sx += log_n[i];
        sy += log_e[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_e[i];
      }
      report.fitted_order = -(n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    }
  }
  return report;
}

ConvergenceReport convergence_study(const ChernoffFamily& f, double t,
                                    const std::vector<int>& n_list, const VectorState& x0,
                                    const VectorState& reference) {
  if (n_list.size() < 3) throw InputError("convergence_study: need at least 3 values of n");
  for (size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (!(n_list[i] < n_list[i + 1])) {
      throw InputError("convergence_study: n_list must be strictly increasing");
    }
  }
  std::vector<double> errors;
  errors.reserve(n_list.size());
  for (int n : n_list) errors.push_back(distance(product_power(f, t, n, x0), reference));
  return make_convergence_report(n_list, std::move(errors));
}

SmallStepReport small_step_limit_check(const ChernoffFamily& f, double t, const VectorState& g,
                                       const std::vector<std::pair<int, int>>& pairs) {
  if (!(t > 0.0)) throw InputError("small_step_limit_check: t must be positive");
  auto [family, exponent] = rescaled_for_lemmas(f);

  // Group by k: one evaluation of G(t/k), then cumulative applications to g.
  std::map<int, std::vector<int>> by_k;
  for (const auto& [i, k] : pairs) {
    if (i < 1 || k < 1) throw InputError("small_step_limit_check: indices must be >= 1");
    by_k[k].push_back(i);
  }

  std::map<std::pair<int, int>, double> values;
  for (auto& [k, is] : by_k) {
    std::sort(is.begin(), is.end());
    const LinearMap step = family.evaluate(t / k);
    VectorState current = g;
    int applied = 0;
    for (int i : is) {
      for (; applied < i; ++applied) current = apply(step, current);
      values[{i, k}] = distance(current, g);
    }
  }

  SmallStepReport report;
  report.rescale_exponent = exponent;
  std::vector<std::pair<double, double>> ratio_value;
  for (const auto& [i, k] : pairs) {
    const double ratio = static_cast<double>(i) / k;
    const double value = values[{i, k}];
    report.entries.push_back({i, k, ratio, value});
    ratio_value.emplace_back(ratio, value);
  }
  report.buckets = bucketize(ratio_value);
  report.non_increasing = buckets_non_increasing(report.buckets);
  return report;
}

DifferenceQuotientReport difference_quotient_check(const ChernoffFamily& f, double t,
                                                   const VectorState& g,
                                                   const std::vector<IndexTriple>& triples) {
  if (!(t > 0.0)) throw InputError("difference_quotient_check: t must be positive");
  for (const auto& triple : triples) {
    if (triple.i == triple.l) {
      throw InputError("difference_quotient_check: i == l divides by zero");
    }
    if (triple.i < 0 || triple.l < 0 || triple.k < 1) {
      throw InputError("difference_quotient_check: need i, l >= 0 and k >= 1");
    }
  }
  auto [family, exponent] = rescaled_for_lemmas(f);
  const VectorState zg = apply(family.generator().map, g);

  std::map<int, int> max_power_by_k;
  for (const auto& triple : triples) {
    max_power_by_k[triple.k] = std::max(max_power_by_k[triple.k], std::max(triple.i, triple.l));
  }

  // All powers G(t/k)^j g and G(t/k)^j (Z g) up to the max requested j.
  std::map<int, std::vector<VectorState>> powers_g, powers_zg;
  for (const auto& [k, max_power] : max_power_by_k) {
    const LinearMap step = family.evaluate(t / k);
    std::vector<VectorState> pg{g}, pz{zg};
    pg.reserve(static_cast<size_t>(max_power) + 1);
    pz.reserve(static_cast<size_t>(max_power) + 1);
    for (int j = 1; j <= max_power; ++j) {
      pg.push_back(apply(step, pg.back()));
      pz.push_back(apply(step, pz.back()));
    }
    powers_g.emplace(k, std::move(pg));
    powers_zg.emplace(k, std::move(pz));
  }

  DifferenceQuotientReport report;
  report.rescale_exponent = exponent;
  std::vector<std::pair<double, double>> ratio_value;
  for (const auto& [i, l, k] : triples) {
    const auto& pg = powers_g.at(k);
    const auto& pz = powers_zg.at(k);
    const double denom = static_cast<double>(i - l) * t / k;
    const VectorState quotient =
        (1.0 / denom) * (pg[static_cast<size_t>(i)] - pg[static_cast<size_t>(l)]);
    const double residual = distance(quotient, pz[static_cast<size_t>(std::min(i, l))]);
    const double ratio = std::abs(static_cast<double>(i - l)) / k;
    report.entries.push_back({i, l, k, ratio, residual});
    ratio_value.emplace_back(ratio, residual);
  }
  report.buckets = bucketize(ratio_value);
  report.non_increasing = buckets_non_increasing(report.buckets);
  return report;
}

std::vector<std::pair<int, int>> default_small_step_pairs() {
  std::vector<std::pair<int, int>> pairs;
  for (int k : {100, 1000, 10000}) {
    for (int i : {1, k / 1000, k / 100, k / 10}) {
      if (i >= 1) pairs.emplace_back(i, k);
    }
  }
  return pairs;
}

std::vector<IndexTriple> default_difference_quotient_triples() {
  std::vector<IndexTriple> triples;
  for (int k : {100, 1000, 10000}) {
    for (int gap : {1, k / 1000, k / 100, k / 10}) {
      if (gap >= 1) triples.push_back({gap + 1, 1, k});
    }
  }
  return triples;
}

}  // namespace semigroup_lab
