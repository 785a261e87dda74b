#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "semigroup_lab/chernoff.hpp"

namespace semigroup_lab {

/// Floor index [n s / t] with a relative snap of 1e-9 against roundoff, so
/// that products which are integral in exact arithmetic floor exactly.
int floor_index(int n, double s, double t);

/// Record of the pre-limit iterates F(t/n)^{[n s / t]} x0 over a grid of s.
struct EvolutionTrace {
  ChernoffFamily family;
  double t;
  int n;
  std::vector<double> s_grid;
  std::vector<VectorState> states;  // one per s; s = 0 entries equal x0 exactly
  VectorState x0;
};

/// The trace paired against a fixed functional phi.
struct PairingTrace {
  std::vector<Complex> values;  // values[j] = pairing(states[j], functional)
  VectorState functional;
};

/// F(t/n)^n x by one evaluation of F(t/n) and n sequential applications.
VectorState product_power(const ChernoffFamily& f, double t, int n, const VectorState& x);

/// States F(t/n)^{[n s / t]} x0 for every s in s_grid (order preserved);
/// powers are shared incrementally across sorted s values, so equal floor
/// indices yield bit-identical states.
EvolutionTrace trajectory(const ChernoffFamily& f, double t, int n, std::vector<double> s_grid,
                          const VectorState& x0);

PairingTrace weak_pairing_trace(const EvolutionTrace& trace, const VectorState& phi);

/// Per-n errors against a reference with a fitted convergence order.
struct ConvergenceReport {
  std::vector<int> n_values;
  std::vector<double> errors;
  std::vector<double> local_orders;  // local_orders[0] is NaN
  double fitted_order;               // NaN when exact
  bool exact;                        // all errors <= 1e-12
  bool monotone;                     // errors non-increasing
};

/// Builds a ConvergenceReport from precomputed errors. The order is fitted
/// by least squares of log e against log n over the last max(3, half)
/// points, skipping errors below roundoff.
ConvergenceReport make_convergence_report(std::vector<int> n_values, std::vector<double> errors);

/// Errors e_n = ||F(t/n)^n x0 - reference|| over n_list (strictly
/// increasing, length >= 3) with the fitted order.
ConvergenceReport convergence_study(const ChernoffFamily& f, double t,
                                    const std::vector<int>& n_list, const VectorState& x0,
                                    const VectorState& reference);

/// Nested thresholds used by the small-step diagnostics.
inline constexpr std::array<double, 3> kLemmaThresholds = {0.1, 0.01, 0.001};

struct BucketSummary {
  double threshold;
  int count = 0;
  double max_value = 0.0;  // meaningful only when count > 0
};

struct SmallStepEntry {
  int i;
  int k;
  double ratio;  // i / k
  double value;  // ||(G(t/k)^i - I) g|| for the rescaled family G
};

/// Values ||(G^i(t/k) - I) g|| where G(s) = exp(-a+ s) F(s) and a+ is the
/// positive part of the estimated growth exponent (families already of
/// exponent <= 0 are left untouched). Bucket maxima over ratio <= r must be
/// non-increasing across the nested thresholds.
struct SmallStepReport {
  std::vector<SmallStepEntry> entries;
  std::array<BucketSummary, 3> buckets;
  bool non_increasing;
  double rescale_exponent;
};

SmallStepReport small_step_limit_check(const ChernoffFamily& f, double t, const VectorState& g,
                                       const std::vector<std::pair<int, int>>& pairs);

struct IndexTriple {
  int i;
  int l;
  int k;
};

struct DifferenceQuotientEntry {
  int i;
  int l;
  int k;
  double ratio;     // |i - l| / k
  double residual;  // ||(G^i - G^l)(t/k) g / ((i-l) t/k) - G^{min(i,l)}(t/k) G'(0) g||
};

/// Difference-quotient residuals against the generator, on the same
/// rescaled family as small_step_limit_check. Triples with i == l violate
/// the precondition (the quotient divides by i - l) and raise InputError.
struct DifferenceQuotientReport {
  std::vector<DifferenceQuotientEntry> entries;
  std::array<BucketSummary, 3> buckets;
  bool non_increasing;
  double rescale_exponent;
};

DifferenceQuotientReport difference_quotient_check(const ChernoffFamily& f, double t,
                                                   const VectorState& g,
                                                   const std::vector<IndexTriple>& triples);

/// Default (i, k) pairs spanning the three threshold decades.
std::vector<std::pair<int, int>> default_small_step_pairs();
/// Default (i, l, k) triples spanning the three threshold decades.
std::vector<IndexTriple> default_difference_quotient_triples();

}  // namespace semigroup_lab
