#include "semigroup_lab/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "semigroup_lab/evolution.hpp"

namespace semigroup_lab {

ApproxSequenceReport approximation_sequence_check(const ChernoffFamily& f, const VectorState& x,
                                                  const std::vector<double>& s_values,
                                                  const std::vector<int>& n_list,
                                                  const CandidateRule& candidate, double tol) {
  if (s_values.empty() || n_list.empty()) {
    throw InputError("approximation_sequence_check: empty grid");
  }
  if (!(tol > 0.0)) throw InputError("approximation_sequence_check: tol must be positive");

  ApproxSequenceReport report;
  report.s_values = s_values;
  report.n_values = n_list;
  report.tol = tol;
  report.distances.assign(s_values.size(), std::vector<double>(n_list.size(), 0.0));
  report.generator_sup.assign(s_values.size(), 0.0);

  const LinearMap& z = f.generator().map;

  for (size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    // Unit-time iterates F(1/n)^{[n s]}, shared across the s grid.
    const EvolutionTrace trace = trajectory(f, 1.0, n, s_values, x);
    for (size_t si = 0; si < s_values.size(); ++si) {
      const VectorState approximant = candidate(s_values[si], n);
      report.distances[si][ni] = distance(trace.states[si], approximant);
      report.generator_sup[si] =
          std::max(report.generator_sup[si], apply(z, approximant).norm());
    }
  }

  for (size_t si = 0; si < s_values.size(); ++si) {
    const auto& row = report.distances[si];
    bool tail_non_increasing = true;
    const size_t tail = std::min<size_t>(3, row.size());
    for (size_t j = row.size() - tail; j + 1 < row.size(); ++j) {
      if (row[j + 1] > row[j] + 1e-15) tail_non_increasing = false;
    }
    report.verdicts.push_back(tail_non_increasing && row.back() <= tol);
  }
  return report;
}

BoundednessReport generator_boundedness_check(const GeneratorSpec& z,
                                              const std::vector<VectorState>& sequence) {
  if (sequence.empty()) throw InputError("generator_boundedness_check: empty sequence");

  BoundednessReport report;
  const double initial = apply(z.map, sequence.front()).norm();
  report.ceiling = 1e6 * std::max(initial, 1e-12);

  for (const auto& element : sequence) {
    report.bound = std::max(report.bound, apply(z.map, element).norm());
  }
  report.bounded = report.bound <= report.ceiling;

  const size_t tail = std::min<size_t>(5, sequence.size());
  for (size_t i = sequence.size() - tail; i < sequence.size(); ++i) {
    for (size_t j = i + 1; j < sequence.size(); ++j) {
      report.tail_cluster_diameter =
          std::max(report.tail_cluster_diameter, distance(sequence[i], sequence[j]));
    }
  }
  return report;
}

}  // namespace semigroup_lab
