#pragma once

#include <functional>
#include <vector>

#include "semigroup_lab/chernoff.hpp"

namespace semigroup_lab {

/// Caller-supplied rule (s, n) -> candidate approximant f_n^s.
using CandidateRule = std::function<VectorState(double s, int n)>;

/// Distances ||F(1/n)^{[n s]} f - f_n^s|| together with the boundedness of
/// the generator along the candidates.
struct ApproxSequenceReport {
  std::vector<double> s_values;
  std::vector<int> n_values;
  std::vector<std::vector<double>> distances;  // distances[si][ni]
  std::vector<double> generator_sup;           // per s: sup_n ||Z f_n^s||
  std::vector<bool> verdicts;                  // per s
  double tol;
};

/// Verdict per s is "pass" iff the distances are non-increasing over the
/// last three n values and the final distance is <= tol. Iterates use the
/// unit-time convention F(1/n)^{[n s]}.
ApproxSequenceReport approximation_sequence_check(const ChernoffFamily& f, const VectorState& x,
                                                  const std::vector<double>& s_values,
                                                  const std::vector<int>& n_list,
                                                  const CandidateRule& candidate,
                                                  double tol = 1e-3);

/// Boundedness of {Z f_n} with a blow-up ceiling, plus the tail-cluster
/// diameter (max pairwise distance among the last five elements) as the
/// finite-dimensional precompactness proxy.
struct BoundednessReport {
  double bound = 0.0;  // max_n ||Z f_n||
  bool bounded = true;
  double ceiling = 0.0;
  double tail_cluster_diameter = 0.0;
};

BoundednessReport generator_boundedness_check(const GeneratorSpec& z,
                                              const std::vector<VectorState>& sequence);

}  // namespace semigroup_lab
