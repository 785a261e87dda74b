#pragma once

#include <optional>
#include <vector>

#include "semigroup_lab/evolution.hpp"
#include "semigroup_lab/stability.hpp"

namespace semigroup_lab {

/// An ordered pair of generators for the splitting exp(sC/n) exp(sD/n).
/// The order is part of the identity: the swapped splitting is a different
/// SplitPair, not an option.
struct SplitPair {
  SplitPair(LinearMap c, LinearMap d);
  LinearMap c;
  LinearMap d;
};

/// {exp(sC/n) exp(sD/n)}^n x; both factors are evaluated once and reused.
VectorState trotter_apply(const SplitPair& pair, double s, int n, const VectorState& x);

/// Convergence against the exp(s(C+D)) oracle. The Strang variant runs
/// alongside when requested; it is an extension beyond the core splitting
/// and is flagged as such wherever it is reported.
struct TrotterConvergenceReport {
  ConvergenceReport lie_trotter;
  std::optional<ConvergenceReport> strang;
};

TrotterConvergenceReport trotter_convergence(const SplitPair& pair, double s,
                                             const std::vector<int>& n_list,
                                             const VectorState& x, bool with_strang = false);

/// Growth-bound verification of the splitting products, via the Lie-Trotter
/// family of (C, D).
ViolationReport trotter_stability_check(const SplitPair& pair, const GrowthBound& bound,
                                        const CertGrid& grid);

}  // namespace semigroup_lab
