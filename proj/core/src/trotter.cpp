#include "semigroup_lab/trotter.hpp"

namespace semigroup_lab {

SplitPair::SplitPair(LinearMap c_in, LinearMap d_in) : c(std::move(c_in)), d(std::move(d_in)) {
  if (c.dim() != d.dim()) throw DimensionError("SplitPair: constituents must share a dimension");
}

VectorState trotter_apply(const SplitPair& pair, double s, int n, const VectorState& x) {
  if (n < 1) throw InputError("trotter_apply: n must be >= 1");
  if (!(s > 0.0)) throw InputError("trotter_apply: s must be positive");
  const LinearMap u = matrix_exponential((s / n) * pair.c);
  const LinearMap v = matrix_exponential((s / n) * pair.d);
  VectorState y = x;
  for (int i = 0; i < n; ++i) y = apply(u, apply(v, y));
  return y;
}

TrotterConvergenceReport trotter_convergence(const SplitPair& pair, double s,
                                             const std::vector<int>& n_list,
                                             const VectorState& x, bool with_strang) {
  if (n_list.size() < 3) throw InputError("trotter_convergence: need at least 3 values of n");
  for (size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (!(n_list[i] < n_list[i + 1])) {
      throw InputError("trotter_convergence: n_list must be strictly increasing");
    }
  }

  const VectorState reference = apply(matrix_exponential(s * (pair.c + pair.d)), x);

  std::vector<double> errors;
  errors.reserve(n_list.size());
  for (int n : n_list) errors.push_back(distance(trotter_apply(pair, s, n, x), reference));

  TrotterConvergenceReport report;
  report.lie_trotter = make_convergence_report(n_list, std::move(errors));

  if (with_strang) {
    const ChernoffFamily strang = ChernoffFamily::strang(pair.c, pair.d);
    std::vector<double> strang_errors;
    strang_errors.reserve(n_list.size());
    for (int n : n_list) {
      strang_errors.push_back(distance(product_power(strang, s, n, x), reference));
    }
    report.strang = make_convergence_report(n_list, std::move(strang_errors));
  }
  return report;
}

ViolationReport trotter_stability_check(const SplitPair& pair, const GrowthBound& bound,
                                        const CertGrid& grid) {
  return verify_growth_bound(ChernoffFamily::lie_trotter(pair.c, pair.d), bound, grid);
}

}  // namespace semigroup_lab
