#include "semigroup_lab/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace semigroup_lab {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("atomic_write: cannot open " + temp.string());
    out << contents;
    if (!out) throw Error("atomic_write: write failed for " + temp.string());
  }
  fs::rename(temp, path);
}

std::string violation_csv(const ViolationReport& report) {
  std::ostringstream out;
  out << "n,m,s,lhs_norm,rhs_bound,ratio\n";
  for (const auto& v : report.violations) {
    const double ratio = v.rhs_bound > 0.0 ? v.lhs_norm / v.rhs_bound
                                           : std::numeric_limits<double>::infinity();
    out << v.n << ',' << v.m << ',' << format_double(v.s) << ',' << format_double(v.lhs_norm)
        << ',' << format_double(v.rhs_bound) << ',' << format_double(ratio) << '\n';
  }
  return out.str();
}

std::string convergence_csv(const ConvergenceReport& report, bool extension) {
  std::ostringstream out;
  out << "n,error,local_order\n";
  for (size_t i = 0; i < report.n_values.size(); ++i) {
    out << report.n_values[i] << ',' << format_double(report.errors[i]) << ',';
    if (!std::isnan(report.local_orders[i])) out << format_double(report.local_orders[i]);
    out << '\n';
  }
  out << "order,";
  if (report.exact) {
    out << "exact";
  } else if (!std::isnan(report.fitted_order)) {
    out << format_double(report.fitted_order);
  }
  out << ',' << (extension ? "extension" : "") << '\n';
  return out.str();
}

std::string criteria_csv(const ApproxSequenceReport& report) {
  std::ostringstream out;
  out << "s,n,distance,Z_norm,verdict\n";
  for (size_t si = 0; si < report.s_values.size(); ++si) {
    for (size_t ni = 0; ni < report.n_values.size(); ++ni) {
      out << format_double(report.s_values[si]) << ',' << report.n_values[ni] << ','
          << format_double(report.distances[si][ni]) << ','
          << format_double(report.generator_sup[si]) << ','
          << (report.verdicts[si] ? "pass" : "fail") << '\n';
    }
  }
  return out.str();
}

std::string lemma_csv(const SmallStepReport& small_step,
                      const DifferenceQuotientReport& quotient) {
  std::ostringstream out;
  out << "kind,i,l,k,ratio,value\n";
  for (const auto& e : small_step.entries) {
    out << "small_step," << e.i << ",," << e.k << ',' << format_double(e.ratio) << ','
        << format_double(e.value) << '\n';
  }
  for (const auto& e : quotient.entries) {
    out << "difference_quotient," << e.i << ',' << e.l << ',' << e.k << ','
        << format_double(e.ratio) << ',' << format_double(e.residual) << '\n';
  }
  auto emit_buckets = [&out](const char* kind, const std::array<BucketSummary, 3>& buckets) {
    for (const auto& b : buckets) {
      out << kind << "_bucket,,,," << format_double(b.threshold) << ','
          << (b.count > 0 ? format_double(b.max_value) : "") << '\n';
    }
  };
  emit_buckets("small_step", small_step.buckets);
  emit_buckets("difference_quotient", quotient.buckets);
  return out.str();
}

std::string certificate_json(const SolutionCertificate& certificate,
                             const std::string& problem_label) {
  nlohmann::json doc;
  doc["problem"] = problem_label;
  doc["n_used"] = certificate.n_used;
  doc["gaps"] = certificate.gaps;
  doc["final_gap"] = certificate.final_gap();
  doc["s_grid"] = certificate.s_grid;
  doc["residuals"] = certificate.residuals;

  nlohmann::json states = nlohmann::json::array();
  for (const auto& state : certificate.states) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
      if (state.field() == Field::Real) {
        entries.push_back(state[i].real());
      } else {
        entries.push_back({state[i].real(), state[i].imag()});
      }
    }
    states.push_back(std::move(entries));
  }
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

}  // namespace semigroup_lab
