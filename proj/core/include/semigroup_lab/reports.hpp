#pragma once

#include <filesystem>
#include <string>

#include "semigroup_lab/cauchy.hpp"
#include "semigroup_lab/criteria.hpp"
#include "semigroup_lab/stability.hpp"

namespace semigroup_lab {

/// Writes a file atomically (temp file in the same directory, then rename)
/// so partially written reports are never observed.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

/// Columns: n,m,s,lhs_norm,rhs_bound,ratio; one row per violation.
std::string violation_csv(const ViolationReport& report);

/// Columns: n,error,local_order, then a summary row
/// "order,<fitted>,<flags>" where flags is "exact", "extension", or empty.
std::string convergence_csv(const ConvergenceReport& report, bool extension = false);

/// Columns: s,n,distance,Z_norm,verdict.
std::string criteria_csv(const ApproxSequenceReport& report);

/// Columns: kind,i,l,k,ratio,value plus bucket summary rows
/// "bucket,<threshold>,,,<count>,<max>".
std::string lemma_csv(const SmallStepReport& small_step,
                      const DifferenceQuotientReport& quotient);

/// JSON certificate: problem descriptor, schedule gaps, residual table,
/// grid, and solution states.
std::string certificate_json(const SolutionCertificate& certificate,
                             const std::string& problem_label);

/// Full-precision (round-trippable) decimal rendering of a double.
std::string format_double(double value);

}  // namespace semigroup_lab
