// Report records for the certification suite.
//
// Every identity or bound check produces a small record: a stable id
// string naming the check, the residual norm before and after projection
// onto the sectors where the truncated operators agree with the exact
// algebra, the tolerance it was held to, and a fingerprint of the model
// it ran on.  Residual norms are relative: the defect norm is divided by
// the larger of the two assembled sides, so reports are comparable
// across couplings and grid weights.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nelson/model.h"

namespace verif {

struct IdentityReport {
  std::string id;           ///< stable check label, e.g. "pull_through/standard/n=2"
  double raw = 0.0;         ///< relative residual before sector projection
  double projected = 0.0;   ///< relative residual on the exactness sectors
  double tolerance = 0.0;
  bool pass = false;        ///< projected <= tolerance
  std::string fingerprint;  ///< model fingerprint (params, momentum, grid)
};

/// FNV-1a hash (hex) over the canonical text form of the parameters, the
/// effective momentum, the truncation level, and every grid mode.  Two
/// models agree on the fingerprint iff they describe the same solve.
std::string model_fingerprint(const nelson::NelsonModel& model);

/// Assembles the record; pass is derived, never set by hand.
IdentityReport make_report(std::string id, double raw, double projected,
                           double tolerance, const nelson::NelsonModel& model);

/// True when every record passes.
bool all_pass(const std::vector<IdentityReport>& reports);

/// CSV with the header "id,raw,projected,tolerance,pass,fingerprint";
/// numbers in %.17g so reruns are byte-identical.
void write_reports_csv(std::ostream& out,
                       const std::vector<IdentityReport>& reports);

}  // namespace verif
