#pragma once

// Structured record of one identity check, shared by every verifier.

#include "dslab/exact_arith.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dslab {

using ParamValue = std::variant<std::int64_t, double, std::string>;
using ParamList = std::vector<std::pair<std::string, ParamValue>>;

/// Either side of a check: a float, an exact rational, or an exact
/// multiple of a power of sqrt(pi).
using Quantity = std::variant<double, BigRational, SqrtPiMultiple>;

struct VerificationReport {
  std::string identity_id;
  std::string method;  // "exact", "quadrature", "series", "finite_difference", "chi_square"
  ParamList params;
  Quantity lhs = 0.0;
  Quantity rhs = 0.0;
  Quantity residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int subdivisions = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> notes;
  ParamList details;

  /// Magnitude of the residual as a double (exact residuals are converted).
  double residual_magnitude() const;
};

/// Aggregate over a batch of reports. Failing reports are kept verbatim.
struct SweepSummary {
  std::size_t total = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::vector<VerificationReport> failed;

  void add(const VerificationReport& r);
  void merge(SweepSummary other);
  bool all_passed() const { return failures == 0; }
};

SweepSummary summarize(const std::vector<VerificationReport>& reports);

nlohmann::json to_json(const Quantity& q);
nlohmann::json to_json(const ParamList& params);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const SweepSummary& s);

/// Header line plus one row per report, columns matching the JSON keys.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace dslab
