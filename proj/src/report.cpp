#include "dslab/report.hpp"

#include <cmath>
#include <sstream>

namespace dslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string quantity_text(const Quantity& q) {
  return std::visit(overloaded{[](double d) {
                                 std::ostringstream os;
                                 os.precision(17);
                                 os << d;
                                 return os.str();
                               },
                               [](const BigRational& r) { return r.str(); },
                               [](const SqrtPiMultiple& m) {
                                 return m.coefficient.str() + "*sqrt(pi)^" +
                                        std::to_string(m.sqrt_pi_power);
                               }},
                    q);
}

}  // namespace

double VerificationReport::residual_magnitude() const {
  return std::visit(overloaded{[](double d) { return std::fabs(d); },
                               [](const BigRational& r) { return std::fabs(r.to_double()); },
                               [](const SqrtPiMultiple& m) { return std::fabs(m.to_double()); }},
                    residual);
}

void SweepSummary::add(const VerificationReport& r) {
  ++total;
  const double res = r.residual_magnitude();
  if (std::isnan(res) || res > max_residual) max_residual = res;
  if (!r.pass) {
    ++failures;
    failed.push_back(r);
  }
}

void SweepSummary::merge(SweepSummary other) {
  total += other.total;
  failures += other.failures;
  if (std::isnan(other.max_residual) || other.max_residual > max_residual)
    max_residual = other.max_residual;
  for (auto& r : other.failed) failed.push_back(std::move(r));
}

SweepSummary summarize(const std::vector<VerificationReport>& reports) {
  SweepSummary s;
  for (const auto& r : reports) s.add(r);
  return s;
}

nlohmann::json to_json(const Quantity& q) {
  return std::visit(
      overloaded{[](double d) -> nlohmann::json {
                   if (std::isfinite(d)) return d;
                   return std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf");
                 },
                 [](const BigRational& r) -> nlohmann::json { return r.str(); },
                 [](const SqrtPiMultiple& m) -> nlohmann::json {
                   return {{"coeff", m.coefficient.str()}, {"sqrt_pi", m.sqrt_pi_power}};
                 }},
      q);
}

nlohmann::json to_json(const ParamList& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : params)
    std::visit([&](const auto& v) { j[key] = v; }, value);
  return j;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{{"identity_id", r.identity_id},
                   {"method", r.method},
                   {"params", to_json(r.params)},
                   {"lhs", to_json(r.lhs)},
                   {"rhs", to_json(r.rhs)},
                   {"residual", to_json(r.residual)},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass},
                   {"subdivisions", r.subdivisions},
                   {"runtime_ms", r.runtime_ms}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.details.empty()) j["details"] = to_json(r.details);
  return j;
}

nlohmann::json to_json(const SweepSummary& s) {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& r : s.failed) failed.push_back(to_json(r));
  return {{"total", s.total},
          {"failures", s.failures},
          {"max_residual", s.max_residual},
          {"failed", failed}};
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "identity_id,params,lhs,rhs,residual,tolerance,pass,subdivisions,runtime_ms\n";
  for (const auto& r : reports) {
    os << csv_escape(r.identity_id) << ',' << csv_escape(to_json(r.params).dump()) << ','
       << csv_escape(quantity_text(r.lhs)) << ',' << csv_escape(quantity_text(r.rhs)) << ','
       << csv_escape(quantity_text(r.residual)) << ',' << r.tolerance << ','
       << (r.pass ? "true" : "false") << ',' << r.subdivisions << ',' << r.runtime_ms << '\n';
  }
  return os.str();
}

}  // namespace dslab
