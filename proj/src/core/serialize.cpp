#include "serialize.hpp"

#include <charconv>
#include <cmath>

namespace phistab {

namespace {

// nlohmann writes non-finite numbers as null.
Json number(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return {};
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

Json to_json(const SZDistribution& distribution) {
  Json j;
  j["a"] = distribution.a;
  Json atoms = Json::array();
  for (const SZAtom& atom : distribution.atoms) {
    atoms.push_back({{"s", number(atom.s)}, {"z", number(atom.z)}, {"probability", number(atom.probability)}});
  }
  j["atoms"] = std::move(atoms);
  return j;
}

Json to_json(const BoundResult& result) {
  Json j;
  j["kind"] = to_string(result.kind);
  j["value"] = number(result.value);
  j["beta"] = number(result.argmax.beta);
  j["z1"] = number(result.argmax.z1);
  j["z2"] = number(result.argmax.z2);
  j["z_tilde"] = number(result.argmax.z_tilde);
  j["z_hat"] = number(result.argmax.z_hat);
  j["p"] = number(result.argmax.p);
  j["q"] = number(result.argmax.q);
  j["feasible"] = result.feasible;
  j["grid"] = result.diagnostics.grid;
  j["refine_iters"] = result.diagnostics.refine_iters;
  j["residual"] = number(result.diagnostics.residual);
  j["notes"] = result.diagnostics.notes;
  if (result.distribution) j["distribution"] = to_json(*result.distribution);
  return j;
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["check"] = report.check;
  j["pass"] = report.pass;
  j["n"] = report.n;
  j["rho"] = report.rho;
  j["phi"] = report.phi;
  j["mean"] = report.mean;
  j["enumerated_max"] = number(report.enumerated_max);
  j["dictator_value"] = number(report.dictator_value);
  j["gap"] = number(report.gap);
  if (!report.bound_kind.empty()) {
    j["bound_kind"] = report.bound_kind;
    j["bound_value"] = number(report.bound_value);
    j["dominance_margin"] = number(report.dominance_margin);
  }
  Json canonical = Json::array();
  for (const auto& f : report.attaining_canonical) canonical.push_back(f.encode());
  j["attaining_canonical"] = std::move(canonical);
  Json attaining = Json::array();
  for (const auto& f : report.attaining) attaining.push_back(f.encode());
  j["attaining"] = std::move(attaining);
  j["attaining_truncated"] = report.attaining_truncated;
  j["enumerated"] = report.enumerated;
  j["evaluated"] = report.evaluated;
  j["skipped"] = report.skipped;
  j["complete"] = report.complete;
  j["notes"] = report.notes;
  return j;
}

Json to_json(const RootResult& result) {
  Json j;
  j["root"] = number(result.root);
  j["residual"] = number(result.residual);
  j["iterations"] = result.iterations;
  j["bracket"] = Json::array({number(result.bracket_lo), number(result.bracket_hi)});
  return j;
}

Json to_json(const LemmaCheckReport& report) {
  Json j;
  j["points"] = report.points;
  j["violation_count"] = report.violations.size();
  j["max_derivative_error"] = number(report.max_derivative_error);
  j["max_phi1_abs"] = number(report.max_phi1_abs);
  j["method"] = report.method;
  Json violations = Json::array();
  for (const LemmaViolation& v : report.violations) {
    violations.push_back({{"check", v.check},
                          {"rho", number(v.rho)},
                          {"p", number(v.p)},
                          {"alpha", number(v.alpha)},
                          {"value", number(v.value)}});
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace phistab
