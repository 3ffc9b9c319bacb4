// Command-line front end. Talks to the library through the C API only.

#include <phistab/phistab.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library failures caused by user input are usage errors; the rest are not.
[[noreturn]] void library_failure(phistab_status status, const std::string& context) {
  const std::string msg = context + ": " + phistab_last_error();
  switch (status) {
    case PHISTAB_ERR_INVALID_ARGUMENT:
    case PHISTAB_ERR_DOMAIN:
    case PHISTAB_ERR_PARSE:
    case PHISTAB_ERR_INFEASIBLE:
      throw UsageError(msg);
    default:
      throw RuntimeError(msg);
  }
}

void check(phistab_status status, const std::string& context) {
  if (status != PHISTAB_OK) library_failure(status, context);
}

struct CString {
  char* p = nullptr;
  ~CString() { phistab_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct FunctionDeleter {
  void operator()(phistab_function* f) const { phistab_function_free(f); }
};
struct BoundDeleter {
  void operator()(phistab_bound* b) const { phistab_bound_free(b); }
};
struct ReportDeleter {
  void operator()(phistab_report* r) const { phistab_report_free(r); }
};
using FunctionPtr = std::unique_ptr<phistab_function, FunctionDeleter>;
using BoundPtr = std::unique_ptr<phistab_bound, BoundDeleter>;
using ReportPtr = std::unique_ptr<phistab_report, ReportDeleter>;

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// "v" or "lo:hi:step" with inclusive ends; the point count is
// round((hi - lo) / step) + 1.
std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  auto to_double = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
      throw UsageError(flag + ": '" + s + "' is not a finite number");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw UsageError(flag + ": expected a value or lo:hi:step, got '" + text + "'");
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (!(step > 0.0)) throw UsageError(flag + ": step must be positive");
  if (hi < lo) throw UsageError(flag + ": range end " + parts[1] + " is below its start " + parts[0]);
  const double steps = std::round((hi - lo) / step);
  if (steps > 1e6) throw UsageError(flag + ": range has more than a million points");
  std::vector<double> out;
  for (long i = 0; i <= static_cast<long>(steps); ++i) {
    double v = lo + static_cast<double>(i) * step;
    // Snap accumulated rounding noise to 12 decimals so 0.1:0.3:0.1 prints as typed.
    const double snapped = std::round(v * 1e12) / 1e12;
    if (std::abs(v - snapped) < 1e-14 * std::max(1.0, std::abs(v))) v = snapped;
    out.push_back(v);
  }
  return out;
}

struct Options {
  std::string alpha = "1";
  bool sym = false;
  bool power = false;
  std::string a = "0.5";
  std::string rho = "0.5";
  std::string beta = "0:0.5:0.0625";
  unsigned grid = 400;
  double tol = 1e-10;
  unsigned workers = 1;
  std::string mode = "auto";
  std::string omega = "min";
  unsigned support = 3;
  unsigned starts = 64;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string output;
  int n = 4;
  std::string function;
  std::string bound;
  std::string target;
  bool no_canonical = false;
  bool allow_n5 = false;
  std::string checkpoint;
  std::size_t chunk_limit = 0;
};

// Sink for one run: JSON lines or CSV with a fixed header.
class Output {
 public:
  Output(const std::string& path, std::string format) : format_(std::move(format)) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw RuntimeError("--output: cannot open '" + path + "' for writing");
    }
  }
  bool csv() const { return format_ == "csv"; }
  void header(const std::vector<std::string>& columns) {
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) line += (i ? "," : "") + columns[i];
    write(line);
  }
  void row(const std::vector<std::string>& cells) { header(cells); }
  void json(const Json& j) { write(j.dump()); }

 private:
  void write(const std::string& line) { (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << line << '\n'; }
  std::string format_;
  std::ofstream file_;
};

double single(const std::string& text, const std::string& flag) {
  const auto values = parse_range(text, flag);
  if (values.size() != 1) throw UsageError(flag + ": a single value is required here, not a range");
  return values.front();
}

void require_open_unit(double v, const std::string& flag, const std::string& name) {
  if (!(v > 0.0 && v < 1.0)) throw UsageError(flag + ": " + name + " must lie in (0, 1), got " + fmt(v));
}

phistab_phi make_phi(double alpha, const Options& o) {
  if (!(alpha >= 1.0 && alpha <= 16.0)) throw UsageError("--alpha: alpha must lie in [1, 16], got " + fmt(alpha));
  if (o.power && !(alpha > 1.0)) throw UsageError("--alpha: the power family t^alpha needs alpha > 1 (with --power)");
  return phistab_phi{alpha, o.sym ? 1 : 0, o.power ? 1 : 0};
}

std::string flag(bool on) { return on ? "1" : "0"; }

std::string phi_name(const phistab_phi& phi) {
  return std::string(phi.power ? "power" : "tsallis") + "(alpha=" + fmt(phi.alpha) + ")" +
         (phi.symmetric ? ",symmetric" : "");
}

void check_regime(phistab_bound_kind kind, const phistab_phi& phi) {
  CString why;
  check(phistab_regime_check(kind, phi, &why.p), "regime check");
  if (why.p) {
    throw UsageError("--alpha/--sym/--power: " + std::string(phistab_bound_kind_name(kind)) +
                     " does not apply to " + phi_name(phi) + ": " + why.str());
  }
}

phistab_bound_kind parse_kind(const std::string& name, const std::string& where) {
  phistab_bound_kind kind;
  if (phistab_bound_kind_parse(name.c_str(), &kind) != PHISTAB_OK) {
    throw UsageError(where + ": unknown bound kind '" + name +
                     "' (expected gamma-bar, gamma-hat, lambda2, gamma-tilde, upsilon or lambda-generic)");
  }
  return kind;
}

phistab_bound_request make_request(phistab_bound_kind kind, double a, double rho, const phistab_phi& phi,
                                   const Options& o) {
  phistab_bound_request r;
  phistab_bound_request_init(&r);
  r.kind = kind;
  r.a = a;
  r.rho = rho;
  r.phi = phi;
  if (o.grid < 2) throw UsageError("--grid: at least 2 grid points are required");
  if (!(o.tol > 0.0)) throw UsageError("--tol: tolerance must be positive");
  r.grid = o.grid;
  r.tolerance = o.tol;
  r.workers = o.workers;
  if (o.mode == "auto")
    r.tilde_mode = PHISTAB_TILDE_AUTO;
  else if (o.mode == "direct")
    r.tilde_mode = PHISTAB_TILDE_DIRECT;
  else if (o.mode == "reflected")
    r.tilde_mode = PHISTAB_TILDE_REFLECTED;
  else
    throw UsageError("--mode: expected auto, direct or reflected, got '" + o.mode + "'");
  if (phistab_omega_kind_parse(o.omega.c_str(), &r.omega) != PHISTAB_OK)
    throw UsageError("--omega: expected fkn, khintchine, min or trivial, got '" + o.omega + "'");
  if (o.support < 3 || o.support > 6) throw UsageError("--support: support size must lie in [3, 6]");
  if (o.starts < 1) throw UsageError("--starts: at least one start is required");
  r.support = o.support;
  r.starts = o.starts;
  if (kind == PHISTAB_BOUND_LAMBDA_GENERIC && !o.seed)
    throw UsageError("--seed: lambda-generic is a randomised search; pass --seed for a reproducible run");
  r.seed = o.seed.value_or(0);
  if (kind == PHISTAB_BOUND_UPSILON && a != 0.5)
    throw UsageError("--a: upsilon is defined for balanced functions only (a = 0.5)");
  require_open_unit(a, "--a", "mean a");
  require_open_unit(rho, "--rho", "rho");
  return r;
}

BoundPtr evaluate(const phistab_bound_request& r) {
  phistab_bound* raw = nullptr;
  check(phistab_bound_evaluate(&r, &raw),
        std::string(phistab_bound_kind_name(r.kind)) + " at a=" + fmt(r.a) + ", rho=" + fmt(r.rho));
  return BoundPtr(raw);
}

Json bound_json(const phistab_bound* b) {
  CString s;
  check(phistab_bound_to_json(b, &s.p), "serialising bound");
  return Json::parse(s.str());
}

phistab_oracle_options oracle_options(const Options& o) {
  phistab_oracle_options opts;
  phistab_oracle_options_init(&opts);
  opts.workers = o.workers;
  opts.canonicalize = o.no_canonical ? 0 : 1;
  opts.allow_n5 = o.allow_n5 ? 1 : 0;
  opts.checkpoint = o.checkpoint.empty() ? nullptr : o.checkpoint.c_str();
  opts.chunk_limit = o.chunk_limit;
  if (o.n < 1 || o.n > 5) throw UsageError("--n: exhaustive search supports 1 <= n <= 4 (5 with --allow-n5)");
  if (o.n == 5 && !o.allow_n5) throw UsageError("--n: n = 5 enumerates ~6e8 functions; add --allow-n5 to confirm");
  return opts;
}

Json report_json(const phistab_report* r) {
  CString s;
  check(phistab_report_to_json(r, &s.p), "serialising report");
  return Json::parse(s.str());
}

// ---- subcommands ----------------------------------------------------------

int run_stab(const Options& o, Output& out) {
  if (o.function.empty()) throw UsageError("--function: a function encoding such as n:2;table:a is required");
  phistab_function* raw = nullptr;
  check(phistab_function_parse(o.function.c_str(), &raw), "--function");
  FunctionPtr f(raw);
  const phistab_phi phi = make_phi(single(o.alpha, "--alpha"), o);
  const int n = phistab_function_dimension(f.get());
  std::vector<double> weights(static_cast<std::size_t>(n) + 1);
  check(phistab_function_degree_weights(f.get(), weights.data(), weights.size()), "degree weights");
  CString enc;
  check(phistab_function_encode(f.get(), &enc.p), "encoding");
  if (out.csv()) out.header({"function", "alpha", "symmetric", "power", "rho", "mean", "stability", "mutual_information"});
  for (double rho : parse_range(o.rho, "--rho")) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw UsageError("--rho: rho must lie in [0, 1], got " + fmt(rho));
    double stab = 0.0;
    double mi = 0.0;
    check(phistab_stability(f.get(), phi, rho, &stab), "stability");
    check(phistab_mutual_information(f.get(), phi, rho, &mi), "mutual information");
    const double mean = phistab_function_mean(f.get());
    if (out.csv()) {
      out.row({enc.str(), fmt(phi.alpha), flag(phi.symmetric), flag(phi.power), fmt(rho), fmt(mean), fmt(stab),
                 fmt(mi)});
    } else {
      Json j;
      j["function"] = enc.str();
      j["phi"] = phi_name(phi);
      j["rho"] = rho;
      j["mean"] = mean;
      j["stability"] = num(stab);
      j["mutual_information"] = num(mi);
      j["degree_weights"] = weights;
      out.json(j);
    }
  }
  return kExitOk;
}

const std::vector<std::string> kBoundColumns = {"kind", "a", "alpha", "symmetric", "power", "rho", "value",
                                                "beta", "z1", "z2", "z_tilde", "z_hat", "p", "q",
                                                "feasible", "grid", "refine_iters", "residual"};

std::vector<std::string> bound_row(const phistab_bound_request& r, const phistab_bound_summary& s) {
  return {phistab_bound_kind_name(r.kind), fmt(r.a), fmt(r.phi.alpha), flag(r.phi.symmetric), flag(r.phi.power),
          fmt(r.rho), fmt(s.value), fmt(s.beta), fmt(s.z1), fmt(s.z2), fmt(s.z_tilde), fmt(s.z_hat), fmt(s.p),
          fmt(s.q), flag(s.feasible), std::to_string(s.grid), std::to_string(s.refine_iters), fmt(s.residual)};
}

int run_bound(const Options& o, Output& out) {
  const phistab_bound_kind kind = parse_kind(o.target, "bound");
  const phistab_phi phi = make_phi(single(o.alpha, "--alpha"), o);
  check_regime(kind, phi);
  const double a = single(o.a, "--a");
  if (out.csv()) out.header(kBoundColumns);
  for (double rho : parse_range(o.rho, "--rho")) {
    const phistab_bound_request r = make_request(kind, a, rho, phi, o);
    const BoundPtr b = evaluate(r);
    if (out.csv()) {
      phistab_bound_summary s;
      check(phistab_bound_summarize(b.get(), &s), "summary");
      out.row(bound_row(r, s));
    } else {
      Json j;
      j["a"] = a;
      j["rho"] = rho;
      j["phi"] = phi_name(phi);
      const Json fields = bound_json(b.get());
      for (const auto& [key, value] : fields.items()) j[key] = value;
      out.json(j);
    }
  }
  return kExitOk;
}

int run_sweep(const Options& o, Output& out) {
  const phistab_bound_kind kind = parse_kind(o.target, "sweep");
  const double a = single(o.a, "--a");
  const auto alphas = parse_range(o.alpha, "--alpha");
  const auto rhos = parse_range(o.rho, "--rho");
  for (double alpha : alphas) check_regime(kind, make_phi(alpha, o));
  if (out.csv()) {
    out.header({"kind", "a", "alpha", "symmetric", "power", "rho", "value", "dictator", "gap", "feasible", "beta",
                "z1", "z2", "p", "q", "grid", "refine_iters", "residual"});
  }
  for (double alpha : alphas) {
    const phistab_phi phi = make_phi(alpha, o);
    for (double rho : rhos) {
      const phistab_bound_request r = make_request(kind, a, rho, phi, o);
      const BoundPtr b = evaluate(r);
      phistab_bound_summary s;
      check(phistab_bound_summarize(b.get(), &s), "summary");
      double dictator = std::nan("");
      if (a == 0.5) check(phistab_dictator_stability(phi, rho, &dictator), "dictator stability");
      const double gap = s.value - dictator;
      if (out.csv()) {
        out.row({phistab_bound_kind_name(kind), fmt(a), fmt(alpha), flag(phi.symmetric), flag(phi.power), fmt(rho),
                 fmt(s.value), fmt(dictator), fmt(gap), flag(s.feasible), fmt(s.beta), fmt(s.z1), fmt(s.z2),
                 fmt(s.p), fmt(s.q), std::to_string(s.grid), std::to_string(s.refine_iters), fmt(s.residual)});
      } else {
        Json j;
        j["a"] = a;
        j["alpha"] = alpha;
        j["rho"] = rho;
        j["phi"] = phi_name(phi);
        j["dictator"] = num(dictator);
        j["gap"] = num(gap);
        const Json fields = bound_json(b.get());
        for (const auto& [key, value] : fields.items()) j[key] = value;
        out.json(j);
      }
    }
  }
  return kExitOk;
}

int run_roots(const Options& o, Output& out) {
  if (!(o.tol > 0.0)) throw UsageError("--tol: tolerance must be positive");
  const std::vector<std::string> columns = {"quantity", "alpha", "root", "residual", "iterations",
                                            "bracket_lo", "bracket_hi", "rho_threshold"};
  auto emit = [&](const std::string& quantity, double alpha, const phistab_root& r, double threshold) {
    if (out.csv()) {
      out.row({quantity, fmt(alpha), fmt(r.root), fmt(r.residual), std::to_string(r.iterations), fmt(r.bracket_lo),
               fmt(r.bracket_hi), fmt(threshold)});
    } else {
      Json j;
      j["quantity"] = quantity;
      if (!std::isnan(alpha)) j["alpha"] = alpha;
      j["root"] = num(r.root);
      j["residual"] = num(r.residual);
      j["iterations"] = r.iterations;
      j["bracket"] = Json::array({num(r.bracket_lo), num(r.bracket_hi)});
      if (!std::isnan(threshold)) j["rho_threshold"] = num(threshold);
      out.json(j);
    }
  };
  if (out.csv()) out.header(columns);
  if (o.target == "rho-star") {
    phistab_root r;
    check(phistab_rho_star(o.tol, &r), "--tol");
    emit("rho-star", std::nan(""), r, std::nan(""));
  } else if (o.target == "theta") {
    for (double alpha : parse_range(o.alpha, "--alpha")) {
      if (!(alpha > 1.0 && alpha < 2.0)) throw UsageError("--alpha: theta is defined for 1 < alpha < 2, got " + fmt(alpha));
      phistab_root r;
      check(phistab_theta(alpha, o.tol, &r), "theta at --alpha " + fmt(alpha));
      emit("theta", alpha, r, (1.0 - r.root) / (1.0 + r.root));
    }
  } else {
    throw UsageError("roots: unknown quantity '" + o.target + "' (expected rho-star or theta)");
  }
  return kExitOk;
}

int run_region(const Options& o, Output& out) {
  if (out.csv()) out.header({"alpha", "rho_threshold"});
  for (double alpha : parse_range(o.alpha, "--alpha")) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw UsageError("--alpha: the region curve needs 1 < alpha < 2, got " + fmt(alpha));
    double threshold = 0.0;
    check(phistab_region_threshold(alpha, &threshold), "region threshold at --alpha " + fmt(alpha));
    if (out.csv())
      out.row({fmt(alpha), fmt(threshold)});
    else
      out.json(Json{{"alpha", alpha}, {"rho_threshold", threshold}});
  }
  return kExitOk;
}

int run_fkn(const Options& o, Output& out) {
  if (out.csv()) out.header({"beta", "omega_fkn", "omega_khintchine", "omega_min", "exhaustive_W4"});
  for (double beta : parse_range(o.beta, "--beta")) {
    if (!(beta >= 0.0 && beta <= 0.5)) throw UsageError("--beta: beta must lie in [0, 1/2], got " + fmt(beta));
    double fkn = 0.0, khintchine = 0.0, minimum = 0.0, w4 = 0.0;
    int found = 0;
    check(phistab_omega(PHISTAB_OMEGA_FKN, beta, &fkn), "omega_fkn");
    check(phistab_omega(PHISTAB_OMEGA_KHINTCHINE, beta, &khintchine), "omega_khintchine");
    check(phistab_omega(PHISTAB_OMEGA_MIN, beta, &minimum), "omega_min");
    check(phistab_exhaustive_w_beta(4, 0.5, beta, &w4, &found), "exhaustive W at n = 4");
    if (out.csv()) {
      out.row({fmt(beta), fmt(fkn), fmt(khintchine), fmt(minimum), found ? fmt(w4) : ""});
    } else {
      out.json(Json{{"beta", beta},
                    {"omega_fkn", num(fkn)},
                    {"omega_khintchine", num(khintchine)},
                    {"omega_min", num(minimum)},
                    {"exhaustive_W4", found ? num(w4) : Json(nullptr)}});
    }
  }
  return kExitOk;
}

int run_verify(const Options& o, Output& out) {
  const phistab_phi phi = make_phi(single(o.alpha, "--alpha"), o);
  const phistab_oracle_options opts = oracle_options(o);
  bool all_pass = true;
  if (o.target == "dictator") {
    if (out.csv()) out.header({"check", "n", "alpha", "symmetric", "power", "rho", "enumerated_max", "dictator_value", "gap",
                  "pass"});
    for (double rho : parse_range(o.rho, "--rho")) {
      require_open_unit(rho, "--rho", "rho");
      phistab_report* raw = nullptr;
      check(phistab_verify_dictator(o.n, phi, rho, &opts, &raw), "verify dictator at --rho " + fmt(rho));
      const ReportPtr r(raw);
      const bool pass = phistab_report_pass(r.get()) != 0;
      all_pass = all_pass && pass;
      if (out.csv()) {
        const double gap = phistab_report_gap(r.get());
        const double max = phistab_report_max(r.get());
        out.row({"dictator", std::to_string(o.n), fmt(phi.alpha), flag(phi.symmetric), flag(phi.power), fmt(rho),
                 fmt(max), fmt(max - gap), fmt(gap), flag(pass)});
      } else {
        out.json(report_json(r.get()));
      }
    }
  } else if (o.target == "dominance") {
    if (o.bound.empty()) throw UsageError("--bound: verify dominance needs the bound kind to test");
    const phistab_bound_kind kind = parse_kind(o.bound, "--bound");
    check_regime(kind, phi);
    const double a = single(o.a, "--a");
    if (out.csv()) {
      out.header({"check", "n", "bound", "alpha", "symmetric", "power", "a", "rho", "enumerated_max", "bound_value",
                  "dominance_margin", "pass"});
    }
    for (double rho : parse_range(o.rho, "--rho")) {
      const phistab_bound_request req = make_request(kind, a, rho, phi, o);
      phistab_report* raw = nullptr;
      check(phistab_verify_dominance(o.n, &req, &opts, &raw), "verify dominance at --rho " + fmt(rho));
      const ReportPtr r(raw);
      const bool pass = phistab_report_pass(r.get()) != 0;
      all_pass = all_pass && pass;
      if (out.csv()) {
        const double max = phistab_report_max(r.get());
        const double margin = phistab_report_margin(r.get());
        out.row({"dominance", std::to_string(o.n), phistab_bound_kind_name(kind), fmt(phi.alpha), flag(phi.symmetric),
                 flag(phi.power), fmt(a), fmt(rho), fmt(max), fmt(max + margin), fmt(margin), flag(pass)});
      } else {
        out.json(report_json(r.get()));
      }
    }
  } else {
    throw UsageError("verify: unknown check '" + o.target + "' (expected dictator or dominance)");
  }
  return all_pass ? kExitOk : kExitFailedCheck;
}

void add_phi(CLI::App* cmd, Options& o, bool range) {
  cmd->add_option("--alpha", o.alpha, range ? "alpha value or lo:hi:step range" : "alpha in [1, 16]");
  cmd->add_flag("--sym", o.sym, "use the symmetric form Phi(t) + Phi(1 - t)");
  cmd->add_flag("--power", o.power, "use Phi(t) = t^alpha instead of t ln_alpha(t)");
}

void add_search(CLI::App* cmd, Options& o) {
  cmd->add_option("--a", o.a, "mean a (default 0.5)");
  cmd->add_option("--rho", o.rho, "rho value or lo:hi:step range");
  cmd->add_option("--grid", o.grid, "grid points per dimension (default 400)");
  cmd->add_option("--tol", o.tol, "refinement tolerance (default 1e-10)");
  cmd->add_option("--mode", o.mode, "gamma-tilde mode: auto, direct or reflected");
  cmd->add_option("--omega", o.omega, "upsilon weight bound: min, fkn, khintchine or trivial");
  cmd->add_option("--support", o.support, "lambda-generic support size m in [3, 6]");
  cmd->add_option("--starts", o.starts, "lambda-generic multistart count (default 64)");
  cmd->add_option("--seed", o.seed, "lambda-generic seed (required for that bound)");
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.output, "write to this file instead of standard output");
  cmd->add_option("--workers", o.workers, "worker threads (output does not depend on it)");
}

void add_oracle(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "number of variables, 1..4 (default 4)");
  cmd->add_flag("--no-canonical", o.no_canonical, "evaluate every function instead of one per symmetry orbit");
  cmd->add_flag("--allow-n5", o.allow_n5, "permit the long n = 5 run");
  cmd->add_option("--checkpoint", o.checkpoint, "persist progress to this file and resume from it");
  cmd->add_option("--chunk-limit", o.chunk_limit, "stop a chunked run after this many chunks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phi-stability of Boolean functions: bounds, roots and exhaustive checks"};
  app.require_subcommand(1);
  Options o;

  auto* stab = app.add_subcommand("stab", "stability and mutual information of one function");
  stab->add_option("--function", o.function, "encoding n:<dim>;table:<hex>");
  stab->add_option("--rho", o.rho, "rho value or lo:hi:step range");
  add_phi(stab, o, false);
  add_output(stab, o);

  auto* bound = app.add_subcommand("bound", "evaluate one upper bound");
  bound->add_option("kind", o.target, "gamma-bar, gamma-hat, lambda2, gamma-tilde, upsilon or lambda-generic")
      ->required();
  add_phi(bound, o, false);
  add_search(bound, o);
  add_output(bound, o);

  auto* roots = app.add_subcommand("roots", "scalar roots: rho-star or theta");
  roots->add_option("quantity", o.target, "rho-star or theta")->required();
  roots->add_option("--alpha", o.alpha, "alpha value or range (theta)");
  roots->add_option("--tol", o.tol, "bracket width tolerance");
  add_output(roots, o);

  auto* region = app.add_subcommand("region", "dictator-optimality threshold curve for alpha in (1, 2)");
  region->add_option("--alpha", o.alpha, "alpha range lo:hi:step (default 1.01:1.99:0.01)");
  add_output(region, o);

  auto* fkn = app.add_subcommand("fkn", "level-1 weight bounds against exhaustive n = 4 values");
  fkn->add_option("--beta", o.beta, "beta range lo:hi:step (default 0:0.5:0.0625)");
  add_output(fkn, o);

  auto* verify = app.add_subcommand("verify", "exhaustive checks at small n");
  verify->add_option("check", o.target, "dictator or dominance")->required();
  verify->add_option("--bound", o.bound, "bound kind for the dominance check");
  add_phi(verify, o, false);
  add_search(verify, o);
  add_oracle(verify, o);
  add_output(verify, o);

  auto* sweep = app.add_subcommand("sweep", "bound minus dictator stability over rho and alpha");
  sweep->add_option("kind", o.target, "bound kind")->required();
  add_phi(sweep, o, true);
  add_search(sweep, o);
  add_output(sweep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (cmd == region && region->count("--alpha") == 0) o.alpha = "1.01:1.99:0.01";
  if (o.format.empty()) o.format = (cmd == region || cmd == fkn || cmd == sweep) ? "csv" : "json";

  try {
    Output out(o.output, o.format);
    if (cmd == stab) return run_stab(o, out);
    if (cmd == bound) return run_bound(o, out);
    if (cmd == roots) return run_roots(o, out);
    if (cmd == region) return run_region(o, out);
    if (cmd == fkn) return run_fkn(o, out);
    if (cmd == verify) return run_verify(o, out);
    if (cmd == sweep) return run_sweep(o, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
