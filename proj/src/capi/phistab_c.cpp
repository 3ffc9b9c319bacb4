#include "phistab/phistab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cube_fourier.hpp"
#include "error.hpp"
#include "exhaustive_oracle.hpp"
#include "fkn_weights.hpp"
#include "phi_functionals.hpp"
#include "scalar_roots.hpp"
#include "serialize.hpp"
#include "stability_bounds.hpp"

struct phistab_function {
  phistab::BooleanFunction f;
};

struct phistab_bound {
  phistab::BoundResult result;
};

struct phistab_report {
  phistab::VerificationReport report;
};

namespace {

thread_local std::string last_error;

phistab_status record(phistab_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
phistab_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return PHISTAB_OK;
  } catch (const phistab::Error& e) {
    return record(static_cast<phistab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(PHISTAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(PHISTAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(PHISTAB_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* name) {
  phistab::require(p != nullptr, phistab::ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

phistab::PhiSpec to_spec(phistab_phi phi) {
  return phistab::PhiSpec(phi.alpha, phi.symmetric != 0,
                          phi.power ? phistab::PhiFamily::power : phistab::PhiFamily::tsallis);
}

phistab::WeightBoundKind to_weight_kind(phistab_omega_kind kind) {
  switch (kind) {
    case PHISTAB_OMEGA_MIN:
      return phistab::WeightBoundKind::pointwise_min;
    case PHISTAB_OMEGA_FKN:
      return phistab::WeightBoundKind::fkn_recursive;
    case PHISTAB_OMEGA_KHINTCHINE:
      return phistab::WeightBoundKind::khintchine;
    case PHISTAB_OMEGA_TRIVIAL:
      return phistab::WeightBoundKind::chang_combined;
  }
  phistab::fail(phistab::ErrorCode::invalid_argument, "unknown omega kind");
}

phistab::BoundKind to_bound_kind(phistab_bound_kind kind) {
  phistab::require(kind >= PHISTAB_BOUND_GAMMA_BAR && kind <= PHISTAB_BOUND_LAMBDA_GENERIC,
                   phistab::ErrorCode::invalid_argument, "unknown bound kind");
  return static_cast<phistab::BoundKind>(kind);
}

phistab::BoundResult evaluate(const phistab_bound_request& r) {
  const phistab::PhiSpec spec = to_spec(r.phi);
  phistab::SearchOptions search;
  search.grid = r.grid;
  search.tolerance = r.tolerance;
  search.workers = r.workers;
  switch (to_bound_kind(r.kind)) {
    case phistab::BoundKind::gamma_bar:
      return phistab::gamma_bar(r.a, r.rho, spec, search);
    case phistab::BoundKind::gamma_hat:
      return phistab::gamma_hat(r.a, r.rho, spec, search);
    case phistab::BoundKind::lambda2:
      return phistab::lambda_statement2(r.a, r.rho, spec, search);
    case phistab::BoundKind::gamma_tilde: {
      phistab::TildeMode mode = phistab::TildeMode::automatic;
      if (r.tilde_mode == PHISTAB_TILDE_DIRECT) mode = phistab::TildeMode::direct;
      if (r.tilde_mode == PHISTAB_TILDE_REFLECTED) mode = phistab::TildeMode::reflected;
      return phistab::gamma_tilde(r.a, r.rho, spec, mode, search);
    }
    case phistab::BoundKind::upsilon: {
      const phistab::WeightBoundSpec omega{to_weight_kind(r.omega), 0.25};
      return phistab::upsilon_bar(r.rho, spec, omega, search);
    }
    case phistab::BoundKind::lambda_generic: {
      phistab::MultistartOptions multi;
      multi.support = r.support;
      multi.starts = r.starts;
      multi.seed = r.seed;
      multi.tolerance = r.tolerance;
      multi.workers = r.workers;
      return phistab::lambda_generic(r.a, r.rho, spec, multi);
    }
  }
  phistab::fail(phistab::ErrorCode::internal, "unhandled bound kind");
}

phistab::OracleOptions to_oracle(const phistab_oracle_options* options) {
  phistab::OracleOptions out;
  if (!options) return out;
  out.workers = options->workers;
  out.canonicalize = options->canonicalize != 0;
  out.allow_n5 = options->allow_n5 != 0;
  if (options->checkpoint) out.checkpoint = options->checkpoint;
  out.chunk_limit = options->chunk_limit;
  return out;
}

void copy_root(const phistab::RootResult& r, phistab_root* out) {
  *out = {r.root, r.residual, r.iterations, r.bracket_lo, r.bracket_hi};
}

}  // namespace

extern "C" {

const char* phistab_version(void) { return "0.1.0"; }

const char* phistab_status_name(phistab_status status) {
  switch (status) {
    case PHISTAB_OK:
      return "ok";
    case PHISTAB_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PHISTAB_ERR_DOMAIN:
      return "domain error";
    case PHISTAB_ERR_PARSE:
      return "parse error";
    case PHISTAB_ERR_INFEASIBLE:
      return "infeasible";
    case PHISTAB_ERR_NOT_FOUND:
      return "not found";
    case PHISTAB_ERR_IO:
      return "i/o error";
    case PHISTAB_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* phistab_last_error(void) { return last_error.c_str(); }

void phistab_string_free(char* s) { std::free(s); }

phistab_status phistab_function_parse(const char* text, phistab_function** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new phistab_function{phistab::BooleanFunction::parse(text)};
  });
}

phistab_status phistab_function_dictator(int n, int k, int sign, phistab_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = new phistab_function{phistab::dictator(n, k, sign)};
  });
}

phistab_status phistab_function_subcube(int n, const int* coords, const int* signs, size_t count,
                                        phistab_function** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) {
      need(coords, "coords");
      need(signs, "signs");
    }
    std::vector<std::pair<int, int>> fixed;
    for (size_t i = 0; i < count; ++i) fixed.emplace_back(coords[i], signs[i]);
    *out = new phistab_function{phistab::subcube_indicator(n, fixed)};
  });
}

void phistab_function_free(phistab_function* f) { delete f; }

int phistab_function_dimension(const phistab_function* f) { return f ? f->f.dimension() : -1; }

double phistab_function_mean(const phistab_function* f) { return f ? f->f.mean() : std::nan(""); }

phistab_status phistab_function_encode(const phistab_function* f, char** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = duplicate(f->f.encode());
  });
}

phistab_status phistab_function_degree_weights(const phistab_function* f, double* out, size_t len) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    const phistab::DegreeWeights w = phistab::degree_weights(phistab::wht(f->f));
    phistab::require(len >= w.w.size(), phistab::ErrorCode::invalid_argument,
                     "degree weight buffer needs n + 1 entries");
    std::copy(w.w.begin(), w.w.end(), out);
  });
}

phistab_status phistab_phi_eval(phistab_phi phi, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_spec(phi).phi(t);
  });
}

phistab_status phistab_stability(const phistab_function* f, phistab_phi phi, double rho, double* out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = phistab::phi_stability(f->f, to_spec(phi), rho);
  });
}

phistab_status phistab_mutual_information(const phistab_function* f, phistab_phi phi, double rho, double* out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = phistab::phi_mutual_information(f->f, to_spec(phi), rho);
  });
}

phistab_status phistab_dictator_stability(phistab_phi phi, double rho, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = phistab::dictator_stability(to_spec(phi), rho);
  });
}

void phistab_bound_request_init(phistab_bound_request* request) {
  if (!request) return;
  *request = {};
  request->kind = PHISTAB_BOUND_GAMMA_BAR;
  request->a = 0.5;
  request->rho = 0.5;
  request->phi = {1.0, 1, 0};
  request->grid = 400;
  request->tolerance = 1e-10;
  request->workers = 1;
  request->tilde_mode = PHISTAB_TILDE_AUTO;
  request->omega = PHISTAB_OMEGA_MIN;
  request->support = 3;
  request->starts = 64;
  request->seed = 0;
}

phistab_status phistab_bound_kind_parse(const char* name, phistab_bound_kind* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    const auto kind = phistab::parse_bound_kind(name);
    phistab::require(kind.has_value(), phistab::ErrorCode::parse, std::string("unknown bound kind '") + name + "'");
    *out = static_cast<phistab_bound_kind>(*kind);
  });
}

const char* phistab_bound_kind_name(phistab_bound_kind kind) {
  if (kind < PHISTAB_BOUND_GAMMA_BAR || kind > PHISTAB_BOUND_LAMBDA_GENERIC) return "unknown";
  return phistab::to_string(static_cast<phistab::BoundKind>(kind));
}

phistab_status phistab_omega_kind_parse(const char* name, phistab_omega_kind* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    const auto kind = phistab::parse_weight_bound_kind(name);
    phistab::require(kind.has_value(), phistab::ErrorCode::parse, std::string("unknown omega kind '") + name + "'");
    switch (*kind) {
      case phistab::WeightBoundKind::pointwise_min:
        *out = PHISTAB_OMEGA_MIN;
        break;
      case phistab::WeightBoundKind::fkn_recursive:
        *out = PHISTAB_OMEGA_FKN;
        break;
      case phistab::WeightBoundKind::khintchine:
        *out = PHISTAB_OMEGA_KHINTCHINE;
        break;
      case phistab::WeightBoundKind::chang_combined:
        *out = PHISTAB_OMEGA_TRIVIAL;
        break;
    }
  });
}

phistab_status phistab_regime_check(phistab_bound_kind kind, phistab_phi phi, char** violation) {
  return guarded([&] {
    need(violation, "violation");
    *violation = nullptr;
    const auto why = phistab::regime_violation(to_bound_kind(kind), to_spec(phi));
    if (why) *violation = duplicate(*why);
  });
}

phistab_status phistab_bound_evaluate(const phistab_bound_request* request, phistab_bound** out) {
  return guarded([&] {
    need(request, "request");
    need(out, "out");
    *out = new phistab_bound{evaluate(*request)};
  });
}

void phistab_bound_free(phistab_bound* bound) { delete bound; }

phistab_status phistab_bound_summarize(const phistab_bound* bound, phistab_bound_summary* out) {
  return guarded([&] {
    need(bound, "bound");
    need(out, "out");
    const phistab::BoundResult& r = bound->result;
    *out = {r.value,
            r.argmax.beta,
            r.argmax.z1,
            r.argmax.z2,
            r.argmax.z_tilde,
            r.argmax.z_hat,
            r.argmax.p,
            r.argmax.q,
            r.feasible ? 1 : 0,
            r.diagnostics.grid,
            r.diagnostics.refine_iters,
            r.diagnostics.residual};
  });
}

phistab_status phistab_bound_to_json(const phistab_bound* bound, char** out) {
  return guarded([&] {
    need(bound, "bound");
    need(out, "out");
    *out = duplicate(phistab::to_json(bound->result).dump());
  });
}

void phistab_oracle_options_init(phistab_oracle_options* options) {
  if (!options) return;
  *options = {};
  options->workers = 1;
  options->canonicalize = 1;
}

phistab_status phistab_max_stability(int n, double a, phistab_phi phi, double rho,
                                     const phistab_oracle_options* options, phistab_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = new phistab_report{phistab::max_stability(n, a, to_spec(phi), rho, to_oracle(options))};
  });
}

phistab_status phistab_verify_dictator(int n, phistab_phi phi, double rho, const phistab_oracle_options* options,
                                       phistab_report** out) {
  return guarded([&] {
    need(out, "out");
    auto reports = phistab::verify_dictator(n, to_spec(phi), {rho}, to_oracle(options));
    *out = new phistab_report{std::move(reports.front())};
  });
}

phistab_status phistab_verify_dominance(int n, const phistab_bound_request* request,
                                        const phistab_oracle_options* options, phistab_report** out) {
  return guarded([&] {
    need(request, "request");
    need(out, "out");
    phistab_bound_request r = *request;
    if (r.phi.symmetric && r.a > 0.5) r.a = 1.0 - r.a;
    const phistab::BoundResult bound = evaluate(r);
    auto report = phistab::verify_dominance(n, request->a, to_spec(request->phi), request->rho, bound,
                                            to_oracle(options));
    if (r.a != request->a) report.notes.push_back("bound evaluated at 1 - a by symmetry of Phi");
    *out = new phistab_report{std::move(report)};
  });
}

void phistab_report_free(phistab_report* report) { delete report; }

int phistab_report_pass(const phistab_report* report) { return report && report->report.pass ? 1 : 0; }

double phistab_report_max(const phistab_report* report) {
  return report ? report->report.enumerated_max : std::nan("");
}

double phistab_report_gap(const phistab_report* report) { return report ? report->report.gap : std::nan(""); }

double phistab_report_margin(const phistab_report* report) {
  return report ? report->report.dominance_margin : std::nan("");
}

phistab_status phistab_report_to_json(const phistab_report* report, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = duplicate(phistab::to_json(report->report).dump());
  });
}

phistab_status phistab_psi(double rho, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = phistab::psi(rho);
  });
}

phistab_status phistab_rho_star(double tol, phistab_root* out) {
  return guarded([&] {
    need(out, "out");
    copy_root(phistab::rho_star(tol), out);
  });
}

phistab_status phistab_theta(double alpha, double tol, phistab_root* out) {
  return guarded([&] {
    need(out, "out");
    copy_root(phistab::theta(alpha, tol), out);
  });
}

phistab_status phistab_region_threshold(double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = phistab::region_threshold(alpha);
  });
}

phistab_status phistab_omega(phistab_omega_kind kind, double beta, double* out) {
  return guarded([&] {
    need(out, "out");
    const phistab::WeightBoundSpec spec{to_weight_kind(kind), 0.25};
    *out = spec(beta);
  });
}

phistab_status phistab_exhaustive_w(int n, double a, double* value, phistab_function** witness) {
  return guarded([&] {
    need(value, "value");
    phistab::WeightMaximum m = phistab::exhaustive_W(n, a);
    *value = m.value;
    if (witness) *witness = new phistab_function{std::move(m.witness)};
  });
}

phistab_status phistab_exhaustive_w_beta(int n, double a, double beta, double* value, int* found) {
  return guarded([&] {
    need(value, "value");
    need(found, "found");
    const auto m = phistab::exhaustive_W_beta(n, a, beta);
    *found = m ? 1 : 0;
    *value = m ? m->value : std::nan("");
  });
}

phistab_status phistab_lemma_checks(const double* rho, size_t rho_count, size_t p_points, const double* alpha,
                                    size_t alpha_count, size_t* violations, char** json) {
  return guarded([&] {
    need(rho, "rho");
    need(alpha, "alpha");
    const phistab::LemmaCheckReport report = phistab::lemma_grid_checks(
        std::vector<double>(rho, rho + rho_count), p_points, std::vector<double>(alpha, alpha + alpha_count));
    if (violations) *violations = report.violations.size();
    if (json) *json = duplicate(phistab::to_json(report).dump());
  });
}

}  // extern "C"
