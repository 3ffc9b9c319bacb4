#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phi_functionals.hpp"
#include "stability_bounds.hpp"

namespace phistab {

struct OracleOptions {
  unsigned workers = 1;
  // Skip all but one member of each permutation/sign-flip orbit (n <= 4).
  bool canonicalize = true;
  // n = 5 runs for hours; it must be requested explicitly.
  bool allow_n5 = false;
  // Chunked run with progress persisted to this file; resumes if it exists.
  std::string checkpoint;
  // Stop after this many chunks in a chunked run (0: run to completion).
  std::size_t chunk_limit = 0;
};

struct VerificationReport {
  std::string check = "max_stability";
  int n = 0;
  double rho = 0.0;
  std::string phi;
  double mean = 0.0;
  double enumerated_max = kNaN;
  std::vector<BooleanFunction> attaining;            // every maximiser, ascending
  std::vector<BooleanFunction> attaining_canonical;  // orbit minima, ascending
  bool attaining_truncated = false;
  double dictator_value = kNaN;
  double gap = kNaN;
  std::string bound_kind;
  double bound_value = kNaN;
  double dominance_margin = kNaN;
  std::uint64_t enumerated = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  bool complete = true;
  bool pass = true;
  std::vector<std::string> notes;
};

inline constexpr double kGapTolerance = 1e-12;
inline constexpr double kDominanceTolerance = 1e-9;

// Smallest table in the orbit of `table` under coordinate permutations and
// sign flips (n <= 5).
std::uint64_t canonical_table(int n, std::uint64_t table);

std::uint64_t binomial(unsigned n, unsigned k);

VerificationReport max_stability(int n, double a, const PhiSpec& spec, double rho, const OracleOptions& options = {});
std::vector<VerificationReport> verify_dictator(int n, const PhiSpec& spec, const std::vector<double>& rho_grid,
                                                const OracleOptions& options = {});
VerificationReport verify_dominance(int n, double a, const PhiSpec& spec, double rho, const BoundResult& bound,
                                    const OracleOptions& options = {});

}  // namespace phistab
