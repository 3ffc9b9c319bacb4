#include "exhaustive_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>

#include "error.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace phistab {

namespace {

constexpr int kMaxEnumerated = 5;
constexpr std::size_t kAttainingCap = 100000;
constexpr int kChunkBits = 8;

using PointMap = std::vector<std::uint8_t>;

// Point maps of the hyperoctahedral group acting on {-1,1}^n.
const std::vector<PointMap>& group(int n) {
  static std::once_flag once[kMaxEnumerated + 1];
  static std::vector<PointMap> cache[kMaxEnumerated + 1];
  std::call_once(once[n], [n] {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const std::size_t points = std::size_t{1} << n;
    do {
      for (std::size_t flip = 0; flip < points; ++flip) {
        PointMap map(points);
        for (std::size_t x = 0; x < points; ++x) {
          std::size_t y = 0;
          for (int j = 0; j < n; ++j) {
            const std::size_t bit = ((x ^ flip) >> j) & 1u;
            y |= bit << perm[static_cast<std::size_t>(j)];
          }
          map[x] = static_cast<std::uint8_t>(y);
        }
        cache[n].push_back(std::move(map));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return cache[n];
}

std::uint64_t apply(const PointMap& map, std::uint64_t table) {
  std::uint64_t out = 0;
  while (table) {
    const int x = std::countr_zero(table);
    out |= std::uint64_t{1} << map[static_cast<std::size_t>(x)];
    table &= table - 1;
  }
  return out;
}

std::vector<std::uint64_t> orbit(int n, std::uint64_t table) {
  std::vector<std::uint64_t> out;
  for (const PointMap& map : group(n)) out.push_back(apply(map, table));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Next integer with the same popcount (Gosper).
std::uint64_t next_combination(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

template <class Visit>
void for_each_combination(unsigned bits, unsigned k, Visit visit) {
  if (k > bits) return;
  if (k == 0) {
    visit(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << bits;
  for (std::uint64_t v = (std::uint64_t{1} << k) - 1; v < limit; v = next_combination(v)) visit(v);
}

double stability_of(int n, std::uint64_t table, const PhiSpec& spec, double rho) {
  return phi_stability(BooleanFunction::from_table(n, table), spec, rho);
}

struct Candidate {
  std::uint64_t table;
  double value;
};

// Running maximum with every table within kGapTolerance of it, in visit order.
class Leaderboard {
 public:
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Candidate> entries;
  bool truncated = false;

  void offer(std::uint64_t table, double value) {
    if (value > best) {
      best = value;
      std::erase_if(entries, [&](const Candidate& c) { return c.value < best - kGapTolerance; });
    }
    if (value >= best - kGapTolerance) {
      if (entries.size() < kAttainingCap)
        entries.push_back({table, value});
      else
        truncated = true;
    }
  }
};

std::string table_hex(std::uint64_t table) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(table));
  return buf;
}

struct ChunkState {
  std::size_t next_chunk = 0;
  std::uint64_t enumerated = 0;
  Leaderboard board;
};

void save_checkpoint(const std::string& path, int n, unsigned k, double rho, const std::string& phi,
                     const ChunkState& state) {
  nlohmann::ordered_json j;
  j["format"] = "phistab-oracle-checkpoint";
  j["version"] = 1;
  j["n"] = n;
  j["ones"] = k;
  j["rho"] = rho;
  j["phi"] = phi;
  j["next_chunk"] = state.next_chunk;
  j["enumerated"] = state.enumerated;
  j["best"] = state.board.best;
  j["truncated"] = state.board.truncated;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const Candidate& c : state.board.entries) entries.push_back({table_hex(c.table), c.value});
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    require(static_cast<bool>(out), ErrorCode::io, "cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, ErrorCode::io, "cannot move checkpoint into place: " + path);
}

bool load_checkpoint(const std::string& path, int n, unsigned k, double rho, const std::string& phi,
                     ChunkState& state) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, "checkpoint " + path + " is not valid JSON: " + e.what());
  }
  try {
    require(j.at("format") == "phistab-oracle-checkpoint" && j.at("version") == 1, ErrorCode::parse,
            "checkpoint " + path + " has an unknown format");
    require(j.at("n") == n && j.at("ones") == k && j.at("rho").get<double>() == rho && j.at("phi") == phi,
            ErrorCode::invalid_argument, "checkpoint " + path + " belongs to a different run");
    state.next_chunk = j.at("next_chunk").get<std::size_t>();
    state.enumerated = j.at("enumerated").get<std::uint64_t>();
    state.board.best = j.at("best").is_null() ? -std::numeric_limits<double>::infinity() : j.at("best").get<double>();
    state.board.truncated = j.at("truncated").get<bool>();
    for (const auto& e : j.at("entries")) {
      state.board.entries.push_back(
          {std::stoull(e.at(0).get<std::string>(), nullptr, 16), e.at(1).get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, "checkpoint " + path + " is malformed: " + e.what());
  }
  return true;
}

void run_chunked(int n, unsigned k, const PhiSpec& spec, double rho, const OracleOptions& options,
                 VerificationReport& report, Leaderboard& board) {
  const unsigned bits = 1u << n;
  const unsigned high_bits = bits >= 16 ? kChunkBits : 0;
  const unsigned low_bits = bits - high_bits;
  const std::size_t chunks = std::size_t{1} << high_bits;

  ChunkState state;
  if (!options.checkpoint.empty() && load_checkpoint(options.checkpoint, n, k, rho, spec.describe(), state)) {
    report.notes.push_back("resumed from checkpoint at chunk " + std::to_string(state.next_chunk));
  }
  std::size_t processed = 0;
  while (state.next_chunk < chunks) {
    if (options.chunk_limit != 0 && processed >= options.chunk_limit) break;
    const std::uint64_t high = state.next_chunk;
    const unsigned high_ones = static_cast<unsigned>(std::popcount(high));
    std::vector<std::uint64_t> tables;
    if (high_ones <= k) {
      for_each_combination(low_bits, k - high_ones,
                           [&](std::uint64_t low) { tables.push_back((high << low_bits) | low); });
    }
    std::vector<double> values(tables.size());
    parallel_for(tables.size(), options.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) values[i] = stability_of(n, tables[i], spec, rho);
    });
    for (std::size_t i = 0; i < tables.size(); ++i) state.board.offer(tables[i], values[i]);
    state.enumerated += tables.size();
    ++state.next_chunk;
    ++processed;
    if (!options.checkpoint.empty()) save_checkpoint(options.checkpoint, n, k, rho, spec.describe(), state);
  }
  report.complete = state.next_chunk >= chunks;
  report.enumerated = state.enumerated;
  report.evaluated = state.enumerated;
  board = std::move(state.board);
  report.notes.push_back("chunked enumeration without orbit skipping");
}

void run_in_memory(int n, unsigned k, const PhiSpec& spec, double rho, const OracleOptions& options,
                   VerificationReport& report, Leaderboard& board) {
  const unsigned bits = 1u << n;
  std::vector<std::uint64_t> reps;
  std::vector<std::vector<std::uint64_t>> orbits;
  std::uint64_t enumerated = 0;
  if (options.canonicalize) {
    // Tables are visited in increasing order, so the first unseen member of
    // an orbit is its minimum.
    std::vector<bool> seen(std::size_t{1} << bits, false);
    for_each_combination(bits, k, [&](std::uint64_t table) {
      ++enumerated;
      if (seen[table]) return;
      std::vector<std::uint64_t> members = orbit(n, table);
      for (std::uint64_t m : members) seen[m] = true;
      reps.push_back(table);
      orbits.push_back(std::move(members));
    });
  } else {
    for_each_combination(bits, k, [&](std::uint64_t table) {
      ++enumerated;
      reps.push_back(table);
    });
  }
  std::vector<double> values(reps.size());
  parallel_for(reps.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = stability_of(n, reps[i], spec, rho);
  });
  for (std::size_t i = 0; i < reps.size(); ++i) board.offer(reps[i], values[i]);
  if (options.canonicalize) {
    // Expand attaining representatives to their full orbits.
    std::vector<Candidate> expanded;
    for (const Candidate& c : board.entries) {
      const auto it = std::lower_bound(reps.begin(), reps.end(), c.table);
      for (std::uint64_t m : orbits[static_cast<std::size_t>(it - reps.begin())]) expanded.push_back({m, c.value});
    }
    board.entries = std::move(expanded);
  }
  report.enumerated = enumerated;
  report.evaluated = reps.size();
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::uint64_t canonical_table(int n, std::uint64_t table) {
  require(n >= 1 && n <= kMaxEnumerated, ErrorCode::invalid_argument, "canonical form supports 1 <= n <= 5");
  std::uint64_t best = table;
  for (const PointMap& map : group(n)) best = std::min(best, apply(map, table));
  return best;
}

VerificationReport max_stability(int n, double a, const PhiSpec& spec, double rho, const OracleOptions& options) {
  require(n >= 1 && n <= kMaxEnumerated, ErrorCode::invalid_argument, "exhaustive search supports 1 <= n <= 5");
  require(n <= 4 || options.allow_n5, ErrorCode::invalid_argument,
          "n = 5 enumerates ~6e8 functions; it must be requested explicitly");
  check_rho(rho);
  const double scaled = std::ldexp(a, n);
  require(std::isfinite(a) && a >= 0.0 && a <= 1.0 && scaled == std::floor(scaled), ErrorCode::domain,
          "mean a must be a multiple of 2^-n in [0, 1]");
  const unsigned k = static_cast<unsigned>(scaled);

  VerificationReport report;
  report.n = n;
  report.rho = rho;
  report.phi = spec.describe();
  report.mean = a;

  Leaderboard board;
  if (n == 5 || !options.checkpoint.empty())
    run_chunked(n, k, spec, rho, options, report, board);
  else
    run_in_memory(n, k, spec, rho, options, report, board);
  report.skipped = report.enumerated - report.evaluated;
  report.pass = report.complete;

  std::sort(board.entries.begin(), board.entries.end(),
            [](const Candidate& l, const Candidate& r) { return l.table < r.table; });
  report.enumerated_max = board.best;
  report.attaining_truncated = board.truncated;
  std::vector<std::uint64_t> canon;
  for (const Candidate& c : board.entries) {
    report.attaining.push_back(BooleanFunction::from_table(n, c.table));
    canon.push_back(canonical_table(n, c.table));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  for (std::uint64_t t : canon) report.attaining_canonical.push_back(BooleanFunction::from_table(n, t));

  if (a == 0.5) {
    report.dictator_value = dictator_stability(spec, rho);
    report.gap = report.enumerated_max - report.dictator_value;
  }
  if (report.complete && report.enumerated != binomial(1u << n, k)) {
    fail(ErrorCode::internal, "enumeration count mismatch");
  }
  return report;
}

std::vector<VerificationReport> verify_dictator(int n, const PhiSpec& spec, const std::vector<double>& rho_grid,
                                                const OracleOptions& options) {
  std::vector<VerificationReport> out;
  for (double rho : rho_grid) {
    VerificationReport report = max_stability(n, 0.5, spec, rho, options);
    report.check = "dictator";
    report.pass = report.complete && report.gap <= kGapTolerance;
    out.push_back(std::move(report));
  }
  return out;
}

VerificationReport verify_dominance(int n, double a, const PhiSpec& spec, double rho, const BoundResult& bound,
                                    const OracleOptions& options) {
  VerificationReport report = max_stability(n, a, spec, rho, options);
  report.check = "dominance";
  report.bound_kind = to_string(bound.kind);
  report.bound_value = bound.value;
  report.dominance_margin = bound.value - report.enumerated_max;
  report.pass = report.complete && bound.feasible && report.dominance_margin >= -kDominanceTolerance;
  return report;
}

}  // namespace phistab
