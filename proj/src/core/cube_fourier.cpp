#include "cube_fourier.hpp"

#include <bit>
#include <cmath>

#include "error.hpp"

namespace phistab {

namespace {

std::size_t word_count(int n) { return ((std::size_t{1} << n) + 63) / 64; }

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << n)) - 1;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void parse_error(std::size_t pos, const std::string& what) {
  fail(ErrorCode::parse, "malformed function encoding at position " + std::to_string(pos) + ": " + what);
}

// In place: v[S] <- sum_x v[x] chi_S(x).
void forward_butterfly(std::vector<double>& v) {
  const std::size_t size = v.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double minus = v[j];
        const double plus = v[j + h];
        v[j] = plus + minus;
        v[j + h] = plus - minus;
      }
    }
  }
}

// In place: v[x] <- sum_S v[S] chi_S(x).
void inverse_butterfly(std::vector<double>& v) {
  const std::size_t size = v.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double without = v[j];
        const double with = v[j + h];
        v[j] = without - with;
        v[j + h] = without + with;
      }
    }
  }
}

}  // namespace

void check_dimension(int n) {
  require(n >= 1 && n <= BooleanFunction::kMaxDimension, ErrorCode::invalid_argument,
          "dimension n=" + std::to_string(n) + " outside supported range [1, 20]");
}

void check_rho(double rho) {
  require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0, ErrorCode::domain,
          "noise parameter rho must lie in [0, 1]");
}

BooleanFunction::BooleanFunction(int n) : n_(n) {
  check_dimension(n);
  words_.assign(word_count(n), 0);
}

BooleanFunction::BooleanFunction(int n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
  check_dimension(n);
  require(words_.size() == word_count(n), ErrorCode::invalid_argument, "table length does not match 2^n");
  require((words_.back() & ~tail_mask(n)) == 0, ErrorCode::invalid_argument, "table has bits beyond 2^n");
}

BooleanFunction BooleanFunction::from_table(int n, std::uint64_t table) {
  require(n >= 1 && n <= 6, ErrorCode::invalid_argument, "from_table supports 1 <= n <= 6");
  return BooleanFunction(n, std::vector<std::uint64_t>{table});
}

void BooleanFunction::set(std::size_t x, bool v) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (v)
    words_[x >> 6] |= bit;
  else
    words_[x >> 6] &= ~bit;
}

std::size_t BooleanFunction::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

double BooleanFunction::mean() const noexcept {
  return static_cast<double>(popcount()) / static_cast<double>(size());
}

BooleanFunction BooleanFunction::complement() const {
  std::vector<std::uint64_t> out(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out[i] = ~words_[i];
  out.back() &= tail_mask(n_);
  return BooleanFunction(n_, std::move(out));
}

std::strong_ordering operator<=>(const BooleanFunction& lhs, const BooleanFunction& rhs) {
  if (auto c = lhs.n_ <=> rhs.n_; c != 0) return c;
  for (std::size_t i = lhs.words_.size(); i-- > 0;) {
    if (auto c = lhs.words_[i] <=> rhs.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string BooleanFunction::encode() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (size() + 3) / 4;
  std::string hex(digits, '0');
  for (std::size_t k = 0; k < digits; ++k) {
    const std::size_t bit = 4 * k;
    hex[k] = kDigits[(words_[bit >> 6] >> (bit & 63)) & 0xF];
  }
  return "n:" + std::to_string(n_) + ";table:" + hex;
}

BooleanFunction BooleanFunction::parse(std::string_view text) {
  constexpr std::string_view kPrefix = "n:";
  constexpr std::string_view kTable = ";table:";
  if (text.substr(0, kPrefix.size()) != kPrefix) parse_error(0, "expected 'n:'");
  std::size_t pos = kPrefix.size();
  int n = 0;
  const std::size_t digits_start = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    n = n * 10 + (text[pos] - '0');
    if (n > 1000) parse_error(digits_start, "dimension too large");
    ++pos;
  }
  if (pos == digits_start) parse_error(pos, "expected a decimal dimension");
  if (n < 1 || n > kMaxDimension) parse_error(digits_start, "dimension must lie in [1, 20]");
  if (text.substr(pos, kTable.size()) != kTable) parse_error(pos, "expected ';table:'");
  pos += kTable.size();

  BooleanFunction f(n);
  const std::size_t digits = (f.size() + 3) / 4;
  if (text.size() - pos != digits) {
    parse_error(text.size() < pos + digits ? text.size() : pos + digits,
                "expected exactly " + std::to_string(digits) + " hex digits");
  }
  for (std::size_t k = 0; k < digits; ++k) {
    const int v = hex_value(text[pos + k]);
    if (v < 0) parse_error(pos + k, "invalid hex digit");
    const std::size_t bit = 4 * k;
    if (bit + 4 > f.size() && (v >> (f.size() - bit)) != 0) parse_error(pos + k, "bits set beyond 2^n");
    f.words_[bit >> 6] |= static_cast<std::uint64_t>(v) << (bit & 63);
  }
  return f;
}

FourierSpectrum wht(const BooleanFunction& f) {
  const std::size_t size = f.size();
  std::vector<double> v(size);
  for (std::size_t x = 0; x < size; ++x) v[x] = f.value(x) ? 1.0 : 0.0;
  forward_butterfly(v);
  const double scale = std::ldexp(1.0, -f.dimension());
  for (double& c : v) c *= scale;
  return FourierSpectrum{f.dimension(), std::move(v)};
}

std::vector<double> inverse_wht(const FourierSpectrum& spectrum) {
  std::vector<double> v = spectrum.coeffs;
  inverse_butterfly(v);
  return v;
}

DegreeWeights degree_weights(const FourierSpectrum& spectrum) {
  DegreeWeights out{std::vector<double>(static_cast<std::size_t>(spectrum.n) + 1, 0.0)};
  for (std::size_t m = 0; m < spectrum.coeffs.size(); ++m) {
    out.w[static_cast<std::size_t>(std::popcount(m))] += spectrum.coeffs[m] * spectrum.coeffs[m];
  }
  return out;
}

std::vector<double> noise_smoothed(const FourierSpectrum& spectrum, double rho) {
  check_rho(rho);
  std::vector<double> power(static_cast<std::size_t>(spectrum.n) + 1, 1.0);
  for (std::size_t k = 1; k < power.size(); ++k) power[k] = power[k - 1] * rho;
  std::vector<double> v(spectrum.coeffs.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    v[m] = power[static_cast<std::size_t>(std::popcount(m))] * spectrum.coeffs[m];
  }
  inverse_butterfly(v);
  return v;
}

double noise_operator_fourier(const FourierSpectrum& spectrum, double rho, std::size_t x) {
  check_rho(rho);
  require(x < spectrum.coeffs.size(), ErrorCode::invalid_argument, "point index out of range");
  std::vector<double> power(static_cast<std::size_t>(spectrum.n) + 1, 1.0);
  for (std::size_t k = 1; k < power.size(); ++k) power[k] = power[k - 1] * rho;
  double total = 0.0;
  for (std::size_t m = 0; m < spectrum.coeffs.size(); ++m) {
    const double term = power[static_cast<std::size_t>(std::popcount(m))] * spectrum.coeffs[m];
    total += character(m, x) > 0 ? term : -term;
  }
  return total;
}

double noise_operator_fourier(const BooleanFunction& f, double rho, std::size_t x) {
  return noise_operator_fourier(wht(f), rho, x);
}

double noise_operator_direct(const BooleanFunction& f, double rho, std::size_t x) {
  check_rho(rho);
  require(f.dimension() <= 12, ErrorCode::invalid_argument, "direct noise summation supports n <= 12");
  require(x < f.size(), ErrorCode::invalid_argument, "point index out of range");
  const int n = f.dimension();
  const double agree = 0.5 * (1.0 + rho);
  const double flip = 0.5 * (1.0 - rho);
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) weight[static_cast<std::size_t>(d)] = std::pow(agree, n - d) * std::pow(flip, d);
  double total = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) {
    if (f.value(y)) total += weight[static_cast<std::size_t>(std::popcount(x ^ y))];
  }
  return total;
}

BooleanFunction dictator(int n, int k, int sign) {
  check_dimension(n);
  require(k >= 1 && k <= n, ErrorCode::invalid_argument, "dictator coordinate out of range");
  require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "dictator sign must be +1 or -1");
  BooleanFunction f(n);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const bool plus = (x >> (k - 1)) & 1u;
    f.set(x, plus == (sign > 0));
  }
  return f;
}

BooleanFunction subcube_indicator(int n, const std::vector<std::pair<int, int>>& fixed) {
  check_dimension(n);
  std::size_t mask = 0;
  std::size_t want = 0;
  for (const auto& [coord, sign] : fixed) {
    require(coord >= 1 && coord <= n, ErrorCode::invalid_argument, "subcube coordinate out of range");
    require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "subcube sign must be +1 or -1");
    const std::size_t bit = std::size_t{1} << (coord - 1);
    require((mask & bit) == 0, ErrorCode::invalid_argument, "duplicate subcube coordinate " + std::to_string(coord));
    mask |= bit;
    if (sign > 0) want |= bit;
  }
  BooleanFunction f(n);
  for (std::size_t x = 0; x < f.size(); ++x) f.set(x, (x & mask) == want);
  return f;
}

}  // namespace phistab
