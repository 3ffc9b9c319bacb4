#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phistab {

// Truth table of f : {-1,1}^n -> {0,1}. Bit i of the table is f(x) where
// x_j = +1 iff bit (j-1) of i is set.
class BooleanFunction {
 public:
  static constexpr int kMaxDimension = 20;

  explicit BooleanFunction(int n);
  BooleanFunction(int n, std::vector<std::uint64_t> words);
  static BooleanFunction from_table(int n, std::uint64_t table);

  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  bool value(std::size_t x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(std::size_t x, bool v) noexcept;

  std::size_t popcount() const noexcept;
  double mean() const noexcept;
  BooleanFunction complement() const;

  // Low 64 table bits; the whole table when n <= 6.
  std::uint64_t low_word() const noexcept { return words_.front(); }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  std::string encode() const;
  static BooleanFunction parse(std::string_view text);

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;
  // Orders by dimension, then by the table read as an unsigned integer.
  friend std::strong_ordering operator<=>(const BooleanFunction& lhs, const BooleanFunction& rhs);

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

struct FourierSpectrum {
  int n = 0;
  std::vector<double> coeffs;  // coeffs[m] = f^(S), S = {j : bit (j-1) of m}
};

struct DegreeWeights {
  std::vector<double> w;  // w[k] = W_k[f]
};

FourierSpectrum wht(const BooleanFunction& f);
// Real-valued table recovered from a spectrum; entries are exact for Boolean spectra.
std::vector<double> inverse_wht(const FourierSpectrum& spectrum);
DegreeWeights degree_weights(const FourierSpectrum& spectrum);

// T_rho f at every point, through the Fourier side.
std::vector<double> noise_smoothed(const FourierSpectrum& spectrum, double rho);
double noise_operator_fourier(const FourierSpectrum& spectrum, double rho, std::size_t x);
double noise_operator_fourier(const BooleanFunction& f, double rho, std::size_t x);
double noise_operator_direct(const BooleanFunction& f, double rho, std::size_t x);

BooleanFunction dictator(int n, int k, int sign);
BooleanFunction subcube_indicator(int n, const std::vector<std::pair<int, int>>& fixed);

// chi_S(x) for mask S and point index x.
inline int character(std::size_t mask, std::size_t x) noexcept {
  return (__builtin_popcountll(mask & ~x) & 1) ? -1 : 1;
}

void check_dimension(int n);
void check_rho(double rho);

}  // namespace phistab
