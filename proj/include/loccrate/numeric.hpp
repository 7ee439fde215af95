#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loccrate {

using BigInt = boost::multiprecision::cpp_int;

namespace tol {
// Central numeric tolerances. Values are part of the public contract.
inline constexpr double kStateNorm = 1e-10;       // |norm^2 - 1| for pure states
inline constexpr double kDensity = 1e-10;         // Hermiticity / trace / eigenvalue floor
inline constexpr double kSpectrumMass = 1e-9;     // sum of weight*multiplicity vs 1
inline constexpr double kEigenGrouping = 1e-9;    // absolute, raw eigenvalues
inline constexpr double kLogGrouping = 1e-9;      // log2 domain, tensor-power classes
inline constexpr double kEigenZeroDrop = 1e-13;   // below this an eigenvalue is noise
inline constexpr double kSeparable = 1e-12;       // cut entropy treated as zero
inline constexpr double kMajorizationRel = 1e-9;  // relative slack on partial sums
inline constexpr double kParseNorm = 1e-8;        // user-supplied state norm gate
}  // namespace tol

/// floor(log2(x)) for x >= 1, exact.
inline std::int64_t floorLog2(const BigInt& x) {
  if (x <= 0) throw std::domain_error("floorLog2: argument must be positive");
  return static_cast<std::int64_t>(boost::multiprecision::msb(x));
}

/// log2(x) for x >= 1 with ~1e-15 relative error regardless of magnitude.
inline double log2Big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2Big: argument must be positive");
  const std::int64_t b = floorLog2(x);
  if (b <= 62) return std::log2(x.convert_to<double>());
  const BigInt top = x >> (b - 52);  // keeps 53 significant bits
  return std::log2(top.convert_to<double>()) + static_cast<double>(b - 52);
}

/// Nearest integer to 2^l (53-bit precision); l < 0 yields 0.
inline BigInt bigFromLog2(double l) {
  if (!(l >= 0.0)) return 0;
  if (l <= 52.0) return BigInt(static_cast<std::uint64_t>(std::llround(std::exp2(l))));
  const auto shift = static_cast<std::int64_t>(std::floor(l)) - 52;
  const double mant = std::exp2(l - static_cast<double>(shift));  // in [2^52, 2^53]
  return BigInt(static_cast<std::uint64_t>(std::llround(mant))) << shift;
}

/// Smallest integer >= 2^l up to floating-point credibility: values within
/// relative 1e-9 of an integer count as that integer. Exact ceilings are not
/// recoverable from a double exponent anyway; the callers' tolerances absorb
/// the slack.
inline BigInt bigCeilFromLog2(double l) {
  if (l <= 0.0) return 1;
  if (l <= 50.0) {
    const double v = std::exp2(l);
    const double f = std::floor(v);
    const bool nearInteger = v - f <= 1e-9 * v;
    return BigInt(static_cast<std::uint64_t>(nearInteger ? f : f + 1.0));
  }
  BigInt c = bigFromLog2(l);
  if (log2Big(c) < l - 1e-12) ++c;  // nearest rounding; one bump restores >= within fp meaning
  return c;
}

/// C(n, m), exact.
inline BigInt binomial(std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("binomial: need 0 <= m <= n");
  if (m > n - m) m = n - m;
  BigInt c = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    c *= (n - i);
    c /= (i + 1);  // exact at every step: c is C(n, i+1) * (i+1)! / ... integral
  }
  return c;
}

/// Row n of Pascal's triangle: C(n, 0..n), exact.
inline std::vector<BigInt> binomialRow(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("binomialRow: n must be nonnegative");
  std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (std::int64_t m = 0; m < n; ++m) {
    row[static_cast<std::size_t>(m) + 1] = row[static_cast<std::size_t>(m)] * (n - m) / (m + 1);
  }
  return row;
}

/// Nonnegative real as mantissa * 2^exponent with an explicit exponent, so
/// partial sums of tensor-power spectra never underflow (weights can reach
/// 2^-10000 at the engine's n cap while double stops at 2^-1074).
class ScaledReal {
 public:
  ScaledReal() = default;

  static ScaledReal fromLog2(double l) {
    ScaledReal r;
    if (l == -std::numeric_limits<double>::infinity()) return r;
    const double fl = std::floor(l);
    r.exp_ = static_cast<std::int64_t>(fl);
    r.mant_ = std::exp2(l - fl);  // in [1, 2)
    return r;
  }

  static ScaledReal fromDouble(double v) {
    if (v < 0.0) throw std::domain_error("ScaledReal: negative value");
    ScaledReal r;
    if (v == 0.0) return r;
    int e = 0;
    const double m = std::frexp(v, &e);  // m in [0.5, 1)
    r.mant_ = 2.0 * m;
    r.exp_ = e - 1;
    return r;
  }

  bool isZero() const { return mant_ == 0.0; }

  double log2() const {
    if (isZero()) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exp_) + std::log2(mant_);
  }

  double toDouble() const { return isZero() ? 0.0 : std::ldexp(mant_, static_cast<int>(exp_)); }

  ScaledReal& operator+=(const ScaledReal& o) {
    if (o.isZero()) return *this;
    if (isZero()) {
      *this = o;
      return *this;
    }
    if (exp_ < o.exp_) {
      ScaledReal t = o;
      t += *this;
      *this = t;
      return *this;
    }
    const std::int64_t d = o.exp_ - exp_;  // <= 0
    if (d > -1100) mant_ += std::ldexp(o.mant_, static_cast<int>(d));
    normalize();
    return *this;
  }

  /// a <= b * (1 + rel). Relative comparison; exponents may differ wildly.
  static bool leqRel(const ScaledReal& a, const ScaledReal& b, double rel) {
    if (a.isZero()) return true;
    if (b.isZero()) return false;
    const std::int64_t d = a.exp_ - b.exp_;
    if (d >= 2) return false;  // ratio > 2 regardless of mantissas
    if (d <= -2) return true;  // ratio < 1
    const double ratio = std::ldexp(a.mant_ / b.mant_, static_cast<int>(d));
    return ratio <= 1.0 + rel;
  }

 private:
  void normalize() {
    if (mant_ == 0.0) {
      exp_ = 0;
      return;
    }
    int e = 0;
    const double m = std::frexp(mant_, &e);
    mant_ = 2.0 * m;
    exp_ += e - 1;
  }

  double mant_ = 0.0;  // 0, or in [1, 2)
  std::int64_t exp_ = 0;
};

/// Pairwise summation: deterministic order independent of chunking, O(log n) error growth.
inline double pairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwiseSum(v.subspan(0, half)) + pairwiseSum(v.subspan(half));
}

inline double pairwiseSum(const std::vector<double>& v) {
  return pairwiseSum(std::span<const double>(v));
}

}  // namespace loccrate
