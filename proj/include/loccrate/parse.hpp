#pragma once

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "loccrate/functionals.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

/// Cursor over a state/cut literal. Spaces are permitted between tokens.
class LiteralCursor {
 public:
  explicit LiteralCursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }

  void skipSpaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool atEnd() {
    skipSpaces();
    return pos_ >= text_.size();
  }

  bool tryConsume(char c) {
    skipSpaces();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!tryConsume(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  void expectKeyword(std::string_view word) {
    skipSpaces();
    if (text_.substr(pos_, word.size()) != word) {
      throw ParseError("expected \"" + std::string(word) + "\"", pos_);
    }
    pos_ += word.size();
  }

  std::int64_t integer() {
    skipSpaces();
    std::int64_t value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) throw ParseError("expected an integer", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  double number() {
    skipSpaces();
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) throw ParseError("expected a number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void expectEnd() {
    if (!atEnd()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Norm gate for user-supplied amplitudes: deviations within 1e-8 are fixed
/// up exactly, anything larger is an input error, not ours to repair.
template <class Real>
PureState<Real> gatedState(LocalDims dims, ComplexVector<Real> amps) {
  const double norm = std::sqrt(static_cast<double>(stableSquaredNorm<Real>(amps)));
  if (std::abs(norm - 1.0) > tol::kParseNorm) {
    throw ParseError("state norm deviates from 1 beyond 1e-8", 0);
  }
  amps /= static_cast<Real>(norm);
  return PureState<Real>(std::move(dims), std::move(amps));
}

}  // namespace detail

/// "cut:1,3" -> Cut({1,3}).
inline Cut parseCut(std::string_view text) {
  detail::LiteralCursor c(text);
  c.expectKeyword("cut");
  c.expect(':');
  std::vector<std::int64_t> parties;
  parties.push_back(c.integer());
  while (c.tryConsume(',')) parties.push_back(c.integer());
  c.expectEnd();
  return Cut(std::move(parties));
}

inline Functional parseFunctional(std::string_view text) { return makeCutEntropy(parseCut(text)); }

/// State literals: "ghz:r=4,k=3", "schmidt:[0.9,0.1]", "epr:pair=(1,3),k=3",
/// or a JSON object {"dims":[...], "amps":[[re,im],...]}.
inline PureState<double> parseState(const std::string& text) {
  const std::size_t start = std::min(text.find_first_not_of(' '), text.size());
  const auto startsWith = [&](std::string_view prefix) {
    return text.compare(start, prefix.size(), prefix) == 0;
  };

  if (start < text.size() && text[start] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.contains("dims") || !j.contains("amps")) {
      throw ParseError("JSON state needs \"dims\" and \"amps\"", 0);
    }
    std::vector<std::int64_t> dims;
    for (const auto& d : j.at("dims")) dims.push_back(d.get<std::int64_t>());
    LocalDims localDims(dims);
    const auto& amps = j.at("amps");
    if (static_cast<std::int64_t>(amps.size()) != localDims.total()) {
      throw ParseError("amplitude count does not match the dimension product", 0);
    }
    ComplexVector<double> v(localDims.total());
    Eigen::Index i = 0;
    for (const auto& a : amps) {
      if (!a.is_array() || a.size() != 2) {
        throw ParseError("each amplitude must be a [re, im] pair", 0);
      }
      v[i++] = std::complex<double>(a[0].get<double>(), a[1].get<double>());
    }
    return detail::gatedState<double>(std::move(localDims), std::move(v));
  }

  detail::LiteralCursor c(text);
  if (startsWith("ghz:")) {
    c.expectKeyword("ghz");
    c.expect(':');
    c.expectKeyword("r");
    c.expect('=');
    const std::int64_t r = c.integer();
    c.expect(',');
    c.expectKeyword("k");
    c.expect('=');
    const std::int64_t k = c.integer();
    c.expectEnd();
    if (r < 1 || k < 1) throw ParseError("ghz needs r >= 1 and k >= 1", 0);
    return ghz<double>(r, k);
  }
  if (startsWith("schmidt:")) {
    c.expectKeyword("schmidt");
    c.expect(':');
    c.expect('[');
    std::vector<double> weights;
    weights.push_back(c.number());
    while (c.tryConsume(',')) weights.push_back(c.number());
    c.expect(']');
    c.expectEnd();
    for (const double w : weights) {
      if (w < 0.0) throw ParseError("schmidt weights must be nonnegative", 0);
    }
    const auto m = static_cast<std::int64_t>(weights.size());
    LocalDims dims({m, m});
    ComplexVector<double> v = ComplexVector<double>::Zero(dims.total());
    for (std::int64_t i = 0; i < m; ++i) v[i * m + i] = std::sqrt(weights[static_cast<std::size_t>(i)]);
    return detail::gatedState<double>(std::move(dims), std::move(v));
  }
  if (startsWith("epr:")) {
    c.expectKeyword("epr");
    c.expect(':');
    c.expectKeyword("pair");
    c.expect('=');
    c.expect('(');
    const std::int64_t p1 = c.integer();
    c.expect(',');
    const std::int64_t p2 = c.integer();
    c.expect(')');
    c.expect(',');
    c.expectKeyword("k");
    c.expect('=');
    const std::int64_t k = c.integer();
    c.expectEnd();
    if (k < 2 || p1 < 1 || p2 < 1 || p1 > k || p2 > k || p1 == p2) {
      throw ParseError("epr needs distinct parties within 1..k and k >= 2", 0);
    }
    return eprPair<double>(p1, p2, k);
  }
  throw ParseError("unknown state literal (expected ghz:, schmidt:, epr:, or JSON)", start);
}

}  // namespace loccrate
