#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "loccrate/functionals.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

enum class RateKind { Exact, UpperBound, LowerBound };

inline const char* rateKindName(RateKind k) {
  switch (k) {
    case RateKind::Exact: return "exact";
    case RateKind::UpperBound: return "upper-bound";
    case RateKind::LowerBound: return "lower-bound";
  }
  return "unknown";
}

/// A rate value plus its certificate: the minimizing functional for bounds
/// from the family, or the witness triple from the search engine.
struct RateEstimate {
  double value;
  RateKind kind;
  std::string certificate;
};

/// min over cut entropies E with E(to) > 1e-12 of E(from)/E(to). Exact only
/// in the bipartite pure entangled case; otherwise an upper bound, since the
/// family need not attain the infimum for k >= 3.
template <class Real>
RateEstimate rateUpperBound(const PureState<Real>& from, const PureState<Real>& to) {
  if (from.k() != to.k()) throw std::invalid_argument("rate_upper_bound: party-count mismatch");
  const auto family = cutEntropyFamily(from.k());

  double best = std::numeric_limits<double>::infinity();
  std::string bestLabel;
  bool anyTarget = false;
  bool sourceEntangled = false;
  for (const auto& e : family) {
    const double eTo = evaluate(e, to);
    const double eFrom = evaluate(e, from);
    if (eFrom > tol::kSeparable) sourceEntangled = true;
    if (eTo <= tol::kSeparable) continue;  // side condition E(target) != 0
    anyTarget = true;
    const double ratio = eFrom / eTo;
    if (ratio < best) {
      best = ratio;
      bestLabel = e.label;
    }
  }
  if (!anyTarget) {
    throw std::domain_error(
        "rate_upper_bound: target is separable across every cut; rate to it is not defined");
  }
  const bool exact = (from.k() == 2) && sourceEntangled;
  return {best, exact ? RateKind::Exact : RateKind::UpperBound, bestLabel};
}

/// Bipartite pure formula: H(Tr_1 from) / H(Tr_1 to).
template <class Real>
RateEstimate bipartitePureRate(const PureState<Real>& from, const PureState<Real>& to) {
  if (from.k() != 2 || to.k() != 2) {
    throw std::invalid_argument("bipartite_pure_rate: states must be bipartite");
  }
  const Functional e = makeCutEntropy(Cut({1}));
  const double eTo = evaluate(e, to);
  if (eTo <= tol::kSeparable) {
    throw std::domain_error("bipartite_pure_rate: separable target");
  }
  return {evaluate(e, from) / eTo, RateKind::Exact, e.label};
}

struct GhzRateBounds {
  double distillUpper;  // GHZ distillation rate <= min cut entropy
  double costLower;     // GHZ cost per copy >= max cut entropy
};

template <class Real>
GhzRateBounds ghzRateBounds(const PureState<Real>& s) {
  if (s.k() < 2) throw std::invalid_argument("ghz_rate_bounds: need k >= 2");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& e : cutEntropyFamily(s.k())) {
    const double v = evaluate(e, s);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace loccrate
