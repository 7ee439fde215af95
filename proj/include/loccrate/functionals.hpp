#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loccrate/spectrum.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

/// h(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0.
inline double binaryEntropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

enum class FunctionalKind { CutEntropy };

/// A named entanglement measure on pure states. Cut entropies are the only
/// built-in kind; evaluation is routed through one dispatch point so further
/// measures can slot in without touching the rate layer.
struct Functional {
  FunctionalKind kind;
  Cut cut;
  std::string label;
};

inline Functional makeCutEntropy(Cut cut) {
  std::string label = cut.label();
  return Functional{FunctionalKind::CutEntropy, std::move(cut), std::move(label)};
}

/// All cut entropies for k parties, one per bipartition: the cuts containing
/// party 1 (each bipartition is counted once since complements agree).
inline std::vector<Functional> cutEntropyFamily(std::int64_t k) {
  if (k < 2) throw std::invalid_argument("cutEntropyFamily: need k >= 2");
  std::vector<Functional> family;
  // Subset masks over parties 2..k joined with party 1; all proper, nonempty.
  const std::int64_t rest = k - 1;
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << rest); ++mask) {
    std::vector<std::int64_t> parties{1};
    for (std::int64_t b = 0; b < rest; ++b) {
      if (mask & (std::int64_t{1} << b)) parties.push_back(b + 2);
    }
    if (static_cast<std::int64_t>(parties.size()) == k) continue;  // full set is not a cut
    family.push_back(makeCutEntropy(Cut(std::move(parties))));
  }
  return family;
}

template <class Real>
double evaluate(const Functional& e, const PureState<Real>& s) {
  switch (e.kind) {
    case FunctionalKind::CutEntropy:
      return spectrumEntropy(schmidtSpectrum(s, e.cut));
  }
  throw std::logic_error("evaluate: unhandled functional kind");
}

/// Measurement outcome ensemble: probabilities and post-measurement states.
template <class Real>
class Ensemble {
 public:
  struct Branch {
    Real probability;
    PureState<Real> state;
  };

  explicit Ensemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw std::invalid_argument("Ensemble: no branches");
    double total = 0.0;
    for (const auto& b : branches_) {
      if (b.probability < Real(0)) throw std::invalid_argument("Ensemble: negative probability");
      total += static_cast<double>(b.probability);
    }
    if (std::abs(total - 1.0) > tol::kSpectrumMass) {
      throw std::invalid_argument("Ensemble: probabilities do not sum to 1 within 1e-9");
    }
  }

  const std::vector<Branch>& branches() const { return branches_; }

 private:
  std::vector<Branch> branches_;
};

struct ResidualCheck {
  bool pass;
  double residual;
};

struct SlackCheck {
  bool pass;
  double slack;
};

/// |E(a (x) b) - E(a) - E(b)| <= tol.
template <class Real>
ResidualCheck checkAdditivity(const Functional& e, const PureState<Real>& a,
                              const PureState<Real>& b, double tolerance) {
  const double residual =
      std::abs(evaluate(e, tensor(a, b)) - evaluate(e, a) - evaluate(e, b));
  return {residual <= tolerance, residual};
}

/// |E(direct_sum(a,b,p)) - p E(a) - (1-p) E(b) - h(p)| <= tol.
template <class Real>
ResidualCheck checkChainRule(const Functional& e, const PureState<Real>& a,
                             const PureState<Real>& b, Real p, double tolerance) {
  const double lhs = evaluate(e, directSum(a, b, p));
  const double rhs = static_cast<double>(p) * evaluate(e, a) +
                     (1.0 - static_cast<double>(p)) * evaluate(e, b) +
                     binaryEntropy(static_cast<double>(p));
  const double residual = std::abs(lhs - rhs);
  return {residual <= tolerance, residual};
}

/// slack = E(s) - sum_x P(x) E(branch_x); pass iff slack >= -tol. The caller
/// asserts the ensemble arose from a local measurement on s; only the
/// inequality is checked here.
template <class Real>
SlackCheck checkMonotoneOnAverage(const Functional& e, const PureState<Real>& s,
                                  const Ensemble<Real>& ens, double tolerance) {
  double avg = 0.0;
  for (const auto& b : ens.branches()) {
    if (b.probability > Real(0)) avg += static_cast<double>(b.probability) * evaluate(e, b.state);
  }
  const double slack = evaluate(e, s) - avg;
  return {slack >= -tolerance, slack};
}

/// a(d) = ((1 + d^{2/(k+1)})^{k+1} - 1 + d^2) / (1 - d^2).
inline double continuityA(double delta, std::int64_t k) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("continuity_a: need 0 <= delta < 1");
  if (k < 1) throw std::invalid_argument("continuity_a: need k >= 1");
  const double e = 2.0 / static_cast<double>(k + 1);
  const double base = 1.0 + std::pow(delta, e);
  return (std::pow(base, static_cast<double>(k + 1)) - 1.0 + delta * delta) /
         (1.0 - delta * delta);
}

/// b(d) = ((1 + d^{2/(k+1)})^{k+1} / (1 - d^2)) * h(1 / (1 + d^{2/(k+1)})).
inline double continuityB(double delta, std::int64_t k) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("continuity_b: need 0 <= delta < 1");
  if (k < 1) throw std::invalid_argument("continuity_b: need k >= 1");
  const double e = 2.0 / static_cast<double>(k + 1);
  const double base = 1.0 + std::pow(delta, e);
  return (std::pow(base, static_cast<double>(k + 1)) / (1.0 - delta * delta)) *
         binaryEntropy(1.0 / base);
}

struct ContinuityCheck {
  bool pass;
  double margin;    // RHS - LHS; +inf when the bound is vacuous at D -> 1
  double distance;  // purified distance between the inputs
};

/// |E(a) - E(b)| <= a(D) log2(dim H) + b(D) with D the purified distance.
template <class Real>
ContinuityCheck checkContinuityEstimate(const Functional& e, const PureState<Real>& a,
                                        const PureState<Real>& b) {
  if (!(a.dims() == b.dims())) {
    throw std::invalid_argument("check_continuity_estimate: dims mismatch");
  }
  const double d = static_cast<double>(purifiedDistance(a, b));
  if (d >= 1.0 - 1e-15) {
    return {true, std::numeric_limits<double>::infinity(), d};
  }
  const double lhs = std::abs(evaluate(e, a) - evaluate(e, b));
  const double logDim = std::log2(static_cast<double>(a.dims().total()));
  const double rhs = continuityA(d, a.k()) * logDim + continuityB(d, a.k());
  const double margin = rhs - lhs;
  return {margin >= -1e-9, margin, d};
}

}  // namespace loccrate
