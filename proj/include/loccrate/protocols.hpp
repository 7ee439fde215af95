#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "loccrate/functionals.hpp"
#include "loccrate/numeric.hpp"
#include "loccrate/random.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

/// One measurement branch of the n-fold direct-sum decomposition: outcome m
/// arrives with the binomial weight and leaves a GHZ state of rank C(n,m).
struct BinomialBranch {
  std::int64_t m;
  double probability;  // C(n,m) p^m (1-p)^{n-m}, computed in log domain
  BigInt ghzRank;      // C(n,m), exact
};

inline std::vector<BinomialBranch> binomialDecomposition(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("binomial_decomposition: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_decomposition: p outside [0,1]");
  const std::vector<BigInt> row = binomialRow(n);
  std::vector<BinomialBranch> branches;
  branches.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t m = 0; m <= n; ++m) {
    double lp = log2Big(row[static_cast<std::size_t>(m)]);
    if (m > 0) lp += static_cast<double>(m) * std::log2(p);  // -inf at p=0 kills the branch
    if (m < n) lp += static_cast<double>(n - m) * std::log2(1.0 - p);
    branches.push_back({m, std::exp2(lp), row[static_cast<std::size_t>(m)]});
  }
  return branches;
}

/// (1/n) sum_m C(n,m) p^m (1-p)^{n-m} log2 C(n,m); converges to h(p).
inline double expectedLogGhz(std::int64_t n, double p) {
  const auto branches = binomialDecomposition(n, p);
  std::vector<double> terms;
  terms.reserve(branches.size());
  for (const auto& b : branches) terms.push_back(b.probability * log2Big(b.ghzRank));
  return pairwiseSum(terms) / static_cast<double>(n);
}

/// As above with floor(log2 C(n,m)): the EPR count each rank-C(n,m) GHZ
/// converts to exactly, since uniform(r) reaches uniform(2^j) iff 2^j <= r.
inline double concentrationYield(std::int64_t n, double p) {
  const auto branches = binomialDecomposition(n, p);
  std::vector<double> terms;
  terms.reserve(branches.size());
  for (const auto& b : branches) {
    terms.push_back(b.probability * static_cast<double>(floorLog2(b.ghzRank)));
  }
  return pairwiseSum(terms) / static_cast<double>(n);
}

/// n h(m/n) - 2 log2(n+1) <= log2 C(n,m) <= n h(m/n).
struct LogBinomialBounds {
  double lower;
  double exact;
  double upper;
};

inline LogBinomialBounds logBinomialBounds(std::int64_t n, std::int64_t m, const BigInt& rank) {
  if (n < 1 || m < 0 || m > n) throw std::invalid_argument("log_binomial_bounds: need 0 <= m <= n");
  const double nh = static_cast<double>(n) *
                    binaryEntropy(static_cast<double>(m) / static_cast<double>(n));
  return {nh - 2.0 * std::log2(static_cast<double>(n + 1)), log2Big(rank), nh};
}

inline LogBinomialBounds logBinomialBounds(std::int64_t n, std::int64_t m) {
  return logBinomialBounds(n, m, binomial(n, m));
}

struct ConcentrationBin {
  std::int64_t m;
  std::int64_t count;
  double yield;  // floor(log2 C(n,m)) / n
};

struct ConcentrationStats {
  std::int64_t n;
  double p;
  std::int64_t shots;
  std::uint64_t seed;
  double mean;
  double stddev;
  double standardError;
  std::vector<ConcentrationBin> histogram;  // visited outcomes, ascending m
};

/// Samples the measurement outcome m (sum of n Bernoulli draws) and records
/// the per-copy EPR yield of each shot. Deterministic for a fixed seed.
inline ConcentrationStats concentrationSimulate(std::int64_t n, double p, std::int64_t shots,
                                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("concentration_simulate: n must be >= 1");
  if (shots < 1) throw std::invalid_argument("concentration_simulate: shots must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("concentration_simulate: p outside [0,1]");

  const std::vector<BigInt> row = binomialRow(n);
  std::vector<double> yield(static_cast<std::size_t>(n) + 1);
  for (std::int64_t m = 0; m <= n; ++m) {
    yield[static_cast<std::size_t>(m)] =
        static_cast<double>(floorLog2(row[static_cast<std::size_t>(m)])) / static_cast<double>(n);
  }

  Rng rng(seed);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t s = 0; s < shots; ++s) {
    std::int64_t m = 0;
    for (std::int64_t i = 0; i < n; ++i) m += rng.bernoulli(p) ? 1 : 0;
    ++counts[static_cast<std::size_t>(m)];
  }

  double mean = 0.0;
  for (std::int64_t m = 0; m <= n; ++m) {
    mean += yield[static_cast<std::size_t>(m)] *
            (static_cast<double>(counts[static_cast<std::size_t>(m)]) / static_cast<double>(shots));
  }
  double var = 0.0;
  for (std::int64_t m = 0; m <= n; ++m) {
    const double dev = yield[static_cast<std::size_t>(m)] - mean;
    var += dev * dev * static_cast<double>(counts[static_cast<std::size_t>(m)]);
  }
  var /= static_cast<double>(shots);
  const double stddev = std::sqrt(var);

  ConcentrationStats stats{n, p, shots, seed, mean, stddev,
                           stddev / std::sqrt(static_cast<double>(shots)), {}};
  for (std::int64_t m = 0; m <= n; ++m) {
    if (counts[static_cast<std::size_t>(m)] > 0) {
      stats.histogram.push_back(
          {m, counts[static_cast<std::size_t>(m)], yield[static_cast<std::size_t>(m)]});
    }
  }
  return stats;
}

/// Parameters of the measurement argument behind the continuity estimate:
/// omega = A phi + B psi, a direct sum with weight q, flag projections at
/// angle lambda, guaranteed success weight u.
template <class Real>
struct ContinuityConstruction {
  std::complex<Real> a;
  std::complex<Real> b;
  Real q;
  Real lambda;
  Real u;
  PureState<Real> omega;
};

/// The paper's non-optimal parameter choice: A = -1/D, B = conj(<phi|psi>)/D,
/// q = lambda = 1/(1 + D^{2/(k+1)}).
template <class Real>
ContinuityConstruction<Real> continuityConstruction(const PureState<Real>& phi,
                                                    const PureState<Real>& psi) {
  if (!(phi.dims() == psi.dims())) {
    throw std::invalid_argument("continuity_construction: dims mismatch");
  }
  const std::complex<Real> ip = innerProduct(phi, psi);
  const Real d = purifiedDistance(phi, psi);
  // 1/d amplifies componentwise roundoff in omega by eps/d; below 1e-5 the
  // result would not survive the PureState norm gate, so treat it as degenerate.
  if (!(d > Real(1e-5)) || !(d < Real(1))) {
    throw std::domain_error("continuity_construction: degenerate pair, need 0 < D < 1");
  }
  const std::int64_t k = phi.k();

  const std::complex<Real> a(-Real(1) / d, Real(0));
  const std::complex<Real> b = std::conj(ip) / d;
  const Real q = Real(1) / (Real(1) + std::pow(d, Real(2) / static_cast<Real>(k + 1)));
  const Real lambda = q;
  const Real u = std::min(q, std::norm(b) * (Real(1) - q) *
                                 std::pow(Real(1) - lambda, static_cast<Real>(k)));

  ComplexVector<Real> amps = a * phi.amps() + b * psi.amps();
  PureState<Real> omega(phi.dims(), std::move(amps));
  return {a, b, q, lambda, u, std::move(omega)};
}

struct ProtocolCheck {
  bool pass;
  double residual;       // l2 distance of the projected vector from its predicted form
  double successWeight;  // squared norm of the projected vector
};

/// Builds sqrt(q) phi (+) sqrt(1-q) omega, projects every flag qubit onto
/// sqrt(lambda)|0> + sqrt(1-lambda)|1>, and verifies the leftover vector is
/// B sqrt((1-q)(1-lambda)^k) psi.
template <class Real>
ProtocolCheck continuityProtocolCheck(const ContinuityConstruction<Real>& c,
                                      const PureState<Real>& phi, const PureState<Real>& psi) {
  const PureState<Real> tau = directSum(phi, c.omega, c.q);
  const std::int64_t k = phi.k();
  const Real flagAmp[2] = {std::sqrt(c.lambda), std::sqrt(Real(1) - c.lambda)};

  ComplexVector<Real> projected = ComplexVector<Real>::Zero(phi.dims().total());
  for (std::int64_t i = 0; i < tau.dims().total(); ++i) {
    const auto digits = decomposeIndex(i, tau.dims());
    Real weight = Real(1);
    std::vector<std::int64_t> base(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
      const std::int64_t dj = digits[static_cast<std::size_t>(j)];
      weight *= flagAmp[dj % 2];
      base[static_cast<std::size_t>(j)] = dj / 2;
    }
    projected[composeIndex(base, phi.dims())] += weight * tau.amps()[i];
  }

  const std::complex<Real> scale =
      c.b * std::sqrt((Real(1) - c.q) * std::pow(Real(1) - c.lambda, static_cast<Real>(k)));
  const double residual = static_cast<double>((projected - scale * psi.amps()).norm());
  const double weight = static_cast<double>(detail::stableSquaredNorm<Real>(projected));
  return {residual <= 1e-9, residual, weight};
}

}  // namespace loccrate
