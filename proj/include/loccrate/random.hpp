#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "loccrate/states.hpp"

namespace loccrate {

/// Seeded generator with self-contained variate mappings. std::mt19937_64 is
/// bit-exact by the standard; the uniform and gaussian transforms live here
/// so sequences do not depend on library-specific distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller; caches the paired variate.
  double gaussian() {
    if (hasSpare_) {
      hasSpare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]; keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    hasSpare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
};

/// Haar-like random pure state: iid complex gaussian amplitudes, normalized.
template <class Real>
PureState<Real> randomPureState(Rng& rng, const LocalDims& dims) {
  ComplexVector<Real> v(dims.total());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = std::complex<Real>(static_cast<Real>(rng.gaussian()), static_cast<Real>(rng.gaussian()));
  }
  v /= v.norm();
  return PureState<Real>(dims, std::move(v));
}

/// Full-rank random density matrix: G G^dagger / tr for a square complex
/// gaussian G.
template <class Real>
MixedState<Real> randomMixedState(Rng& rng, const LocalDims& dims) {
  const std::int64_t n = dims.total();
  ComplexMatrix<Real> g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      g(r, c) =
          std::complex<Real>(static_cast<Real>(rng.gaussian()), static_cast<Real>(rng.gaussian()));
    }
  }
  ComplexMatrix<Real> rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = ((rho + rho.adjoint()) / Real(2)).eval();
  return MixedState<Real>(dims, std::move(rho));
}

}  // namespace loccrate
