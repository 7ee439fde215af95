#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "loccrate/numeric.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

/// One weight class: weight 2^log2w with an exact multiplicity.
struct SpectrumEntry {
  double log2w;  // <= 0 in practice; stored in log2 so tensor powers never underflow
  BigInt mult;
};

/// Compressed eigenvalue spectrum of a reduced pure state: strictly
/// decreasing weights, big-integer multiplicities, total mass 1 within 1e-9.
/// Tensor powers of desk-size states have exponential rank but only
/// polynomially many distinct weights, which is what makes the monoid engine
/// run at n in the thousands.
class SchmidtSpectrum {
 public:
  /// Groups entries whose log2-weights agree within mergeTol. The merged
  /// class keeps the group's exact mass: weight = mass / count.
  static SchmidtSpectrum fromLog2Entries(std::vector<SpectrumEntry> raw,
                                         double mergeTol = tol::kLogGrouping) {
    if (raw.empty()) throw std::invalid_argument("SchmidtSpectrum: no entries");
    std::sort(raw.begin(), raw.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.log2w > b.log2w; });
    std::vector<SpectrumEntry> merged;
    std::size_t i = 0;
    while (i < raw.size()) {
      const double anchor = raw[i].log2w;
      ScaledReal mass;
      BigInt count = 0;
      std::size_t j = i;
      while (j < raw.size() && anchor - raw[j].log2w <= mergeTol) {
        mass += ScaledReal::fromLog2(raw[j].log2w + log2Big(raw[j].mult));
        count += raw[j].mult;
        ++j;
      }
      const double lw = mass.log2() - log2Big(count);
      merged.push_back({lw, std::move(count)});
      i = j;
    }
    return SchmidtSpectrum(std::move(merged));
  }

  static SchmidtSpectrum fromWeights(const std::vector<std::pair<double, BigInt>>& weights) {
    std::vector<SpectrumEntry> raw;
    raw.reserve(weights.size());
    for (const auto& [w, m] : weights) {
      if (!(w > 0.0)) throw std::invalid_argument("SchmidtSpectrum: weights must be positive");
      raw.push_back({std::log2(w), m});
    }
    return fromLog2Entries(std::move(raw));
  }

  static SchmidtSpectrum uniform(const BigInt& r) {
    if (r < 1) throw std::invalid_argument("SchmidtSpectrum: uniform rank must be >= 1");
    return SchmidtSpectrum({SpectrumEntry{-log2Big(r), r}});
  }

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double log2Weight(std::size_t i) const { return entries_[i].log2w; }
  double weight(std::size_t i) const { return std::exp2(entries_[i].log2w); }
  const BigInt& multiplicity(std::size_t i) const { return entries_[i].mult; }

  BigInt rank() const {
    BigInt r = 0;
    for (const auto& e : entries_) r += e.mult;
    return r;
  }

  /// Recomputed total mass; 1 within 1e-9 by the class invariant.
  double mass() const {
    ScaledReal m;
    for (const auto& e : entries_) m += ScaledReal::fromLog2(e.log2w + log2Big(e.mult));
    return m.toDouble();
  }

 private:
  explicit SchmidtSpectrum(std::vector<SpectrumEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].mult < 1) throw std::invalid_argument("SchmidtSpectrum: multiplicity < 1");
      if (i > 0 && !(entries_[i - 1].log2w > entries_[i].log2w)) {
        throw std::invalid_argument("SchmidtSpectrum: weights not strictly decreasing");
      }
    }
    if (std::abs(mass() - 1.0) > tol::kSpectrumMass) {
      throw std::invalid_argument("SchmidtSpectrum: total mass deviates from 1 beyond 1e-9");
    }
  }

  std::vector<SpectrumEntry> entries_;
};

/// Eigenvalues of the cut reduction, grouped (absolute tolerance 1e-9) with
/// zeros dropped. Diagonalizes whichever side of the bipartition is smaller;
/// both sides share the nonzero spectrum.
template <class Real>
SchmidtSpectrum schmidtSpectrum(const PureState<Real>& s, const Cut& cut) {
  cut.validateFor(s.k());
  std::int64_t cutTotal = 1;
  for (const std::int64_t p : cut.parties()) cutTotal *= s.dims()[p - 1];
  const Cut side = (cutTotal * cutTotal <= s.dims().total()) ? cut : cut.complementFor(s.k());

  const MixedState<Real> rho = reducedState(s, side);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = static_cast<double>(es.eigenvalues()[i]);
    if (v > tol::kEigenZeroDrop) vals.push_back(v);
  }
  if (vals.empty()) throw std::logic_error("schmidtSpectrum: all eigenvalues below noise floor");
  std::sort(vals.begin(), vals.end(), std::greater<>());

  std::vector<std::pair<double, BigInt>> grouped;
  std::size_t i = 0;
  while (i < vals.size()) {
    const double anchor = vals[i];
    double groupMass = 0.0;
    std::int64_t count = 0;
    std::size_t j = i;
    while (j < vals.size() && anchor - vals[j] <= tol::kEigenGrouping) {
      groupMass += vals[j];
      ++count;
      ++j;
    }
    grouped.emplace_back(groupMass / static_cast<double>(count), BigInt(count));
    i = j;
  }
  return SchmidtSpectrum::fromWeights(grouped);
}

/// Grouped spectrum of a tensor product: pairwise weight products with
/// multiplicity products, then a merge pass.
inline SchmidtSpectrum tensorSpectra(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  std::vector<SpectrumEntry> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      raw.push_back({ea.log2w + eb.log2w, ea.mult * eb.mult});
    }
  }
  return SchmidtSpectrum::fromLog2Entries(std::move(raw));
}

/// Grouped spectrum of the n-th tensor power. Classes are the compositions
/// (n_1,...,n_t) of n over the t distinct base weights; each contributes
/// weight prod w_i^{n_i} and multiplicity multinomial(n; n_i) prod m_i^{n_i}.
inline SchmidtSpectrum spectrumPower(const SchmidtSpectrum& s, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("spectrumPower: n must be >= 1");
  const auto t = static_cast<std::int64_t>(s.size());
  if (binomial(n + t - 1, t - 1) > 2'000'000) {
    throw std::invalid_argument("spectrumPower: weight-class count exceeds 2e6");
  }

  std::vector<SpectrumEntry> raw;
  std::vector<std::int64_t> parts(static_cast<std::size_t>(t));
  // Depth-first over compositions; multinomial built up as a telescoping
  // product of binomials C(remaining, n_i).
  const auto rec = [&](auto&& self, std::int64_t level, std::int64_t remaining, double log2w,
                       const BigInt& mult) -> void {
    if (level == t - 1) {
      const auto last = static_cast<unsigned>(remaining);
      raw.push_back({log2w + static_cast<double>(remaining) * s.log2Weight(static_cast<std::size_t>(level)),
                     mult * boost::multiprecision::pow(s.multiplicity(static_cast<std::size_t>(level)), last)});
      return;
    }
    BigInt choose = 1;  // C(remaining, c), updated incrementally
    BigInt mpow = 1;    // m_level^c
    for (std::int64_t c = 0; c <= remaining; ++c) {
      self(self, level + 1, remaining - c,
           log2w + static_cast<double>(c) * s.log2Weight(static_cast<std::size_t>(level)),
           mult * choose * mpow);
      choose = choose * (remaining - c) / (c + 1);
      mpow *= s.multiplicity(static_cast<std::size_t>(level));
    }
  };
  rec(rec, 0, n, 0.0, BigInt(1));
  return SchmidtSpectrum::fromLog2Entries(std::move(raw));
}

/// Shannon entropy (base 2) of the spectrum, multiplicity-aware:
/// -sum_i mass_i * log2w_i with mass_i = w_i * m_i.
inline double spectrumEntropy(const SchmidtSpectrum& s) {
  std::vector<double> terms;
  terms.reserve(s.size());
  for (const auto& e : s.entries()) {
    const double massI = ScaledReal::fromLog2(e.log2w + log2Big(e.mult)).toDouble();
    terms.push_back(-massI * e.log2w);
  }
  return pairwiseSum(terms);
}

}  // namespace loccrate
