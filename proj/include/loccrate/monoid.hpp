#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loccrate/numeric.hpp"
#include "loccrate/spectrum.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

/// Keep the heaviest atoms until their mass reaches 1 - eps^2, then
/// renormalize. The result is the spectrum of a pure state within purified
/// distance eps of the original (fidelity^2 = kept mass >= 1 - eps^2), with
/// minimal support among top-weight truncations.
inline SchmidtSpectrum truncateSpectrum(const SchmidtSpectrum& s, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::domain_error("truncate_spectrum: need 0 <= eps < 1");
  if (eps == 0.0) return s;
  const double target = 1.0 - eps * eps;

  std::vector<SpectrumEntry> kept;
  ScaledReal cum;
  for (const auto& e : s.entries()) {
    const double need = target - cum.toDouble();
    if (need <= 0.0) break;
    const ScaledReal classMass = ScaledReal::fromLog2(e.log2w + log2Big(e.mult));
    if (classMass.toDouble() < need) {
      kept.push_back(e);
      cum += classMass;
      continue;
    }
    // Partial class: smallest count c with c * w >= need.
    BigInt c = bigCeilFromLog2(std::log2(need) - e.log2w);
    if (c > e.mult) c = e.mult;
    kept.push_back({e.log2w, c});
    cum += ScaledReal::fromLog2(e.log2w + log2Big(c));
    break;
  }

  const double renorm = cum.log2();
  for (auto& e : kept) e.log2w -= renorm;
  return SchmidtSpectrum::fromLog2Entries(std::move(kept));
}

/// Exact majorization with relative slack: every partial sum of xs stays
/// below the matching partial sum of ys (times 1 + 1e-9). Sums are walked at
/// the class boundaries of both spectra; between boundaries the difference is
/// linear, so these are the only candidates for a violation.
inline bool majorizationDominates(const SchmidtSpectrum& xs, const SchmidtSpectrum& ys) {
  const auto& ex = xs.entries();
  const auto& ey = ys.entries();

  ScaledReal cumX, cumY;      // mass of fully consumed classes
  BigInt doneX = 0, doneY = 0;  // atom count of fully consumed classes
  std::size_t ix = 0, iy = 0;

  const auto partialAt = [](const ScaledReal& cum, const BigInt& done, const SpectrumEntry& cls,
                            const BigInt& count) {
    ScaledReal s = cum;
    const BigInt extra = count - done;
    if (extra > 0) s += ScaledReal::fromLog2(cls.log2w + log2Big(extra));
    return s;
  };

  while (ix < ex.size() || iy < ey.size()) {
    const BigInt boundX = ix < ex.size() ? doneX + ex[ix].mult : BigInt(-1);
    const BigInt boundY = iy < ey.size() ? doneY + ey[iy].mult : BigInt(-1);

    BigInt at;
    if (boundX >= 0 && (boundY < 0 || boundX <= boundY)) {
      at = boundX;
    } else {
      at = boundY;
    }

    const ScaledReal sx = ix < ex.size() ? partialAt(cumX, doneX, ex[ix], at)
                                         : cumX;  // xs exhausted: sum stays at full mass
    const ScaledReal sy = iy < ey.size() ? partialAt(cumY, doneY, ey[iy], at) : cumY;
    if (!ScaledReal::leqRel(sx, sy, tol::kMajorizationRel)) return false;

    if (boundX >= 0 && at == boundX) {
      cumX += ScaledReal::fromLog2(ex[ix].log2w + log2Big(ex[ix].mult));
      doneX = boundX;
      ++ix;
    }
    if (boundY >= 0 && at == boundY) {
      cumY += ScaledReal::fromLog2(ey[iy].log2w + log2Big(ey[iy].mult));
      doneY = boundY;
      ++iy;
    }
  }
  return true;
}

namespace detail {

/// One (source budget, target budget) split of the relaxed order: drop j
/// heaviest source classes (renormalized suffix is a pure state within
/// purified distance sqrt(dropped mass) of the source), truncate the target
/// at epsY, then exact majorization. j sweeps every value the epsX^2 mass
/// budget admits.
inline bool relaxedDominates(const SchmidtSpectrum& xs, const SchmidtSpectrum& ys, double epsX,
                             double epsY) {
  const SchmidtSpectrum yT = truncateSpectrum(ys, epsY);
  if (majorizationDominates(xs, yT)) return true;
  if (epsX <= 0.0) return false;

  const auto& ex = xs.entries();
  std::vector<ScaledReal> suffixMass(ex.size() + 1);
  for (std::size_t i = ex.size(); i-- > 0;) {
    suffixMass[i] = suffixMass[i + 1];
    suffixMass[i] += ScaledReal::fromLog2(ex[i].log2w + log2Big(ex[i].mult));
  }

  const double budget = epsX * epsX;
  ScaledReal dropped;
  for (std::size_t j = 1; j < ex.size(); ++j) {
    dropped += ScaledReal::fromLog2(ex[j - 1].log2w + log2Big(ex[j - 1].mult));
    if (dropped.toDouble() > budget) return false;
    std::vector<SpectrumEntry> kept(ex.begin() + static_cast<std::ptrdiff_t>(j), ex.end());
    const double renorm = suffixMass[j].log2();
    for (auto& entry : kept) entry.log2w -= renorm;
    if (majorizationDominates(SchmidtSpectrum::fromLog2Entries(std::move(kept)), yT)) return true;
  }
  return false;
}

}  // namespace detail

/// eps-relaxed single-shot order on bipartite pure spectra: can a state with
/// spectrum xs reach within purified distance eps of a state with spectrum
/// ys? Decided by exhibiting pure states x' (drop heaviest source classes)
/// and y' (truncate target) with D(x,x') + D(y',y) <= eps and x' majorized by
/// y''s spectrum exactly; contractivity of the purified distance under the
/// exact protocol makes every yes answer sound. The eps budget is tried on
/// the target, on the source, and split evenly; each arm's reach grows with
/// eps, so the answer is monotone in eps.
inline bool majorizationGeq(const SchmidtSpectrum& xs, const SchmidtSpectrum& ys, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::domain_error("majorization_geq: need 0 <= eps < 1");
  if (eps == 0.0) return majorizationDominates(xs, ys);
  return detail::relaxedDominates(xs, ys, 0.0, eps) ||
         detail::relaxedDominates(xs, ys, 0.5 * eps, 0.5 * eps) ||
         detail::relaxedDominates(xs, ys, eps, 0.0);
}

template <class M>
concept PreorderedMonoid = requires(const M& m, const typename M::Element& x,
                                    const typename M::Element& y, std::int64_t n, double eps) {
  { m.unit() } -> std::convertible_to<typename M::Element>;
  { m.generator() } -> std::convertible_to<typename M::Element>;
  { m.combine(x, y) } -> std::convertible_to<typename M::Element>;
  { m.power(x, n) } -> std::convertible_to<typename M::Element>;
  { m.geq(x, y, eps) } -> std::convertible_to<bool>;
};

/// (N, +, >=) with generator 1. The order is exact; eps is ignored.
class ToyNaturalsMonoid {
 public:
  using Element = std::int64_t;

  Element unit() const { return 0; }
  Element generator() const { return 1; }
  Element combine(Element x, Element y) const { return x + y; }
  Element power(Element x, std::int64_t n) const {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    if (x != 0 && n > (std::int64_t{1} << 40) / x) throw std::overflow_error("toy power overflow");
    return x * n;
  }
  bool geq(Element x, Element y, double) const { return x >= y; }
};

/// Bipartite pure states under LOCC, element = grouped Schmidt spectrum,
/// combine = tensor, generator = EPR, order = majorization with the
/// eps-relaxation above.
class BipartitePureMonoid {
 public:
  using Element = SchmidtSpectrum;

  Element unit() const { return SchmidtSpectrum::uniform(1); }
  Element generator() const { return SchmidtSpectrum::uniform(2); }
  Element combine(const Element& x, const Element& y) const { return tensorSpectra(x, y); }
  Element power(const Element& x, std::int64_t n) const {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    if (n == 0) return unit();
    return spectrumPower(x, n);
  }
  bool geq(const Element& x, const Element& y, double eps) const {
    return majorizationGeq(x, y, eps);
  }
};

template <class Real>
SchmidtSpectrum bipartiteElement(const PureState<Real>& s) {
  if (s.k() != 2) throw std::invalid_argument("bipartite element: state must be bipartite");
  return schmidtSpectrum(s, Cut({1}));
}

struct RateWitness {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  double eps = 0.0;
};

struct RateTableRow {
  std::int64_t n;
  std::int64_t d;
  std::int64_t m;
  double ratio;
};

struct RateSearchResult {
  double bestRatio = 0.0;
  RateWitness witness;
  std::vector<RateTableRow> table;
};

inline constexpr std::int64_t kRateSearchNMaxCap = 5000;

/// For each n up to nMax, the largest m with x^n g^{floor(delta n)} >= y^m at
/// slack eps; the best m/n is a certified lower bound on the delta,eps-relaxed
/// transformation rate. Binary search over m leans on antitonicity of the
/// oracle in m, which is verified at the located boundary rather than
/// assumed.
template <PreorderedMonoid M>
RateSearchResult achievableRateLowerBound(const M& monoid, const typename M::Element& x,
                                          const typename M::Element& y, double delta, double eps,
                                          std::int64_t nMax) {
  if (nMax < 1 || nMax > kRateSearchNMaxCap) {
    throw std::invalid_argument("achievable_rate_lower_bound: n_max outside [1, 5000]");
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("achievable_rate_lower_bound: delta < 0");
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("achievable_rate_lower_bound: eps outside [0, 1)");
  }
  if (monoid.geq(monoid.unit(), y, eps)) {
    throw std::invalid_argument(
        "achievable_rate_lower_bound: target is reachable from the unit; the rate is unbounded");
  }

  constexpr std::int64_t kDoublingCap = std::int64_t{1} << 24;
  RateSearchResult result;
  bool haveWitness = false;

  for (std::int64_t n = 1; n <= nMax; ++n) {
    const auto d = static_cast<std::int64_t>(std::floor(delta * static_cast<double>(n) + 1e-9));
    typename M::Element source = monoid.power(x, n);
    if (d > 0) source = monoid.combine(source, monoid.power(monoid.generator(), d));

    const auto reaches = [&](std::int64_t m) { return monoid.geq(source, monoid.power(y, m), eps); };

    // Doubling to bracket, then binary search: lo always reaches, hi never.
    std::int64_t lo = 0, hi = 1;
    while (reaches(hi)) {
      lo = hi;
      hi *= 2;
      if (hi > kDoublingCap) {
        throw std::logic_error("achievable_rate_lower_bound: m search exceeded 2^24");
      }
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (reaches(mid) ? lo : hi) = mid;
    }
    if (!reaches(lo) || reaches(lo + 1)) {
      throw std::logic_error(
          "achievable_rate_lower_bound: order oracle is not antitone at the located boundary");
    }

    const double ratio = static_cast<double>(lo) / static_cast<double>(n);
    result.table.push_back({n, d, lo, ratio});
    if (!haveWitness || ratio > result.bestRatio) {
      result.bestRatio = ratio;
      result.witness = {n, lo, d, eps};
      haveWitness = true;
    }
  }
  return result;
}

}  // namespace loccrate
