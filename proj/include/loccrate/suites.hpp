#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "loccrate/functionals.hpp"
#include "loccrate/monoid.hpp"
#include "loccrate/protocols.hpp"
#include "loccrate/random.hpp"
#include "loccrate/rates.hpp"
#include "loccrate/spectrum.hpp"
#include "loccrate/states.hpp"

namespace loccrate {

using Json = nlohmann::ordered_json;

/// Machine-readable outcome of a verification suite. The JSON layout is
/// stable and deterministic for a fixed (suite, seed), byte for byte.
struct Report {
  Json json;
  bool pass = true;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hexDigest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

template <class Real>
std::uint64_t stateHash(const PureState<Real>& s, std::uint64_t h = 14695981039346656037ull) {
  for (const std::int64_t d : s.dims().dims()) h = fnv1a64(&d, sizeof d, h);
  for (Eigen::Index i = 0; i < s.amps().size(); ++i) {
    const double re = static_cast<double>(s.amps()[i].real());
    const double im = static_cast<double>(s.amps()[i].imag());
    h = fnv1a64(&re, sizeof re, h);
    h = fnv1a64(&im, sizeof im, h);
  }
  return h;
}

namespace detail {

class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  /// row must already contain its own "pass" flag.
  void add(Json row) {
    allPass_ = allPass_ && row.at("pass").get<bool>();
    ++total_;
    results_.push_back(std::move(row));
  }

  Report finish() && {
    Json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["inputs"] = Json{{"suite", suite_}, {"seed", seed_}};
    j["results"] = std::move(results_);
    j["summary"] = Json{{"total", total_}, {"passed", allPass_ ? total_ : countPassed()}, {"pass", allPass_}};
    return {std::move(j), allPass_};
  }

 private:
  std::int64_t countPassed() const {
    std::int64_t n = 0;
    for (const auto& r : results_) n += r.at("pass").get<bool>() ? 1 : 0;
    return n;
  }

  std::string suite_;
  std::uint64_t seed_;
  Json results_ = Json::array();
  std::int64_t total_ = 0;
  bool allPass_ = true;
};

inline LocalDims randomSmallDims(Rng& rng, std::int64_t k) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(k));
  for (auto& x : d) x = 2 + static_cast<std::int64_t>(rng.uniform() * 2.0);  // 2 or 3
  return LocalDims(d);
}

/// Random normalized Schmidt weights of a given length; rejects nearly
/// separable draws so rate denominators stay safely nonzero.
inline std::vector<double> randomSchmidtWeights(Rng& rng, std::int64_t len) {
  while (true) {
    std::vector<double> w(static_cast<std::size_t>(len));
    double total = 0.0;
    for (auto& x : w) {
      const double g = rng.gaussian();
      x = g * g;
      total += x;
    }
    double maxW = 0.0;
    for (auto& x : w) {
      x /= total;
      maxW = std::max(maxW, x);
    }
    if (maxW < 1.0 - 1e-3) return w;
  }
}

inline Report axiomsSuite(std::uint64_t seed) {
  SuiteBuilder b("axioms", seed);
  Rng rng(seed);

  for (std::int64_t k = 2; k <= 4; ++k) {
    const auto g = ghz<double>(2, k);
    double worst = 0.0;
    for (const auto& e : cutEntropyFamily(k)) worst = std::max(worst, std::abs(evaluate(e, g) - 1.0));
    b.add(Json{{"check", "normalization"},
               {"k", k},
               {"inputs_digest", hexDigest(stateHash(g))},
               {"residual", worst},
               {"tolerance", 1e-12},
               {"pass", worst <= 1e-12}});
  }

  for (int i = 0; i < 40; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    double worst = 0.0;
    for (const auto& e : cutEntropyFamily(k)) {
      worst = std::max(worst, checkAdditivity(e, phi, psi, 1e-8).residual);
    }
    b.add(Json{{"check", "additivity"},
               {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
               {"residual", worst},
               {"tolerance", 1e-8},
               {"pass", worst <= 1e-8}});
  }

  for (int i = 0; i < 40; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const double p = 0.05 + 0.9 * rng.uniform();
    double worst = 0.0;
    for (const auto& e : cutEntropyFamily(k)) {
      worst = std::max(worst, checkChainRule(e, phi, psi, p, 1e-8).residual);
    }
    b.add(Json{{"check", "chain-rule"},
               {"inputs_digest", hexDigest(fnv1a64(&p, sizeof p, stateHash(psi, stateHash(phi))))},
               {"p", p},
               {"residual", worst},
               {"tolerance", 1e-8},
               {"pass", worst <= 1e-8}});
  }

  // Flag measurement on a direct sum: slack must be exactly h(p).
  for (int i = 0; i < 20; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const double p = 0.05 + 0.9 * rng.uniform();
    const auto whole = directSum(phi, psi, p);
    const Ensemble<double> ens({{p, directSum(phi, psi, 1.0)}, {1.0 - p, directSum(phi, psi, 0.0)}});
    double minSlack = 1e300;
    double worstGap = 0.0;
    for (const auto& e : cutEntropyFamily(k)) {
      const auto r = checkMonotoneOnAverage(e, whole, ens, 1e-9);
      minSlack = std::min(minSlack, r.slack);
      worstGap = std::max(worstGap, std::abs(r.slack - binaryEntropy(p)));
    }
    const bool pass = minSlack >= -1e-9 && worstGap <= 1e-8;
    b.add(Json{{"check", "monotone-on-average-flag"},
               {"inputs_digest", hexDigest(fnv1a64(&p, sizeof p, stateHash(psi, stateHash(phi))))},
               {"min_slack", minSlack},
               {"slack_vs_hp_gap", worstGap},
               {"tolerance", 1e-8},
               {"pass", pass}});
  }

  // Schmidt-basis measurement on a bipartite state: slack equals E(phi).
  for (int i = 0; i < 20; ++i) {
    const std::int64_t len = 2 + (i % 3);
    const auto w = randomSchmidtWeights(rng, len);
    const auto phi = schmidtState<double>(w);
    std::vector<Ensemble<double>::Branch> branches;
    for (std::int64_t j = 0; j < len; ++j) {
      branches.push_back({w[static_cast<std::size_t>(j)], basisState<double>(phi.dims(), {j, j})});
    }
    const Ensemble<double> ens(std::move(branches));
    const auto e = makeCutEntropy(Cut({1}));
    const auto r = checkMonotoneOnAverage(e, phi, ens, 1e-9);
    const double gap = std::abs(r.slack - evaluate(e, phi));
    const bool pass = r.slack >= -1e-9 && gap <= 1e-8;
    b.add(Json{{"check", "monotone-on-average-schmidt"},
               {"inputs_digest", hexDigest(stateHash(phi))},
               {"slack", r.slack},
               {"slack_vs_entropy_gap", gap},
               {"tolerance", 1e-8},
               {"pass", pass}});
  }

  return std::move(b).finish();
}

inline Report continuitySuite(std::uint64_t seed) {
  SuiteBuilder b("continuity", seed);
  Rng rng(seed);

  for (std::int64_t k = 2; k <= 4; ++k) {
    const bool pass = continuityA(0.0, k) == 0.0 && continuityB(0.0, k) == 0.0;
    b.add(Json{{"check", "estimate-vanishes-at-zero"},
               {"k", k},
               {"a0", continuityA(0.0, k)},
               {"b0", continuityB(0.0, k)},
               {"tolerance", 0.0},
               {"pass", pass}});
  }

  for (int i = 0; i < 150; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    double minMargin = 1e300;
    double distance = 0.0;
    for (const auto& e : cutEntropyFamily(k)) {
      const auto r = checkContinuityEstimate(e, phi, psi);
      minMargin = std::min(minMargin, r.margin);
      distance = r.distance;
    }
    b.add(Json{{"check", "continuity-estimate"},
               {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
               {"distance", distance},
               {"min_margin", minMargin},
               {"tolerance", 1e-9},
               {"pass", minMargin >= -1e-9}});
  }

  // Interpolated pairs sweep the distance range down to near zero.
  {
    const LocalDims dims({3, 3});
    const auto phi = randomPureState<double>(rng, dims);
    const auto chi = randomPureState<double>(rng, dims);
    for (const double t : {0.001, 0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8}) {
      ComplexVector<double> v = (1.0 - t) * phi.amps() + t * chi.amps();
      v /= v.norm();
      const PureState<double> psi(dims, std::move(v));
      double minMargin = 1e300;
      double distance = 0.0;
      for (const auto& e : cutEntropyFamily(2)) {
        const auto r = checkContinuityEstimate(e, phi, psi);
        minMargin = std::min(minMargin, r.margin);
        distance = r.distance;
      }
      b.add(Json{{"check", "continuity-estimate-swept"},
                 {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
                 {"mix", t},
                 {"distance", distance},
                 {"min_margin", minMargin},
                 {"tolerance", 1e-9},
                 {"pass", minMargin >= -1e-9}});
    }
  }

  return std::move(b).finish();
}

inline Report ratesSuite(std::uint64_t seed) {
  SuiteBuilder b("rates", seed);
  Rng rng(seed);

  for (int i = 0; i < 30; ++i) {
    const std::int64_t len = 2 + (i % 3);
    const auto phi = schmidtState<double>(randomSchmidtWeights(rng, len));
    const auto psi = schmidtState<double>(randomSchmidtWeights(rng, 2 + ((i + 1) % 3)));
    const double product = bipartitePureRate(phi, psi).value * bipartitePureRate(psi, phi).value;
    const double residual = std::abs(product - 1.0);
    b.add(Json{{"check", "reciprocity"},
               {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
               {"product", product},
               {"residual", residual},
               {"tolerance", 1e-9},
               {"pass", residual <= 1e-9}});
  }

  for (int i = 0; i < 10; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto self = rateUpperBound(phi, phi);
    const double residual = std::abs(self.value - 1.0);
    b.add(Json{{"check", "self-rate"},
               {"inputs_digest", hexDigest(stateHash(phi))},
               {"value", self.value},
               {"residual", residual},
               {"tolerance", 1e-9},
               {"pass", residual <= 1e-9}});
  }

  for (int i = 0; i < 10; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const double one = rateUpperBound(phi, psi).value;
    const double two = rateUpperBound(tensor(phi, phi), psi).value;
    const double residual = std::abs(two - 2.0 * one);
    b.add(Json{{"check", "tensor-scaling"},
               {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
               {"rate", one},
               {"rate_of_square", two},
               {"residual", residual},
               {"tolerance", 1e-9},
               {"pass", residual <= 1e-9}});
  }

  {
    // Sandwich against the search engine on a small instance.
    const auto phi = schmidtState<double>({0.75, 0.25});
    const auto epr = ghz<double>(2, 2);
    const double upper = rateUpperBound(phi, epr).value;
    const double delta = 0.03;
    const double eps = 0.03;
    const BipartitePureMonoid monoid;
    const auto lower = achievableRateLowerBound(monoid, bipartiteElement(phi),
                                                bipartiteElement(epr), delta, eps, 40);
    // The generator contributes at most delta per copy in entropy, so the
    // search cannot certify more than the functional bound plus delta/E(EPR).
    const double cap = upper + delta / 1.0 + 1e-6;
    b.add(Json{{"check", "sandwich"},
               {"inputs_digest", hexDigest(stateHash(epr, stateHash(phi)))},
               {"lower", lower.bestRatio},
               {"upper", upper},
               {"cap", cap},
               {"tolerance", 1e-6},
               {"pass", lower.bestRatio <= cap}});
  }

  {
    // The built-in family cannot separate the three-EPR ring from two GHZ
    // copies; both give cut entropies (2, 2) across every bipartition.
    const auto ring = tensor(tensor(eprPair<double>(1, 2, 3), eprPair<double>(2, 3, 3)),
                             eprPair<double>(1, 3, 3));
    const auto twoGhz = tensor(ghz<double>(2, 3), ghz<double>(2, 3));
    const auto ringBounds = ghzRateBounds(ring);
    const auto ghzBounds = ghzRateBounds(twoGhz);
    const double worst =
        std::max({std::abs(ringBounds.distillUpper - 2.0), std::abs(ringBounds.costLower - 2.0),
                  std::abs(ghzBounds.distillUpper - 2.0), std::abs(ghzBounds.costLower - 2.0)});
    b.add(Json{{"check", "tripartite-family-limit"},
               {"inputs_digest", hexDigest(stateHash(twoGhz, stateHash(ring)))},
               {"ring_bounds", Json::array({ringBounds.distillUpper, ringBounds.costLower})},
               {"two_ghz_bounds", Json::array({ghzBounds.distillUpper, ghzBounds.costLower})},
               {"family_separates", false},
               {"note", "every cut entropy agrees on these states; the built-in family cannot "
                        "separate them, so the bounds coincide"},
               {"residual", worst},
               {"tolerance", 1e-9},
               {"pass", worst <= 1e-9}});
  }

  {
    const auto source = eprPair<double>(1, 2, 3);
    const auto target = ghz<double>(2, 3);
    const auto r = rateUpperBound(source, target);
    b.add(Json{{"check", "epr-to-ghz-impossible"},
               {"inputs_digest", hexDigest(stateHash(target, stateHash(source)))},
               {"value", r.value},
               {"certificate", r.certificate},
               {"tolerance", 1e-12},
               {"pass", std::abs(r.value) <= 1e-12}});
  }

  return std::move(b).finish();
}

inline Report monoidSuite(std::uint64_t seed) {
  SuiteBuilder b("monoid", seed);
  Rng rng(seed);

  {
    const ToyNaturalsMonoid toy;
    const auto r = achievableRateLowerBound(toy, std::int64_t{5}, std::int64_t{2}, 0.0, 0.0, 8);
    const bool witnessHolds =
        toy.geq(toy.combine(toy.power(5, r.witness.n), toy.power(toy.generator(), r.witness.d)),
                toy.power(2, r.witness.m), 0.0);
    const bool pass = r.bestRatio == 2.5 && r.witness.n == 2 && r.witness.m == 5 && witnessHolds;
    b.add(Json{{"check", "toy-exact-rate"},
               {"best_ratio", r.bestRatio},
               {"witness", Json{{"n", r.witness.n}, {"m", r.witness.m}, {"d", r.witness.d}}},
               {"tolerance", 0.0},
               {"pass", pass}});

    // Scaling a valid witness by t preserves the defining inequality.
    bool scaled = true;
    for (const std::int64_t t : {2, 3, 5}) {
      scaled = scaled && toy.geq(toy.combine(toy.power(5, t * r.witness.n),
                                             toy.power(toy.generator(), t * r.witness.d)),
                                 toy.power(2, t * r.witness.m), 0.0);
    }
    b.add(Json{{"check", "toy-witness-scaling"}, {"tolerance", 0.0}, {"pass", scaled}});
  }

  {
    const auto u4 = SchmidtSpectrum::uniform(4);
    const auto u2 = SchmidtSpectrum::uniform(2);
    const auto u3 = SchmidtSpectrum::uniform(3);
    const auto skew = SchmidtSpectrum::fromWeights({{0.9, 1}, {0.1, 1}});
    const bool pass = majorizationGeq(u4, u2, 0.0) && !majorizationGeq(u2, u4, 0.0) &&
                      majorizationGeq(u3, u2, 0.0) && !majorizationGeq(skew, u2, 0.0) &&
                      majorizationGeq(skew, SchmidtSpectrum::uniform(1), 0.0);
    b.add(Json{{"check", "majorization-spot-cases"}, {"tolerance", 0.0}, {"pass", pass}});
  }

  {
    // Exact-witness scaling in the bipartite monoid: uniform(4)^n reaches
    // EPR^(2n), and tensoring witnesses keeps the relation.
    const BipartitePureMonoid m;
    const auto x = SchmidtSpectrum::uniform(4);
    const auto y = m.generator();
    bool pass = true;
    for (const std::int64_t t : {1, 2, 4}) {
      pass = pass && m.geq(m.power(x, 3 * t), m.power(y, 6 * t), 0.0) &&
             !m.geq(m.power(x, 3 * t), m.power(y, 6 * t + 1), 0.0);
    }
    b.add(Json{{"check", "bipartite-witness-scaling"}, {"tolerance", 0.0}, {"pass", pass}});
  }

  {
    const auto s = SchmidtSpectrum::fromWeights({{0.81, 1}, {0.09, 2}, {0.01, 1}});
    const auto t = truncateSpectrum(s, 0.15);
    // eps^2 = 0.0225 allows dropping only the 0.01 atom; renormalizer 0.99.
    const bool sizesOk = t.size() == 2 && t.multiplicity(0) == 1 && t.multiplicity(1) == 2;
    const double w0 = std::abs(t.weight(0) - 0.81 / 0.99);
    const double w1 = std::abs(t.weight(1) - 0.09 / 0.99);
    const bool pass = sizesOk && w0 <= 1e-12 && w1 <= 1e-12;
    b.add(Json{{"check", "truncate-mass-walk"},
               {"kept_classes", static_cast<std::int64_t>(t.size())},
               {"weight_residual", std::max(w0, w1)},
               {"tolerance", 1e-12},
               {"pass", pass}});
  }

  {
    const auto u = SchmidtSpectrum::uniform(1024);
    const auto t = truncateSpectrum(u, 0.15);
    // floor(eps^2 * 1024) = 23 atoms dropped.
    const bool pass = t.rank() == 1001;
    b.add(Json{{"check", "truncate-uniform-atoms"},
               {"kept", t.rank().convert_to<std::int64_t>()},
               {"expected", 1001},
               {"tolerance", 0.0},
               {"pass", pass}});
  }

  for (int i = 0; i < 10; ++i) {
    const auto w = randomSchmidtWeights(rng, 2 + (i % 3));
    std::vector<std::pair<double, BigInt>> pairs;
    for (const double x : w) pairs.emplace_back(x, 1);
    const auto s = SchmidtSpectrum::fromWeights(pairs);
    const bool pass = majorizationGeq(s, SchmidtSpectrum::uniform(1), 0.0) &&
                      majorizationGeq(s, s, 0.0);
    b.add(Json{{"check", "order-units-and-reflexivity"},
               {"tolerance", 0.0},
               {"pass", pass}});
  }

  {
    const BipartitePureMonoid m;
    const auto x = bipartiteElement(schmidtState<double>({0.75, 0.25}));
    const auto y = m.generator();
    const auto low = achievableRateLowerBound(m, x, y, 0.05, 0.01, 30);
    const auto high = achievableRateLowerBound(m, x, y, 0.05, 0.05, 30);
    b.add(Json{{"check", "monotone-in-eps"},
               {"ratio_small_eps", low.bestRatio},
               {"ratio_large_eps", high.bestRatio},
               {"tolerance", 0.0},
               {"pass", high.bestRatio >= low.bestRatio}});
    const auto lowD = achievableRateLowerBound(m, x, y, 0.0, 0.05, 30);
    b.add(Json{{"check", "monotone-in-delta"},
               {"ratio_zero_delta", lowD.bestRatio},
               {"ratio_with_delta", high.bestRatio},
               {"tolerance", 0.0},
               {"pass", high.bestRatio >= lowD.bestRatio}});
  }

  {
    const BipartitePureMonoid m;
    const auto r = achievableRateLowerBound(m, bipartiteElement(schmidtState<double>({0.75, 0.25})),
                                            m.generator(), 0.05, 0.05, 40);
    const bool pass = r.bestRatio >= 0.5 && r.bestRatio <= 0.8673;
    b.add(Json{{"check", "distillation-window"},
               {"best_ratio", r.bestRatio},
               {"window", Json::array({0.5, 0.8673})},
               {"tolerance", 0.0},
               {"pass", pass}});
  }

  return std::move(b).finish();
}

inline Report protocolsSuite(std::uint64_t seed) {
  SuiteBuilder b("protocols", seed);
  Rng rng(seed);

  for (const std::int64_t n : {std::int64_t{1}, std::int64_t{2}, std::int64_t{50}, std::int64_t{100},
                               std::int64_t{500}}) {
    for (const double p : {0.0, 0.25, 0.5, 1.0}) {
      const auto branches = binomialDecomposition(n, p);
      std::vector<double> probs;
      for (const auto& br : branches) probs.push_back(br.probability);
      const double gap = std::abs(pairwiseSum(probs) - 1.0);
      const double tolerance = (n == 100 && p == 0.25) ? 1e-12 : 1e-9;
      b.add(Json{{"check", "branch-probability-sum"},
                 {"n", n},
                 {"p", p},
                 {"residual", gap},
                 {"tolerance", tolerance},
                 {"pass", gap <= tolerance}});
    }
  }

  for (const std::int64_t n :
       {std::int64_t{1}, std::int64_t{2}, std::int64_t{10}, std::int64_t{100}, std::int64_t{500},
        std::int64_t{2000}}) {
    for (const double p : {0.1, 0.25, 0.5}) {
      const double yield = concentrationYield(n, p);
      const double elg = expectedLogGhz(n, p);
      const double hp = binaryEntropy(p);
      // Method-of-types floor: E >= sum_m P(m) h(m/n) - 2 log2(n+1)/n.
      const auto branches = binomialDecomposition(n, p);
      std::vector<double> terms;
      for (const auto& br : branches) {
        terms.push_back(br.probability *
                        binaryEntropy(static_cast<double>(br.m) / static_cast<double>(n)));
      }
      const double floorBound =
          pairwiseSum(terms) - 2.0 * std::log2(static_cast<double>(n + 1)) / static_cast<double>(n);
      const bool pass = yield <= elg + 1e-12 && elg <= hp + 1e-12 && elg >= floorBound - 1e-12;
      b.add(Json{{"check", "yield-chain"},
                 {"n", n},
                 {"p", p},
                 {"yield", yield},
                 {"expected_log_ghz", elg},
                 {"h_p", hp},
                 {"types_floor", floorBound},
                 {"tolerance", 1e-12},
                 {"pass", pass}});
    }
  }

  for (const std::int64_t n :
       {std::int64_t{1}, std::int64_t{2}, std::int64_t{10}, std::int64_t{100}, std::int64_t{1000}}) {
    const auto row = binomialRow(n);
    double minLow = 1e300;
    double minHigh = 1e300;
    for (std::int64_t m = 0; m <= n; ++m) {
      const auto lb = logBinomialBounds(n, m, row[static_cast<std::size_t>(m)]);
      minLow = std::min(minLow, lb.exact - lb.lower);
      minHigh = std::min(minHigh, lb.upper - lb.exact);
    }
    const bool pass = minLow >= 0.0 && minHigh >= -1e-12;
    b.add(Json{{"check", "log-binomial-chain"},
               {"n", n},
               {"min_margin_lower", minLow},
               {"min_margin_upper", minHigh},
               {"tolerance", 1e-12},
               {"pass", pass}});
  }

  for (int i = 0; i < 30; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims = randomSmallDims(rng, k);
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const auto c = continuityConstruction(phi, psi);

    const std::complex<double> ip = innerProduct(phi, psi);
    const double unitResidual =
        std::abs(std::norm(c.a) + std::norm(c.b) + 2.0 * (std::conj(c.a) * c.b * ip).real() - 1.0);
    const double aResidual = std::abs(
        c.a.real() + std::sqrt((c.q / (1.0 - c.q)) * std::pow(c.lambda / (1.0 - c.lambda),
                                                              static_cast<double>(k))));
    const double f = std::abs(ip);
    const double d2 = 1.0 - f * f;
    const double uClosed =
        d2 >= 1.0 ? 0.0
                  : (1.0 - d2) / std::pow(1.0 + std::pow(std::sqrt(d2), 2.0 / (k + 1.0)), k + 1.0);
    const double uResidual = std::abs(c.u - uClosed);
    const auto check = continuityProtocolCheck(c, phi, psi);

    double worstMono = -1e300;
    for (const auto& e : cutEntropyFamily(k)) {
      const double lhs = c.u * evaluate(e, psi);
      const double rhs = c.q * evaluate(e, phi) + (1.0 - c.q) * evaluate(e, c.omega) +
                         binaryEntropy(c.q);
      worstMono = std::max(worstMono, lhs - rhs);
    }

    const bool pass = unitResidual <= 1e-9 && aResidual <= 1e-9 && uResidual <= 1e-9 &&
                      check.pass && worstMono <= 1e-9;
    b.add(Json{{"check", "continuity-construction"},
               {"inputs_digest", hexDigest(stateHash(psi, stateHash(phi)))},
               {"unit_residual", unitResidual},
               {"amplitude_residual", aResidual},
               {"u_residual", uResidual},
               {"projection_residual", check.residual},
               {"success_weight", check.successWeight},
               {"monotone_excess", worstMono},
               {"tolerance", 1e-9},
               {"pass", pass}});
  }

  {
    // Near-identical pair: guaranteed success weight stays above 0.99.
    const auto phi = schmidtState<double>({0.7, 0.3});
    const double theta = 1e-4;
    ComplexVector<double> v = phi.amps();
    v[1] += theta;  // rotate slightly within the same dims
    v /= v.norm();
    const PureState<double> psi(phi.dims(), std::move(v));
    const auto c = continuityConstruction(phi, psi);
    b.add(Json{{"check", "near-pair-success-weight"},
               {"distance", static_cast<double>(purifiedDistance(phi, psi))},
               {"u", c.u},
               {"tolerance", 0.0},
               {"pass", c.u >= 0.99}});
  }

  {
    const std::uint64_t simSeed = seed ^ 0x9e3779b97f4a7c15ull;
    const auto stats = concentrationSimulate(500, 0.25, 10000, simSeed);
    const auto again = concentrationSimulate(500, 0.25, 10000, simSeed);
    const double expect = concentrationYield(500, 0.25);
    const double window = 3.0 * std::max(stats.standardError, 1e-12);
    const bool pass = stats.mean == again.mean && std::abs(stats.mean - expect) <= window;
    b.add(Json{{"check", "concentration-simulation"},
               {"n", stats.n},
               {"p", stats.p},
               {"shots", stats.shots},
               {"seed", stats.seed},
               {"mean", stats.mean},
               {"expected", expect},
               {"window_3sigma", window},
               {"tolerance", window},
               {"pass", pass}});
  }

  return std::move(b).finish();
}

}  // namespace detail

inline Report runSuite(const std::string& name, std::uint64_t seed) {
  if (name == "axioms") return detail::axiomsSuite(seed);
  if (name == "continuity") return detail::continuitySuite(seed);
  if (name == "rates") return detail::ratesSuite(seed);
  if (name == "monoid") return detail::monoidSuite(seed);
  if (name == "protocols") return detail::protocolsSuite(seed);
  throw std::invalid_argument("run_suite: unknown suite \"" + name +
                              "\" (expected axioms, continuity, rates, monoid, or protocols)");
}

}  // namespace loccrate
