#include <doctest.h>

#include <stdexcept>

#include <loccrate/functionals.hpp>
#include <loccrate/random.hpp>
#include <loccrate/states.hpp>

using namespace loccrate;

TEST_CASE("binary entropy") {
  CHECK(binaryEntropy(0.0) == 0.0);
  CHECK(binaryEntropy(1.0) == 0.0);
  CHECK(binaryEntropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binaryEntropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(binaryEntropy(0.9) == doctest::Approx(0.4689955935892811).epsilon(1e-14));
  CHECK_THROWS_AS(binaryEntropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binaryEntropy(1.1), std::domain_error);
}

TEST_CASE("cut entropy family spans all bipartitions containing party 1") {
  CHECK(cutEntropyFamily(2).size() == 1);
  CHECK(cutEntropyFamily(3).size() == 3);
  CHECK(cutEntropyFamily(4).size() == 7);
  CHECK_THROWS_AS(cutEntropyFamily(1), std::invalid_argument);
  for (const auto& e : cutEntropyFamily(3)) {
    const auto parties = e.cut.parties();
    CHECK(parties.front() == 1);
    CHECK(e.label == e.cut.label());
  }
}

TEST_CASE("every family member is 1 on the shared reference state") {
  for (std::int64_t k = 2; k <= 4; ++k) {
    const auto g = ghz<double>(2, k);
    for (const auto& e : cutEntropyFamily(k)) {
      CHECK(evaluate(e, g) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("additivity and chain rule on fixed random draws") {
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    const LocalDims dims({2, 3, 2});
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const double p = 0.05 + 0.9 * rng.uniform();
    for (const auto& e : cutEntropyFamily(3)) {
      CHECK(checkAdditivity(e, phi, psi, 1e-8).pass);
      CHECK(checkChainRule(e, phi, psi, p, 1e-8).pass);
    }
  }
}

TEST_CASE("averaged entropy never exceeds the whole state") {
  Rng rng(22);
  const LocalDims dims({2, 2});
  const auto phi = randomPureState<double>(rng, dims);
  const auto psi = randomPureState<double>(rng, dims);
  const double p = 0.4;
  const auto whole = directSum(phi, psi, p);
  const Ensemble<double> ens({{p, directSum(phi, psi, 1.0)}, {1.0 - p, directSum(phi, psi, 0.0)}});
  const auto e = makeCutEntropy(Cut({1}));
  const auto r = checkMonotoneOnAverage(e, whole, ens, 1e-9);
  CHECK(r.pass);
  CHECK(r.slack == doctest::Approx(binaryEntropy(p)).epsilon(1e-9));
}

TEST_CASE("ensembles validate probabilities") {
  const auto s = ghz<double>(2, 2);
  CHECK_THROWS_AS(Ensemble<double>({{0.6, s}, {0.6, s}}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble<double>({{-0.1, s}, {1.1, s}}), std::invalid_argument);
  CHECK_NOTHROW(Ensemble<double>({{0.5, s}, {0.5, s}}));
}

TEST_CASE("continuity envelope closed forms") {
  for (std::int64_t k = 1; k <= 4; ++k) {
    CHECK(continuityA(0.0, k) == 0.0);
    CHECK(continuityB(0.0, k) == 0.0);
  }
  CHECK(continuityA(0.1, 2) == doctest::Approx(0.813715224260554).epsilon(1e-12));
  CHECK(std::abs(continuityA(0.1, 2) - 0.8139) <= 2.5e-4);
  CHECK(continuityB(0.1, 2) == doctest::Approx(1.2225077307921595).epsilon(1e-12));
  CHECK(continuityA(0.3, 3) == doctest::Approx(5.305667361567981).epsilon(1e-12));
  CHECK(continuityB(0.3, 3) == doctest::Approx(5.9115234718289615).epsilon(1e-12));
  CHECK_THROWS_AS(continuityA(-0.1, 2), std::domain_error);
  CHECK_THROWS_AS(continuityA(1.0, 2), std::domain_error);
  CHECK_THROWS_AS(continuityB(1.0, 2), std::domain_error);

  // Both envelopes grow with the distance.
  double prevA = 0.0;
  double prevB = 0.0;
  for (double d = 0.05; d < 1.0; d += 0.05) {
    CHECK(continuityA(d, 3) > prevA);
    CHECK(continuityB(d, 3) > prevB);
    prevA = continuityA(d, 3);
    prevB = continuityB(d, 3);
  }
}

TEST_CASE("continuity estimate holds for identical and random pairs") {
  Rng rng(23);
  const LocalDims dims({2, 3});
  const auto phi = randomPureState<double>(rng, dims);
  const auto e = makeCutEntropy(Cut({1}));
  const auto same = checkContinuityEstimate(e, phi, phi);
  CHECK(same.pass);
  CHECK(same.distance == doctest::Approx(0.0).epsilon(1e-12));

  for (int i = 0; i < 20; ++i) {
    const auto a = randomPureState<double>(rng, dims);
    const auto b = randomPureState<double>(rng, dims);
    const auto r = checkContinuityEstimate(e, a, b);
    CHECK(r.pass);
    CHECK(r.margin >= -1e-9);
  }

  CHECK_THROWS_AS(checkContinuityEstimate(e, phi, ghz<double>(2, 2)), std::invalid_argument);
}
