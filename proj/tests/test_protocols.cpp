#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <loccrate/functionals.hpp>
#include <loccrate/protocols.hpp>
#include <loccrate/random.hpp>
#include <loccrate/states.hpp>

using namespace loccrate;

TEST_CASE("binomial decomposition enumerates outcome branches") {
  const auto one = binomialDecomposition(1, 0.25);
  REQUIRE(one.size() == 2);
  CHECK(one[0].m == 0);
  CHECK(one[0].probability == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(one[1].probability == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(one[1].ghzRank == 1);

  const auto two = binomialDecomposition(2, 0.5);
  CHECK(two[1].ghzRank == 2);
  CHECK(two[1].probability == doctest::Approx(0.5).epsilon(1e-14));

  // Degenerate biases put all probability on one branch.
  const auto sure = binomialDecomposition(5, 1.0);
  for (const auto& b : sure) {
    CHECK(b.probability == doctest::Approx(b.m == 5 ? 1.0 : 0.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(binomialDecomposition(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomialDecomposition(5, 1.5), std::invalid_argument);
}

TEST_CASE("branch probabilities sum to one in the log domain") {
  for (const std::int64_t n : {std::int64_t{10}, std::int64_t{100}, std::int64_t{1000}}) {
    for (const double p : {0.1, 0.25, 0.5, 0.9}) {
      const auto branches = binomialDecomposition(n, p);
      std::vector<double> probs;
      for (const auto& b : branches) probs.push_back(b.probability);
      CHECK(std::abs(pairwiseSum(probs) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("concentration yield frozen values") {
  CHECK(concentrationYield(2, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(concentrationYield(500, 0.25) ==
        doctest::Approx(0.7996597687788762).epsilon(1e-12));
  CHECK(concentrationYield(2000, 0.25) ==
        doctest::Approx(0.8078562482887455).epsilon(1e-12));
  CHECK(expectedLogGhz(2000, 0.25) == doctest::Approx(0.808116930113103).epsilon(1e-12));
  CHECK(std::abs(concentrationYield(2000, 0.25) - binaryEntropy(0.25)) <= 0.02);
}

TEST_CASE("yield chain: floor, expectation, entropy ceiling") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    for (const double p : {0.1, 0.25, 0.5}) {
      const double y = concentrationYield(n, p);
      const double e = expectedLogGhz(n, p);
      CHECK(y <= e + 1e-12);
      CHECK(e <= binaryEntropy(p) + 1e-12);
    }
  }
  // Types floor keeps the expectation within 2 log2(n+1)/n of the entropy.
  for (const std::int64_t n : {std::int64_t{10}, std::int64_t{100}, std::int64_t{1000}}) {
    const auto branches = binomialDecomposition(n, 0.25);
    std::vector<double> terms;
    for (const auto& b : branches) {
      terms.push_back(b.probability *
                      binaryEntropy(static_cast<double>(b.m) / static_cast<double>(n)));
    }
    const double floorBound =
        pairwiseSum(terms) - 2.0 * std::log2(static_cast<double>(n + 1)) / static_cast<double>(n);
    CHECK(expectedLogGhz(n, 0.25) >= floorBound - 1e-12);
  }
}

TEST_CASE("log binomial bounds") {
  const auto b10 = logBinomialBounds(1, 0);
  CHECK(b10.lower == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(b10.exact == 0.0);
  CHECK(b10.upper == 0.0);

  const auto b21 = logBinomialBounds(2, 1);
  CHECK(b21.lower == doctest::Approx(-1.1699250014423122).epsilon(1e-12));
  CHECK(b21.exact == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b21.upper == doctest::Approx(2.0).epsilon(1e-14));

  for (const std::int64_t n : {std::int64_t{1}, std::int64_t{7}, std::int64_t{64},
                               std::int64_t{301}}) {
    const auto row = binomialRow(n);
    for (std::int64_t m = 0; m <= n; ++m) {
      const auto b = logBinomialBounds(n, m, row[static_cast<std::size_t>(m)]);
      CHECK(b.lower <= b.exact + 1e-12);
      CHECK(b.exact <= b.upper + 1e-12);
    }
  }
}

TEST_CASE("concentration simulation is seeded and concentrates") {
  const auto a = concentrationSimulate(500, 0.25, 10000, 7);
  const auto b = concentrationSimulate(500, 0.25, 10000, 7);
  CHECK(a.mean == b.mean);
  CHECK(a.stddev == b.stddev);
  REQUIRE(a.histogram.size() == b.histogram.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.histogram.size(); ++i) {
    CHECK(a.histogram[i].m == b.histogram[i].m);
    CHECK(a.histogram[i].count == b.histogram[i].count);
    total += a.histogram[i].count;
    // Histogram yields repeat the exact floor formula.
    CHECK(a.histogram[i].yield ==
          doctest::Approx(static_cast<double>(floorLog2(binomial(500, a.histogram[i].m))) / 500.0)
              .epsilon(1e-14));
  }
  CHECK(total == 10000);
  CHECK(std::abs(a.mean - concentrationYield(500, 0.25)) <= 4.0 * a.standardError);

  const auto c = concentrationSimulate(500, 0.25, 10000, 8);
  CHECK(a.mean != c.mean);  // different seed, different draws
}

TEST_CASE("two-outcome construction satisfies its defining constraints") {
  Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    const std::int64_t k = 2 + (i % 2);
    const LocalDims dims(std::vector<std::int64_t>(static_cast<std::size_t>(k), 2));
    const auto phi = randomPureState<double>(rng, dims);
    const auto psi = randomPureState<double>(rng, dims);
    const auto c = continuityConstruction(phi, psi);

    // omega is a valid normalized state by construction (checked in its ctor);
    // the coefficients must make a*phi + b*psi unit.
    const std::complex<double> ip = innerProduct(phi, psi);
    CHECK(std::abs(std::norm(c.a) + std::norm(c.b) + 2.0 * (std::conj(c.a) * c.b * ip).real() -
                   1.0) <= 1e-9);

    // The phi component must cancel in the failure branch.
    CHECK(std::abs(c.a.real() +
                   std::sqrt((c.q / (1.0 - c.q)) *
                             std::pow(c.lambda / (1.0 - c.lambda), static_cast<double>(k)))) <=
          1e-9);
    CHECK(c.a.imag() == 0.0);

    const double f = std::min(std::abs(ip), 1.0);
    const double d = std::sqrt(std::max(0.0, 1.0 - f * f));
    CHECK(c.q == doctest::Approx(1.0 / (1.0 + std::pow(d, 2.0 / (k + 1.0)))).epsilon(1e-12));
    CHECK(c.lambda == doctest::Approx(c.q).epsilon(1e-12));
    CHECK(c.u ==
          doctest::Approx((1.0 - d * d) / std::pow(1.0 + std::pow(d, 2.0 / (k + 1.0)), k + 1.0))
              .epsilon(1e-9));

    const auto check = continuityProtocolCheck(c, phi, psi);
    CHECK(check.pass);
    CHECK(check.residual <= 1e-9);
    CHECK(check.successWeight == doctest::Approx(c.u).epsilon(1e-9));

    // Entropy bookkeeping across the two outcomes.
    for (const auto& e : cutEntropyFamily(k)) {
      const double lhs = c.u * evaluate(e, psi);
      const double rhs = c.q * evaluate(e, phi) + (1.0 - c.q) * evaluate(e, c.omega) +
                         binaryEntropy(c.q);
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}

TEST_CASE("construction u frozen values") {
  const auto pairAt = [](double s, std::int64_t k) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(k), 2);
    const LocalDims dims(d);
    ComplexVector<double> a = ComplexVector<double>::Zero(dims.total());
    a[0] = 1.0;
    const PureState<double> phi(dims, a);
    ComplexVector<double> b = ComplexVector<double>::Zero(dims.total());
    b[0] = std::sqrt(1.0 - s);
    b[dims.total() - 1] = std::sqrt(s);
    const PureState<double> psi(dims, b);
    return continuityConstruction(phi, psi);  // D = sqrt(s)
  };
  CHECK(pairAt(0.36, 2).u == doctest::Approx(0.12768551618574017).epsilon(1e-12));
  CHECK(pairAt(1e-6, 2).u == doctest::Approx(0.9705891773374964).epsilon(1e-9));
  CHECK(pairAt(1e-8, 2).u == doctest::Approx(0.9935644358494545).epsilon(1e-9));
  CHECK(pairAt(1e-6, 3).u == doctest::Approx(0.8829088646395782).epsilon(1e-9));
  CHECK(pairAt(1e-8, 2).u >= 0.99);
}

TEST_CASE("construction rejects degenerate pairs") {
  const auto g = ghz<double>(2, 2);
  CHECK_THROWS_AS(continuityConstruction(g, g), std::domain_error);
  const auto up = basisState<double>(g.dims(), {0, 0});
  const auto down = basisState<double>(g.dims(), {1, 1});
  CHECK_THROWS_AS(continuityConstruction(up, down), std::domain_error);
  CHECK_THROWS_AS(continuityConstruction(g, ghz<double>(2, 3)), std::invalid_argument);
}
