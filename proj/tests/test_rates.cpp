#include <doctest.h>

#include <stdexcept>

#include <loccrate/random.hpp>
#include <loccrate/rates.hpp>
#include <loccrate/states.hpp>

using namespace loccrate;

TEST_CASE("bipartite exact rate is the entropy ratio") {
  const auto phi = schmidtState<double>({0.9, 0.1});
  const auto epr = ghz<double>(2, 2);
  const auto r = bipartitePureRate(phi, epr);
  CHECK(r.value == doctest::Approx(0.4689955935892811).epsilon(1e-12));
  CHECK(r.kind == RateKind::Exact);
  CHECK(r.certificate == "cut:1");

  const auto back = bipartitePureRate(epr, phi);
  CHECK(r.value * back.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reciprocity on random entangled bipartite pairs") {
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    ComplexVector<double> v(4);
    for (Eigen::Index j = 0; j < 4; ++j) v[j] = {rng.gaussian(), rng.gaussian()};
    v /= v.norm();
    const PureState<double> a(LocalDims({2, 2}), v);
    for (Eigen::Index j = 0; j < 4; ++j) v[j] = {rng.gaussian(), rng.gaussian()};
    v /= v.norm();
    const PureState<double> b(LocalDims({2, 2}), v);
    const double product = bipartitePureRate(a, b).value * bipartitePureRate(b, a).value;
    CHECK(product == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("rate upper bound minimizes over the family") {
  const auto g = ghz<double>(2, 3);
  const auto e = eprPair<double>(1, 2, 3);

  const auto toEpr = rateUpperBound(g, e);
  CHECK(toEpr.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(toEpr.kind == RateKind::UpperBound);

  // The pair is separable across cut:1,2, so that direction collapses.
  const auto toGhz = rateUpperBound(e, g);
  CHECK(toGhz.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(toGhz.certificate == "cut:1,2");
}

TEST_CASE("self rate is 1 and k=2 is exact only for entangled sources") {
  Rng rng(32);
  const auto phi = randomPureState<double>(rng, LocalDims({2, 3, 2}));
  const auto self = rateUpperBound(phi, phi);
  CHECK(self.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(self.kind == RateKind::UpperBound);

  const auto epr = ghz<double>(2, 2);
  CHECK(rateUpperBound(epr, epr).kind == RateKind::Exact);
  const auto product = basisState<double>(LocalDims({2, 2}), {0, 0});
  const auto fromProduct = rateUpperBound(product, epr);
  CHECK(fromProduct.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fromProduct.kind == RateKind::UpperBound);  // exactness withheld
}

TEST_CASE("separable targets are rejected") {
  const auto epr = ghz<double>(2, 2);
  const auto product = basisState<double>(LocalDims({2, 2}), {0, 0});
  CHECK_THROWS_AS(rateUpperBound(epr, product), std::domain_error);
  CHECK_THROWS_AS(bipartitePureRate(epr, product), std::domain_error);
  CHECK_THROWS_AS(rateUpperBound(epr, ghz<double>(2, 3)), std::invalid_argument);  // k mismatch
}

TEST_CASE("rates scale with tensor powers of the source") {
  Rng rng(33);
  for (int i = 0; i < 5; ++i) {
    const auto phi = randomPureState<double>(rng, LocalDims({2, 2}));
    const auto psi = randomPureState<double>(rng, LocalDims({2, 2}));
    const double one = rateUpperBound(phi, psi).value;
    const double two = rateUpperBound(tensor(phi, phi), psi).value;
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-9));
  }
}

TEST_CASE("ghz rate bounds") {
  const auto g = ghz<double>(2, 3);
  const auto gb = ghzRateBounds(g);
  CHECK(gb.distillUpper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gb.costLower == doctest::Approx(1.0).epsilon(1e-12));

  const auto ring = tensor(tensor(eprPair<double>(1, 2, 3), eprPair<double>(2, 3, 3)),
                           eprPair<double>(1, 3, 3));
  const auto rb = ghzRateBounds(ring);
  CHECK(rb.distillUpper == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rb.costLower == doctest::Approx(2.0).epsilon(1e-12));

  const auto twoGhz = tensor(g, g);
  const auto tb = ghzRateBounds(twoGhz);
  CHECK(tb.distillUpper == doctest::Approx(rb.distillUpper).epsilon(1e-12));
  CHECK(tb.costLower == doctest::Approx(rb.costLower).epsilon(1e-12));

  // A dangling product party collapses the distillation side only.
  const auto hang = eprPair<double>(1, 2, 3);
  CHECK(ghzRateBounds(hang).distillUpper == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ghzRateBounds(hang).costLower == doctest::Approx(1.0).epsilon(1e-12));

  ComplexVector<double> lone(2);
  lone << 1.0, 0.0;
  CHECK_THROWS_AS(ghzRateBounds(PureState<double>(LocalDims({2}), lone)),
                  std::invalid_argument);
}
