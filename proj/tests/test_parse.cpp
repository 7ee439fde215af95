#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include <loccrate/parse.hpp>
#include <loccrate/states.hpp>

using namespace loccrate;

TEST_CASE("reference-state literals") {
  const auto g = parseState("ghz:r=2,k=3");
  CHECK(g.dims().dims() == std::vector<std::int64_t>{2, 2, 2});
  CHECK((g.amps() - ghz<double>(2, 3).amps()).norm() < 1e-14);

  const auto s = parseState(" schmidt:[0.9, 0.1] ");
  CHECK(s.dims().dims() == std::vector<std::int64_t>{2, 2});
  CHECK(std::abs(s.amps()[0] - std::complex<double>(std::sqrt(0.9), 0.0)) < 1e-12);
  CHECK(std::abs(s.amps()[3] - std::complex<double>(std::sqrt(0.1), 0.0)) < 1e-12);

  const auto e = parseState("epr:pair=(1,3),k=3");
  CHECK((e.amps() - eprPair<double>(1, 3, 3).amps()).norm() < 1e-14);
}

TEST_CASE("json state literals") {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", 1.0 / std::sqrt(2.0));
  const std::string r(buf);
  const std::string text =
      "{\"dims\":[2,2],\"amps\":[[" + r + ",0],[0,0],[0,0],[" + r + ",0]]}";
  const auto s = parseState(text);
  CHECK(s.dims().total() == 4);
  CHECK(fidelity(s, ghz<double>(2, 2)) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(parseState("{\"amps\":[[1,0]]}"), ParseError);           // dims missing
  CHECK_THROWS_AS(parseState("{\"dims\":[2],\"amps\":[[1,0],[0,0],[0,0]]}"), ParseError);
  CHECK_THROWS_AS(parseState("{\"dims\":[2],\"amps\":[[1,0,0],[0,0]]}"), ParseError);
  CHECK_THROWS_AS(parseState("{\"dims\":[2],\"amps\":"), ParseError);      // truncated JSON
}

TEST_CASE("parse errors carry positions") {
  try {
    parseState("ghz:r=x,k=2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }

  CHECK_THROWS_AS(parseState("ghz:r=2"), ParseError);          // missing ,k=
  CHECK_THROWS_AS(parseState("ghz:r=2,k=2 trailing"), ParseError);
  CHECK_THROWS_AS(parseState("spin:up"), ParseError);          // unknown literal
  CHECK_THROWS_AS(parseState("schmidt:[0.9,-0.1]"), ParseError);
  CHECK_THROWS_AS(parseState("epr:pair=(1,1),k=2"), ParseError);
  CHECK_THROWS_AS(parseState("epr:pair=(1,3),k=2"), ParseError);
}

TEST_CASE("the norm gate rescales tiny drift and rejects real deviation") {
  // Norm off by ~5e-9: accepted, then exactly unit after parsing.
  const std::string close = "{\"dims\":[2],\"amps\":[[1.000000005,0],[0,0]]}";
  const auto s = parseState(close);
  CHECK(std::abs(s.amps().norm() - 1.0) <= 1e-12);

  // Norm off by ~1e-7: rejected, no silent renormalization.
  const std::string far = "{\"dims\":[2],\"amps\":[[1.0000001,0],[0,0]]}";
  CHECK_THROWS_AS(parseState(far), ParseError);
  CHECK_THROWS_AS(parseState("schmidt:[0.9,0.2]"), ParseError);
}

TEST_CASE("cut and functional literals") {
  CHECK(parseCut("cut:2,1").label() == "cut:1,2");
  CHECK(parseCut("cut:3").parties() == std::vector<std::int64_t>{3});
  CHECK_THROWS_AS(parseCut("cut:"), ParseError);
  CHECK_THROWS_AS(parseCut("slice:1"), ParseError);
  CHECK(parseFunctional("cut:1,3").label == "cut:1,3");
}
