// Command-line front end: state parsing, rate queries, protocol runs, and
// the verification suites, with machine-readable JSON output.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <loccrate/loccrate.hpp>

namespace {

using loccrate::Json;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string formatReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::string(buf);
}

Json envelope(const std::string& command, Json inputs) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  return j;
}

struct RateOptions {
  std::string from;
  std::string to;
  bool ghzBounds = false;
  bool json = false;
  std::uint64_t seed = 0;
};

int runRate(const RateOptions& opt) {
  const auto source = loccrate::parseState(opt.from);
  if (opt.ghzBounds) {
    const auto bounds = loccrate::ghzRateBounds(source);
    if (opt.json) {
      Json j = envelope("rate", Json{{"from", opt.from}, {"ghz_bounds", true}, {"seed", opt.seed}});
      j["results"] = Json::array({Json{{"check", "ghz-rate-bounds"},
                                       {"distill_upper", bounds.distillUpper},
                                       {"cost_lower", bounds.costLower},
                                       {"tolerance", 1e-9},
                                       {"pass", true}}});
      j["summary"] = Json{{"total", 1}, {"passed", 1}, {"pass", true}};
      emit(j);
    } else {
      std::cout << "distill_upper: " << formatReal(bounds.distillUpper) << '\n'
                << "cost_lower: " << formatReal(bounds.costLower) << '\n';
    }
    return 0;
  }
  if (opt.to.empty()) {
    throw std::invalid_argument("rate: --to is required unless --ghz-bounds is given");
  }
  const auto target = loccrate::parseState(opt.to);
  const auto estimate = loccrate::rateUpperBound(source, target);
  if (opt.json) {
    Json j = envelope("rate", Json{{"from", opt.from}, {"to", opt.to}, {"seed", opt.seed}});
    j["results"] = Json::array({Json{{"check", "rate"},
                                     {"value", estimate.value},
                                     {"kind", loccrate::rateKindName(estimate.kind)},
                                     {"certificate", estimate.certificate},
                                     {"tolerance", 1e-9},
                                     {"pass", true}}});
    j["summary"] = Json{{"total", 1}, {"passed", 1}, {"pass", true}};
    emit(j);
  } else {
    std::cout << "value: " << formatReal(estimate.value) << '\n'
              << "kind: " << loccrate::rateKindName(estimate.kind) << '\n'
              << "certificate: " << estimate.certificate << '\n';
  }
  return 0;
}

struct MonoidRateOptions {
  std::string from;
  std::string to;
  double delta = 0.0;
  double eps = 0.0;
  std::int64_t nmax = 200;
  bool json = false;
  bool csv = false;
  std::uint64_t seed = 0;
};

int runMonoidRate(const MonoidRateOptions& opt) {
  const auto source = loccrate::parseState(opt.from);
  const auto target = loccrate::parseState(opt.to);
  const loccrate::BipartitePureMonoid monoid;
  const auto result =
      loccrate::achievableRateLowerBound(monoid, loccrate::bipartiteElement(source),
                                         loccrate::bipartiteElement(target), opt.delta, opt.eps,
                                         opt.nmax);
  char certificate[96];
  std::snprintf(certificate, sizeof certificate, "(n=%" PRId64 ",m=%" PRId64 ",d=%" PRId64 ")",
                result.witness.n, result.witness.m, result.witness.d);
  if (opt.csv) {
    std::printf("n,d,m,ratio\n");
    for (const auto& row : result.table) {
      std::printf("%" PRId64 ",%" PRId64 ",%" PRId64 ",%.17g\n", row.n, row.d, row.m, row.ratio);
    }
    return 0;
  }
  if (opt.json) {
    Json j = envelope("monoid-rate", Json{{"from", opt.from},
                                          {"to", opt.to},
                                          {"delta", opt.delta},
                                          {"eps", opt.eps},
                                          {"nmax", opt.nmax},
                                          {"seed", opt.seed}});
    Json table = Json::array();
    for (const auto& row : result.table) {
      table.push_back(Json{{"n", row.n}, {"d", row.d}, {"m", row.m}, {"ratio", row.ratio}});
    }
    j["results"] = Json::array({Json{{"check", "achievable-rate-lower-bound"},
                                     {"best_ratio", result.bestRatio},
                                     {"kind", "lower-bound"},
                                     {"certificate", std::string(certificate)},
                                     {"witness", Json{{"n", result.witness.n},
                                                      {"m", result.witness.m},
                                                      {"d", result.witness.d},
                                                      {"eps", result.witness.eps}}},
                                     {"table", std::move(table)},
                                     {"tolerance", 1e-9},
                                     {"pass", true}}});
    j["summary"] = Json{{"total", 1}, {"passed", 1}, {"pass", true}};
    emit(j);
  } else {
    std::cout << "best_ratio: " << formatReal(result.bestRatio) << '\n'
              << "kind: lower-bound" << '\n'
              << "certificate: " << certificate << '\n';
  }
  return 0;
}

struct ConcentrateOptions {
  std::int64_t n = 0;
  double p = 0.0;
  bool simulate = false;
  std::int64_t shots = 10000;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
};

std::vector<std::int64_t> convergenceLadder(std::int64_t n) {
  std::vector<std::int64_t> ladder;
  for (std::int64_t base = 1; base <= n; base *= 10) {
    for (const std::int64_t mul : {1, 2, 5}) {
      const std::int64_t v = base * mul;
      if (v <= n) ladder.push_back(v);
    }
  }
  if (ladder.empty() || ladder.back() != n) ladder.push_back(n);
  return ladder;
}

int runConcentrate(const ConcentrateOptions& opt) {
  const double yield = loccrate::concentrationYield(opt.n, opt.p);
  const double elg = loccrate::expectedLogGhz(opt.n, opt.p);
  const double hp = loccrate::binaryEntropy(opt.p);
  if (opt.csv) {
    std::printf("n,yield,expected_log_ghz\n");
    for (const std::int64_t m : convergenceLadder(opt.n)) {
      std::printf("%" PRId64 ",%.17g,%.17g\n", m, loccrate::concentrationYield(m, opt.p),
                  loccrate::expectedLogGhz(m, opt.p));
    }
    return 0;
  }
  Json results = Json::array();
  results.push_back(Json{{"check", "concentration-yield"},
                         {"n", opt.n},
                         {"p", opt.p},
                         {"yield", yield},
                         {"expected_log_ghz", elg},
                         {"h_p", hp},
                         {"tolerance", 1e-12},
                         {"pass", yield <= elg + 1e-12 && elg <= hp + 1e-12}});
  if (opt.simulate) {
    const auto stats = loccrate::concentrationSimulate(opt.n, opt.p, opt.shots, opt.seed);
    Json histogram = Json::array();
    for (const auto& bin : stats.histogram) {
      histogram.push_back(Json{{"m", bin.m}, {"count", bin.count}, {"yield", bin.yield}});
    }
    const double window = 4.0 * std::max(stats.standardError, 1e-12);
    results.push_back(Json{{"check", "concentration-simulation"},
                           {"shots", stats.shots},
                           {"seed", stats.seed},
                           {"mean", stats.mean},
                           {"stddev", stats.stddev},
                           {"standard_error", stats.standardError},
                           {"expected", yield},
                           {"histogram", std::move(histogram)},
                           {"tolerance", window},
                           {"pass", std::abs(stats.mean - yield) <= window}});
  }
  bool pass = true;
  std::int64_t passed = 0;
  for (const auto& row : results) {
    const bool ok = row.at("pass").get<bool>();
    pass = pass && ok;
    passed += ok ? 1 : 0;
  }
  if (opt.json) {
    Json j = envelope("concentrate", Json{{"n", opt.n},
                                          {"p", opt.p},
                                          {"simulate", opt.simulate},
                                          {"shots", opt.shots},
                                          {"seed", opt.seed}});
    j["results"] = std::move(results);
    j["summary"] =
        Json{{"total", static_cast<std::int64_t>(j["results"].size())}, {"passed", passed},
             {"pass", pass}};
    emit(j);
  } else {
    std::cout << "n: " << opt.n << '\n'
              << "p: " << formatReal(opt.p) << '\n'
              << "yield: " << formatReal(yield) << '\n'
              << "expected_log_ghz: " << formatReal(elg) << '\n'
              << "h_p: " << formatReal(hp) << '\n';
    if (opt.simulate) {
      const auto& row = results.back();
      std::cout << "simulated_mean: " << formatReal(row.at("mean").get<double>())
                << " (standard_error " << formatReal(row.at("standard_error").get<double>())
                << ", shots " << opt.shots << ")" << '\n';
    }
  }
  return pass ? 0 : 1;
}

struct ContinuityOptions {
  std::string stateA;
  std::string stateB;
  bool json = false;
  std::uint64_t seed = 0;
};

int runContinuity(const ContinuityOptions& opt) {
  const auto phi = loccrate::parseState(opt.stateA);
  const auto psi = loccrate::parseState(opt.stateB);
  const auto construction = loccrate::continuityConstruction(phi, psi);
  const auto protocol = loccrate::continuityProtocolCheck(construction, phi, psi);
  const double distance = loccrate::purifiedDistance(phi, psi);

  Json results = Json::array();
  results.push_back(
      Json{{"check", "construction"},
           {"distance", distance},
           {"a", Json::array({construction.a.real(), construction.a.imag()})},
           {"b", Json::array({construction.b.real(), construction.b.imag()})},
           {"q", construction.q},
           {"lambda", construction.lambda},
           {"u", construction.u},
           {"projection_residual", protocol.residual},
           {"success_weight", protocol.successWeight},
           {"tolerance", 1e-9},
           {"pass", protocol.pass}});
  bool pass = protocol.pass;
  for (const auto& e : loccrate::cutEntropyFamily(phi.dims().k())) {
    const auto check = loccrate::checkContinuityEstimate(e, phi, psi);
    pass = pass && check.pass;
    results.push_back(Json{{"check", "estimate"},
                           {"functional", e.label},
                           {"distance", check.distance},
                           {"margin", check.margin},
                           {"tolerance", 1e-9},
                           {"pass", check.pass}});
  }
  if (opt.json) {
    Json j = envelope("continuity",
                      Json{{"state_a", opt.stateA}, {"state_b", opt.stateB}, {"seed", opt.seed}});
    std::int64_t passed = 0;
    for (const auto& row : results) passed += row.at("pass").get<bool>() ? 1 : 0;
    j["results"] = std::move(results);
    j["summary"] =
        Json{{"total", static_cast<std::int64_t>(j["results"].size())}, {"passed", passed},
             {"pass", pass}};
    emit(j);
  } else {
    std::cout << "distance: " << formatReal(distance) << '\n'
              << "a: " << formatReal(construction.a.real()) << (construction.a.imag() < 0 ? "-" : "+")
              << formatReal(std::abs(construction.a.imag())) << "i" << '\n'
              << "b: " << formatReal(construction.b.real()) << (construction.b.imag() < 0 ? "-" : "+")
              << formatReal(std::abs(construction.b.imag())) << "i" << '\n'
              << "q: " << formatReal(construction.q) << '\n'
              << "lambda: " << formatReal(construction.lambda) << '\n'
              << "u: " << formatReal(construction.u) << '\n'
              << "projection_residual: " << formatReal(protocol.residual) << '\n'
              << "success_weight: " << formatReal(protocol.successWeight) << '\n';
    for (const auto& row : results) {
      if (row.at("check") != "estimate") continue;
      std::cout << row.at("functional").get<std::string>()
                << " margin: " << formatReal(row.at("margin").get<double>()) << '\n';
    }
  }
  return pass ? 0 : 1;
}

struct VerifyOptions {
  std::string suite;
  std::uint64_t seed = 0;
  bool json = false;
};

int runVerify(const VerifyOptions& opt) {
  const auto report = loccrate::runSuite(opt.suite, opt.seed);
  if (opt.json) {
    emit(report.json);
  } else {
    // Aggregate rows by check name, first-seen order.
    std::vector<std::string> order;
    std::vector<std::pair<std::int64_t, std::int64_t>> tally;  // (passed, total)
    for (const auto& row : report.json.at("results")) {
      const std::string name = row.at("check").get<std::string>();
      std::size_t idx = 0;
      while (idx < order.size() && order[idx] != name) ++idx;
      if (idx == order.size()) {
        order.push_back(name);
        tally.emplace_back(0, 0);
      }
      tally[idx].second += 1;
      tally[idx].first += row.at("pass").get<bool>() ? 1 : 0;
    }
    std::cout << "suite: " << opt.suite << '\n' << "seed: " << opt.seed << '\n';
    for (std::size_t i = 0; i < order.size(); ++i) {
      const bool ok = tally[i].first == tally[i].second;
      std::cout << (ok ? "[pass] " : "[FAIL] ") << order[i] << " (" << tally[i].first << "/"
                << tally[i].second << ")" << '\n';
    }
    const auto& summary = report.json.at("summary");
    std::cout << "summary: " << summary.at("passed").get<std::int64_t>() << "/"
              << summary.at("total").get<std::int64_t>() << " passed" << '\n';
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotic entanglement transformation rates for multipartite pure states"};
  app.require_subcommand(1);

  RateOptions rateOpt;
  auto* rate = app.add_subcommand("rate", "functional upper bound on a transformation rate");
  rate->add_option("--from", rateOpt.from, "source state literal")->required();
  rate->add_option("--to", rateOpt.to, "target state literal");
  rate->add_flag("--ghz-bounds", rateOpt.ghzBounds,
                 "report GHZ distillation/cost bounds for --from instead of a pair rate");
  rate->add_flag("--json", rateOpt.json, "machine-readable output");
  rate->add_option("--seed", rateOpt.seed, "seed echoed into the report");

  MonoidRateOptions monoidOpt;
  auto* monoidRate =
      app.add_subcommand("monoid-rate", "certified lower bound from the finite-copy search");
  monoidRate->add_option("--from", monoidOpt.from, "source state literal (bipartite)")->required();
  monoidRate->add_option("--to", monoidOpt.to, "target state literal (bipartite)")->required();
  monoidRate->add_option("--delta", monoidOpt.delta, "generator budget per source copy");
  monoidRate->add_option("--eps", monoidOpt.eps, "purified-distance tolerance");
  monoidRate->add_option("--nmax", monoidOpt.nmax, "largest source copy count searched");
  monoidRate->add_flag("--json", monoidOpt.json, "machine-readable output");
  monoidRate->add_flag("--csv", monoidOpt.csv, "per-n table as CSV");
  monoidRate->add_option("--seed", monoidOpt.seed, "seed echoed into the report");

  ConcentrateOptions concOpt;
  auto* concentrate =
      app.add_subcommand("concentrate", "entanglement concentration yield for n biased pairs");
  concentrate->add_option("--n", concOpt.n, "number of source pairs")->required();
  concentrate->add_option("--p", concOpt.p, "larger squared Schmidt coefficient parameter")
      ->required();
  concentrate->add_flag("--simulate", concOpt.simulate, "run the seeded measurement simulation");
  concentrate->add_option("--shots", concOpt.shots, "simulation shot count");
  concentrate->add_option("--seed", concOpt.seed, "simulation seed, echoed into the report");
  concentrate->add_flag("--json", concOpt.json, "machine-readable output");
  concentrate->add_flag("--csv", concOpt.csv, "per-n yield table as CSV");

  ContinuityOptions contOpt;
  auto* continuity =
      app.add_subcommand("continuity", "two-outcome construction and estimate margins for a pair");
  continuity->add_option("--state-a", contOpt.stateA, "first state literal")->required();
  continuity->add_option("--state-b", contOpt.stateB, "second state literal")->required();
  continuity->add_flag("--json", contOpt.json, "machine-readable output");
  continuity->add_option("--seed", contOpt.seed, "seed echoed into the report");

  VerifyOptions verifyOpt;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("--suite", verifyOpt.suite,
                   "one of: axioms, continuity, rates, monoid, protocols")
      ->required();
  verify->add_option("--seed", verifyOpt.seed, "suite seed");
  verify->add_flag("--json", verifyOpt.json, "full report as JSON");

  int exitCode = 0;
  rate->callback([&] { exitCode = runRate(rateOpt); });
  monoidRate->callback([&] { exitCode = runMonoidRate(monoidOpt); });
  concentrate->callback([&] { exitCode = runConcentrate(concOpt); });
  continuity->callback([&] { exitCode = runContinuity(contOpt); });
  verify->callback([&] { exitCode = runVerify(verifyOpt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exitCode;
}
