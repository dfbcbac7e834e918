#include "climval/scenario.hpp"

#include <doctest.h>

#include <cmath>

using namespace climval;

namespace {

CarbonScenario net_zero() {
  CarbonScenario s;
  s.name = "Net Zero 2050";
  s.t_start_transition = 2021.0;
  s.t_end_transition = 2030.0;
  s.p_carbon0 = 34.315;
  s.eta_delta = 0.17935;
  return s;
}

}  // namespace

TEST_CASE("carbon_price: initial value at the transition start") {
  CHECK(carbon_price(net_zero(), 2021.0) == 34.315);
}

TEST_CASE("carbon_price: plateau after the transition end, exactly") {
  CarbonScenario s = net_zero();
  CHECK(carbon_price(s, 2040.0) == carbon_price(s, 2030.0));
  CHECK(carbon_price(s, 2030.0 + 1e-12) == carbon_price(s, 2030.0));
}

TEST_CASE("carbon_price: exponential value at the transition end") {
  CHECK(carbon_price(net_zero(), 2030.0) ==
        doctest::Approx(34.315 * std::exp(0.17935 * 9.0)).epsilon(1e-14));
  CHECK(carbon_price(net_zero(), 2030.0) == doctest::Approx(172.39).epsilon(1e-3));
}

TEST_CASE("carbon_price: non-decreasing and continuous on a dense grid") {
  for (const auto& s : scenario_library()) {
    double prev = carbon_price(s, 2015.0);
    for (int i = 1; i <= 4000; ++i) {
      double t = 2015.0 + i * (2040.0 - 2015.0) / 4000.0;
      double p = carbon_price(s, t);
      CHECK(p >= prev);
      CHECK(std::abs(p - prev) < 0.05 * p + 1e-9);  // no jumps at this resolution
      prev = p;
    }
  }
}

TEST_CASE("energy_price: intercept at zero carbon price") {
  EnergyPriceParams p{"gas", 0.2, 0.07};
  CHECK(energy_price(p, 0.0) == 0.07);
}

TEST_CASE("energy_price: direct evaluation") {
  EnergyPriceParams p{"electricity", 0.01, 0.1};
  CHECK(energy_price(p, 50.0) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("energy_price: paper-convention electricity level") {
  // pass-through 0.55 with intercept chosen so the price at the initial
  // carbon price is 0.2161
  double k = 0.55, p_carbon0 = 30.957;
  EnergyPriceParams p{"electricity", k, 0.2161 - k * p_carbon0};
  CHECK(energy_price(p, p_carbon0) == doctest::Approx(0.2161).epsilon(1e-12));
}

TEST_CASE("energy_price: negative carbon price rejected") {
  EnergyPriceParams p{"electricity", 0.01, 0.1};
  CHECK_THROWS_AS(energy_price(p, -1.0), std::invalid_argument);
}

TEST_CASE("renovation_cost: equal efficiencies cost nothing") {
  CHECK(renovation_cost({0.01, 0.1}, 70.0, 70.0) == 0.0);
}

TEST_CASE("renovation_cost: exponent zero collapses to c0") {
  CHECK(renovation_cost({0.37, -1.0}, 200.0, 70.0) == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("renovation_cost: direct evaluation") {
  CHECK(renovation_cost({0.01, 0.1}, 320.0, 70.0) ==
        doctest::Approx(0.01 * std::pow(250.0, 1.1)).epsilon(1e-14));
  CHECK(renovation_cost({0.01, 0.1}, 320.0, 70.0) == doctest::Approx(4.3407).epsilon(1e-4));
}

TEST_CASE("renovation_cost: non-decreasing in the efficiency gap") {
  double prev = 0.0;
  for (double gap = 0.0; gap <= 300.0; gap += 1.0) {
    double c = renovation_cost({0.01, 0.1}, 70.0 + gap, 70.0);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("scenario_library: the four tabled scenarios") {
  auto lib = scenario_library();
  REQUIRE(lib.size() == 4);
  CHECK(lib[0].name == "Current Policies");
  CHECK(lib[0].p_carbon0 == 30.957);
  CHECK(lib[0].eta_delta == 0.01693);
  CHECK(lib[1].name == "NDCs");
  CHECK(lib[1].p_carbon0 == 33.321);
  CHECK(lib[1].eta_delta == 0.07994);
  CHECK(lib[2].name == "Divergent Net Zero");
  CHECK(lib[2].p_carbon0 == 32.963);
  CHECK(lib[2].eta_delta == 0.12893);
  CHECK(lib[3].name == "Net Zero 2050");
  CHECK(lib[3].p_carbon0 == 34.315);
  CHECK(lib[3].eta_delta == 0.17935);
  for (const auto& s : lib) {
    CHECK(s.t_start_transition == 2021.0);
    CHECK(s.t_end_transition == 2030.0);
    CHECK_NOTHROW(s.validate());
  }
  for (std::size_t i = 0; i < lib.size(); ++i) {
    for (std::size_t j = i + 1; j < lib.size(); ++j) CHECK(lib[i].name != lib[j].name);
  }
}

TEST_CASE("scenario_library: carbon prices are ordered one year into the transition") {
  auto lib = scenario_library();
  for (double t = 2022.0; t <= 2040.0; t += 0.25) {
    CHECK(carbon_price(lib[0], t) <= carbon_price(lib[1], t));
    CHECK(carbon_price(lib[1], t) <= carbon_price(lib[2], t));
    CHECK(carbon_price(lib[2], t) <= carbon_price(lib[3], t));
  }
}

TEST_CASE("validation: scenario and cost invariants") {
  CarbonScenario s = net_zero();
  s.t_end_transition = s.t_start_transition;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = net_zero();
  s.p_carbon0 = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  CHECK_THROWS_AS((RenovationCostParams{0.0, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RenovationCostParams{0.01, -1.5}.validate()), std::invalid_argument);
  CHECK_NOTHROW((RenovationCostParams{0.01, -1.0}.validate()));

  CHECK_THROWS_AS((EnergyPriceParams{"x", -0.1, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((EnergyPriceParams{"x", 0.0, -0.5}.validate()));
}
