#include "kgo/errors.hpp"
#include "kgo/states.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace kgo;

namespace {

EnergyLevel level(double g, int n) { return energy_level({g, Branch::particle}, n); }

oracle::Density reference(double g, int n, Space space) {
  const double E = level(g, n).E;
  return space == Space::coordinate ? oracle::coordinate_density(g, n, E)
                                    : oracle::momentum_density(g, n, E);
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("zero coupling densities are squared Hermite functions") {
    for (int n = 0; n <= 4; ++n)
      for (Space sp : {Space::coordinate, Space::momentum}) {
        const auto st = make_state(level(0.0, n), 0.0, sp);
        for (double a : {-2.5, -0.4, 0.0, 1.1, 3.0}) {
          const double phi = oracle::hermite_function(n, a);
          CHECK(st.density(a) == doctest::Approx(phi * phi).epsilon(1e-13).scale(1e-300));
        }
      }
    const auto st = make_state(level(0.0, 0), 0.0, Space::coordinate);
    CHECK(st.density(0.0) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  }

  TEST_CASE("density matches the independent reconstruction") {
    for (double g : {-0.48, -0.16, 0.1})
      for (int n : {0, 1, 3})
        for (Space sp : {Space::coordinate, Space::momentum}) {
          const auto ref = reference(g, n, sp);
          if (ref.D <= 0) continue;
          const auto st = make_state(level(g, n), g, sp);
          CHECK(st.denominator() == doctest::Approx(ref.D).epsilon(1e-13));
          for (double a : {-1.7, 0.2, 2.4})
            CHECK(st.density(a) == doctest::Approx(ref(a)).epsilon(1e-12).scale(1e-300));
        }
  }

  TEST_CASE("normalization against composite Simpson") {
    for (double g : {0.0, 0.1, -0.1, -0.16, -0.32, -0.48})
      for (int n = 0; n <= 10; ++n)
        for (Space sp : {Space::coordinate, Space::momentum}) {
          const auto ref = reference(g, n, sp);
          if (ref.D <= 0) {
            CHECK_THROWS_AS(make_state(level(g, n), g, sp), NonNormalizable);
            continue;
          }
          const auto st = make_state(level(g, n), g, sp);
          const double R = st.truncation_radius();
          const double simpson = oracle::simpson(ref, -R, R, 40000);
          CHECK(simpson == doctest::Approx(1.0).epsilon(1e-9));
          CHECK(st.norm_integral() == doctest::Approx(1.0).epsilon(1e-8));
        }
  }

  TEST_CASE("non-normalizable states in strict and forensic mode") {
    const auto l = level(-0.8, 0);
    try {
      make_state(l, -0.8, Space::momentum);
      FAIL("expected NonNormalizable");
    } catch (const NonNormalizable& e) {
      CHECK(e.denominator() < 0.0);
    }
    const auto f = make_state(l, -0.8, Space::momentum, Normalization::forensic);
    CHECK(f.forensic());
    CHECK_FALSE(f.validity().norm_positive);
  }

  TEST_CASE("densities are even") {
    for (double g : {-0.32, 0.0, 0.2})
      for (int n : {0, 1, 2, 5}) {
        const auto st = make_state(level(g, n), g, Space::coordinate);
        for (double a : {0.3, 1.2, 2.9}) {
          CHECK(st.density(-a) == st.density(a));
          CHECK(st.fisher_density(-a) == doctest::Approx(st.fisher_density(a)));
        }
      }
  }

  TEST_CASE("weight sign change is flagged for negative coupling in momentum space") {
    const auto st = make_state(level(-0.16, 0), -0.16, Space::momentum);
    CHECK(st.validity().norm_positive);
    CHECK_FALSE(st.validity().weight_positive);
    REQUIRE(st.weight_zero());
    CHECK(st.weight(*st.weight_zero()) == doctest::Approx(0.0).scale(1.0));
    const auto grid = make_grid(-1, 1, 5);
    CHECK_THROWS_AS(shannon_density_curve(st, grid), InvalidDensity);
    CHECK_THROWS_AS(fisher_density_curve(st, grid), InvalidDensity);
    CHECK_NOTHROW(rho_curve(st, grid));
  }

  TEST_CASE("score against finite differences of the density") {
    std::mt19937_64 rng(11);
    const double h = 1e-5;
    for (double g : {0.0, -0.16, -0.48})
      for (int n : {0, 1, 2, 6}) {
        const auto st = make_state(level(g, n), g, Space::coordinate);
        std::vector<double> nodes = st.positive_nodes();
        std::uniform_real_distribution<double> u(-st.truncation_radius(), st.truncation_radius());
        for (int i = 0; i < 50; ++i) {
          const double a = u(rng);
          bool near = n % 2 == 1 && std::abs(a) < 1e-3;
          for (double z : nodes) near = near || std::abs(std::abs(a) - z) < 1e-3;
          if (near) continue;
          const double fd = (st.density(a + h) - st.density(a - h)) / (2 * h * st.density(a));
          const double an = st.score(a);
          CHECK(std::abs(an - fd) <= 1e-6 * std::max({std::abs(an), std::abs(fd), 1.0}));
        }
      }
  }

  TEST_CASE("density derivative against finite differences") {
    const auto st = make_state(level(-0.32, 3), -0.32, Space::coordinate);
    const double h = 1e-6;
    for (double a : {-2.0, -0.5, 0.7, 1.9}) {
      const double fd = (st.density(a + h) - st.density(a - h)) / (2 * h);
      CHECK(st.density_derivative(a) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
    }
  }

  TEST_CASE("Fisher density is finite at a node and continuous through it") {
    const auto st = make_state(level(-0.32, 1), -0.32, Space::coordinate);
    const double at = st.fisher_density(0.0);
    CHECK(std::isfinite(at));
    CHECK(at > 0.0);
    CHECK(st.fisher_density(1e-4) == doctest::Approx(at).epsilon(1e-6));
    CHECK(st.fisher_density(-1e-4) == doctest::Approx(at).epsilon(1e-6));
  }

  TEST_CASE("Shannon density vanishes where rho underflows") {
    const auto st = make_state(level(0.0, 0), 0.0, Space::coordinate);
    CHECK(st.shannon_density(40.0) == 0.0);
    CHECK(st.shannon_density(0.0) == doctest::Approx(st.density(0.0) * std::log(st.density(0.0))));
  }

  TEST_CASE("grids and curves") {
    const auto grid = make_grid(-5, 5, 11);
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == -5.0);
    CHECK(grid.back() == 5.0);
    CHECK(grid[5] == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS(make_grid(0, 1, 1));
    const auto st = make_state(level(0.0, 0), 0.0, Space::coordinate);
    const auto c = density_curve(st, DensityKind::rho, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(c.values[i] == c.values[grid.size() - 1 - i]);
    CHECK(parse_density_kind("fisher") == DensityKind::fisher_density);
    CHECK(parse_space("momentum") == Space::momentum);
    CHECK_THROWS(parse_space("phase"));
  }

  TEST_CASE("truncation radius") {
    CHECK(truncation_radius(0, 1.0, Space::coordinate) == doctest::Approx(13.0));
    CHECK(truncation_radius(4, 4.0, Space::coordinate) == doctest::Approx(1.5 + 6.0));
    CHECK(truncation_radius(4, 4.0, Space::momentum) == doctest::Approx(6.0 + 24.0));
  }

  TEST_CASE("parity is exact in both spaces") {
    for (double g : {-0.16, 0.0, 0.1})
      for (int n : {0, 1, 2, 3})
        for (Space sp : {Space::coordinate, Space::momentum}) {
          const auto st = make_state(level(g, n), g, sp);
          for (double a : {0.01, 0.77, 1.9, 4.2}) CHECK(st.density(-a) == st.density(a));
        }
  }

  TEST_CASE("coordinate and momentum densities coincide at zero coupling") {
    for (int n = 0; n <= 5; ++n) {
      const auto x = make_state(level(0.0, n), 0.0, Space::coordinate);
      const auto p = make_state(level(0.0, n), 0.0, Space::momentum);
      for (double a : {-3.0, -0.5, 0.0, 1.25, 2.5}) {
        CHECK(x.density(a) == doctest::Approx(p.density(a)).epsilon(1e-14).scale(1e-300));
        CHECK(x.fisher_density(a) == doctest::Approx(p.fisher_density(a)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Shannon density at a node and in the tail") {
    for (double g : {-0.48, -0.16, 0.0, 0.1}) {
      const auto st = make_state(level(g, 1), g, Space::coordinate);
      CHECK(st.shannon_density(0.0) == 0.0);
    }
    const auto st = make_state(level(0.0, 0), 0.0, Space::coordinate);
    CHECK(std::abs(st.shannon_density(6.0)) < 1e-13);
    CHECK(std::abs(st.shannon_density(-6.0)) < 1e-13);
  }
}
