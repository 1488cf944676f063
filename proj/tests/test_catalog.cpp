#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dualcurv/catalog.hpp"
#include "dualcurv/curvature.hpp"
#include "test_helpers.hpp"

using namespace dualcurv;
using testutil::rel_err;

namespace {

/// Compares the entry's closed-form invariants against the curvature
/// formulas applied to the exact jets, at random points of the domain.
void check_coherence(const catalog::CatalogEntry& entry,
                     const std::function<Vec2(std::mt19937&)>& sample_point) {
    std::mt19937 rng(987654321);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec2 p = sample_point(rng);
        REQUIRE(entry.surface.in_domain(p));
        const ScalarJet jet = entry.surface.jet_at(p);
        REQUIRE(jet.spacelike());
        CHECK(jet.point.x == p.x);
        CHECK(jet.point.y == p.y);
        const CurvatureSample c = invariants(jet);
        CHECK(rel_err(c.h_r, entry.h_r(p)) < 1e-12);
        CHECK(rel_err(c.h_l, entry.h_l(p)) < 1e-12);
        CHECK(rel_err(c.k_r, entry.k_r(p)) < 1e-12);
        CHECK(rel_err(c.k_l, entry.k_l(p)) < 1e-12);
        CHECK(rel_err(c.q_operator, entry.q(p)) < 1e-12);
        if (entry.is_solution) CHECK(std::abs(entry.q(p)) < 1e-12);
    }
}

Vec2 disc_point(std::mt19937& rng, double r_min, double r_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = r_min + (r_max - r_min) * unit(rng);
    const double phi = 2.0 * testutil::kPi * unit(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace

TEST_CASE("plane closed forms match the curvature formulas") {
    check_coherence(catalog::plane(0.3, 0.4, 0.05),
                    [](std::mt19937& rng) { return disc_point(rng, 0.0, 3.0); });
    CHECK(catalog::plane(0.3, 0.4, 0.05).is_solution);
    CHECK_THROWS_AS(catalog::plane(0.8, 0.6, 0.0), DomainError);
}

TEST_CASE("helicoid closed forms match the curvature formulas") {
    const auto entry = catalog::helicoid();
    check_coherence(entry, [](std::mt19937& rng) { return disc_point(rng, 1.05, 5.0); });
    CHECK(entry.is_solution);
    // frozen values at (2,0)
    CHECK(entry.h_r({2.0, 0.0}) == 0.0);
    CHECK(entry.h_l({2.0, 0.0}) == 0.0);
    CHECK(entry.k_r({2.0, 0.0}) == doctest::Approx(-0.04).epsilon(1e-14));
    CHECK(entry.k_l({2.0, 0.0}) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(!entry.surface.in_domain({0.5, 0.5}));
}

TEST_CASE("hyperboloid closed forms match the curvature formulas") {
    const auto entry = catalog::hyperboloid();
    check_coherence(entry, [](std::mt19937& rng) { return disc_point(rng, 0.0, 3.0); });
    CHECK(!entry.is_solution);
    // umbilic under the Lorentzian metric: H_L is identically one
    std::mt19937 rng(11);
    for (int k = 0; k < 100; ++k) {
        CHECK(std::abs(entry.h_l(disc_point(rng, 0.0, 4.0)) - 1.0) < 1e-12);
    }
    CHECK(entry.h_r({1.0, 0.0}) == doctest::Approx(0.3849001794597505).epsilon(1e-14));
    CHECK(entry.q({1.0, 0.0}) == doctest::Approx(1.2301996410804990).epsilon(1e-14));
    CHECK(entry.k_l({1.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("sphere cap closed forms match the curvature formulas") {
    const auto entry = catalog::sphere_cap(2.0);
    check_coherence(entry, [](std::mt19937& rng) { return disc_point(rng, 0.0, 1.4); });
    CHECK(!entry.is_solution);
    // sign pin: the upper hemisphere has H_R = -1/R with the upward normal
    CHECK(entry.h_r({0.3, -0.2}) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(entry.k_r({0.3, -0.2}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(!entry.surface.in_domain({1.0, 1.1}));
    CHECK_THROWS_AS(catalog::sphere_cap(-1.0), DomainError);
}

TEST_CASE("catalog names parse to the matching entries") {
    CHECK(catalog::get("plane 0.3 0.4 0.05").surface.name == "plane");
    CHECK(catalog::get("helicoid").surface.name == "helicoid");
    CHECK(catalog::get("hyperboloid").surface.name == "hyperboloid");
    CHECK(catalog::get("sphere_cap 2").surface.name == "sphere_cap");
    CHECK(catalog::get("sphere_cap 2").h_r({0.0, 0.0}) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(catalog::get("torus"), DomainError);
    CHECK_THROWS_AS(catalog::get("plane 0.3"), DomainError);
    CHECK_THROWS_AS(catalog::get("sphere_cap"), DomainError);
}
