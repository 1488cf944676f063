#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "dualcurv/catalog.hpp"
#include "dualcurv/solver.hpp"
#include "test_helpers.hpp"

using namespace dualcurv;

namespace {

/// Position of grid node (i, j) within the mask's interior ordering.
int interior_position(const DomainMask& mask, int i, int j) {
    const int target = mask.geometry().index(i, j);
    const auto& interior = mask.interior_nodes();
    const auto it = std::find(interior.begin(), interior.end(), target);
    REQUIRE(it != interior.end());
    return static_cast<int>(it - interior.begin());
}

double max_interior_deviation(const GridField& a, const GridField& b) {
    double worst = 0.0;
    for (int idx : a.mask().interior_nodes()) {
        worst = std::max(worst, std::abs(a.at(idx) - b.at(idx)));
    }
    return worst;
}

} // namespace

TEST_CASE("affine fields solve the discrete equation exactly") {
    const GridField field =
        sample(catalog::plane(0.3, 0.4, 0.05).surface, testutil::disc_mask(1.0, 0.1));
    const Residual r = residual(field);
    CHECK(r.values.size() == field.mask().interior_nodes().size());
    CHECK(r.norm_inf < 1e-13);
    CHECK(r.norm_2 < 1e-12);
}

TEST_CASE("helicoid residual shrinks at second order") {
    const auto entry = catalog::helicoid();
    const DomainMask probe = testutil::sector_mask(0.1);
    const double coarse = testutil::residual_norm_on(sample(entry.surface, probe), probe);
    const double fine = testutil::residual_norm_on(
        sample(entry.surface, testutil::sector_mask(0.05)), probe);
    CHECK(coarse > 0.0);
    const double ratio = coarse / fine;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("hyperboloid residual approaches the closed-form operator value") {
    const auto entry = catalog::hyperboloid();
    const double q1 = 2.0 - 4.0 * std::pow(3.0, -1.5);
    for (const double h : {0.1, 0.05}) {
        const GridField field = sample(entry.surface, testutil::disc_mask(2.0, h));
        const GridGeometry& geom = field.geometry();
        const int i = static_cast<int>(std::lround((1.0 - geom.origin.x) / geom.h));
        const int j = static_cast<int>(std::lround((0.0 - geom.origin.y) / geom.h));
        REQUIRE(geom.node(i, j).x == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(field.mask().is_interior(i, j));
        const Residual r = residual(field);
        const double at_node = r.values[interior_position(field.mask(), i, j)];
        CHECK(std::abs(at_node - q1) < 5.0 * h * h);
    }
}

TEST_CASE("the assembled Jacobian matches directional finite differences") {
    const DomainMask mask =
        testutil::disc_mask(1.0, 0.1).with_boundary_values([](Vec2) { return 0.0; });
    const auto mask_ptr = std::make_shared<DomainMask>(mask);
    const int n = static_cast<int>(mask.interior_nodes().size());
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> amp(-0.02, 0.02);

    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> values(n);
        for (double& v : values) v = amp(rng);
        const GridField field(mask_ptr, values);
        REQUIRE(field.admissible());
        const Eigen::SparseMatrix<double> J = jacobian(field);
        REQUIRE(J.rows() == n);
        REQUIRE(J.cols() == n);

        const double eps = 1e-6;
        Eigen::VectorXd fd_col(n);
        for (int k = 0; k < n; ++k) {
            std::vector<double> up = values;
            std::vector<double> dn = values;
            up[k] += eps;
            dn[k] -= eps;
            const Residual rp = residual(GridField(mask_ptr, up));
            const Residual rm = residual(GridField(mask_ptr, dn));
            for (int row = 0; row < n; ++row) {
                fd_col[row] = (rp.values[row] - rm.values[row]) / (2.0 * eps);
            }
            const Eigen::VectorXd exact = J.col(k);
            const double scale = std::max(1.0, exact.lpNorm<Eigen::Infinity>());
            CHECK((fd_col - exact).lpNorm<Eigen::Infinity>() <= 1e-6 * scale);
        }
    }
}

TEST_CASE("affine fields linearize to a constant-coefficient symmetric operator") {
    const GridField field =
        sample(catalog::plane(0.3, 0.4, 0.0).surface, testutil::square_mask(0.1));
    const Eigen::SparseMatrix<double> J = jacobian(field);
    const Eigen::MatrixXd D(J);
    CHECK((D - D.transpose()).lpNorm<Eigen::Infinity>() <
          1e-14 * std::max(1.0, D.lpNorm<Eigen::Infinity>()));

    // collect the stencil of each row as offsets from its center node
    const DomainMask& mask = field.mask();
    const GridGeometry& geom = field.geometry();
    const auto& interior = mask.interior_nodes();
    const auto row_stencil = [&](int pos) {
        std::map<std::pair<int, int>, double> stencil;
        const int ci = interior[pos] % geom.nx;
        const int cj = interior[pos] / geom.nx;
        for (int col = 0; col < J.outerSize(); ++col) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(J, col); it; ++it) {
                if (it.row() != pos) continue;
                const int ni = interior[col] % geom.nx;
                const int nj = interior[col] / geom.nx;
                stencil[{ni - ci, nj - cj}] = it.value();
            }
        }
        return stencil;
    };
    // two nodes well inside the square: identical stencils
    const int a = interior_position(mask, geom.nx / 2, geom.ny / 2);
    const int b = interior_position(mask, geom.nx / 2 + 1, geom.ny / 2 + 2);
    const auto sa = row_stencil(a);
    const auto sb = row_stencil(b);
    REQUIRE(sa.size() == sb.size());
    for (const auto& [offset, value] : sa) {
        REQUIRE(sb.count(offset) == 1);
        CHECK(value == doctest::Approx(sb.at(offset)).epsilon(1e-13));
    }
}

TEST_CASE("the operator degenerates exactly where the gradient vanishes") {
    const DomainMask mask =
        testutil::disc_mask(1.0, 0.1).with_boundary_values([](Vec2) { return 0.7; });
    const auto mask_ptr = std::make_shared<DomainMask>(mask);
    const std::vector<double> flat(mask.interior_nodes().size(), 0.7);
    const GridField field(mask_ptr, flat);

    // residual vanishes and so does every linearization coefficient
    CHECK(residual(field).norm_inf == 0.0);
    const Eigen::SparseMatrix<double> J = jacobian(field);
    CHECK(Eigen::MatrixXd(J).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("solver options parse from key=value pairs") {
    const SolverParams p = SolverParams::from_key_values({{"tol_res", "1e-8"},
                                                          {"max_iter", "12"},
                                                          {"delta_space", "1e-5"},
                                                          {"mu0", "1e-7"}});
    CHECK(p.tol_res == doctest::Approx(1e-8));
    CHECK(p.max_iter == 12);
    CHECK(p.delta_space == doctest::Approx(1e-5));
    CHECK(p.mu0 == doctest::Approx(1e-7));
    CHECK_THROWS_AS(SolverParams::from_key_values({{"verbosity", "3"}}), BoundaryDataError);
    CHECK_THROWS_AS(SolverParams::from_key_values({{"max_iter", "many"}}), BoundaryDataError);
}

TEST_CASE("boundary fitting recovers affine data and rejects steep data") {
    const DomainMask mask = testutil::disc_mask(1.0, 0.05).with_boundary_values(
        [](Vec2 p) { return 0.2 * p.x + 0.1 * p.y + 0.05; });
    const GridField fit = affine_fit_initial(mask);
    const GridGeometry& geom = fit.geometry();
    for (int idx : mask.interior_nodes()) {
        const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
        CHECK(std::abs(fit.at(idx) - (0.2 * p.x + 0.1 * p.y + 0.05)) < 1e-12);
    }
    const DomainMask steep =
        testutil::disc_mask(1.0, 0.05).with_boundary_values([](Vec2 p) { return p.x; });
    CHECK_THROWS_AS(affine_fit_initial(steep), BoundaryDataError);
    CHECK_THROWS_AS(solve_dirichlet(steep), BoundaryDataError);
}

TEST_CASE("affine boundary data solves in place") {
    const DomainMask mask = testutil::disc_mask(1.0, 0.05).with_boundary_values(
        [](Vec2 p) { return 0.2 * p.x + 0.1 * p.y + 0.05; });
    const auto [field, report] = solve_dirichlet(mask);
    CHECK(report.converged);
    CHECK(report.iterations <= 3);
    CHECK(report.residual_norm_inf <= report.tolerance);
    CHECK(field.admissible());
    const GridGeometry& geom = field.geometry();
    double dev = 0.0;
    for (int idx : mask.interior_nodes()) {
        const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
        dev = std::max(dev, std::abs(field.at(idx) - (0.2 * p.x + 0.1 * p.y + 0.05)));
    }
    CHECK(dev < 1e-10);
}

TEST_CASE("helicoid boundary data converges to the helicoid at second order") {
    const auto entry = catalog::helicoid();
    double errs[2] = {0.0, 0.0};
    int k = 0;
    for (const double h : {0.1, 0.05}) {
        const GridField exact = sample(entry.surface, testutil::sector_mask(h));
        const DomainMask mask = testutil::sector_mask(h).with_boundary_values(
            [&](Vec2 p) { return entry.surface.value(p); });
        const auto [field, report] = solve_dirichlet(mask);
        REQUIRE(report.converged);
        CHECK(field.admissible());
        // residual history is strictly decreasing while iterating
        for (std::size_t s = 1; s < report.residual_history.size(); ++s) {
            CHECK(report.residual_history[s] < report.residual_history[s - 1]);
        }
        // frozen discretization constant: measured ~0.029 h^2, kept at 2x
        CHECK(max_interior_deviation(field, exact) <= 0.06 * h * h);
        errs[k++] = max_interior_deviation(field, exact);
    }
    const double ratio = errs[0] / errs[1];
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("flat-gradient degeneracy is lifted by the diagonal shift") {
    // saddle boundary data with zero affine fit: the initial iterate is
    // flat, so interior linearization rows vanish until the update front
    // arrives from the boundary
    const DomainMask mask = testutil::disc_mask(1.0, 0.2).with_boundary_values(
        [](Vec2 p) { return 0.05 * (p.x * p.x - p.y * p.y); });
    const auto [field, report] = solve_dirichlet(mask);
    CHECK(report.converged);
    CHECK(report.shift_events >= 1);
    CHECK(field.admissible());
    CHECK(report.residual_norm_inf <= report.tolerance);
}

TEST_CASE("iteration budget exhaustion reports rather than throws") {
    const auto entry = catalog::helicoid();
    const DomainMask mask = testutil::sector_mask(0.1).with_boundary_values(
        [&](Vec2 p) { return entry.surface.value(p); });
    SolverParams params;
    params.max_iter = 1;
    const auto [field, report] = solve_dirichlet(mask, std::nullopt, params);
    CHECK(!report.converged);
    CHECK(report.iterations == 1);
    CHECK(field.admissible());
}
