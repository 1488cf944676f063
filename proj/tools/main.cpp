// Command-line front end: curvature tables, Dirichlet solves, theorem
// verification and catalog queries over spacelike graphs in
// Lorentz-Minkowski 3-space.
//
// Exit codes: 0 success, 1 usage/data error (including refused
// non-solutions), 2 solver failed to converge, 3 a theorem check failed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dualcurv/analysis.hpp"
#include "dualcurv/catalog.hpp"
#include "dualcurv/curvature.hpp"
#include "dualcurv/io.hpp"
#include "dualcurv/solver.hpp"

namespace dc = dualcurv;
namespace fs = std::filesystem;

namespace {

struct DomainConfig {
    std::string shape = "disc";
    double h = 0.1;
    double radius = 1.0;
    double inner = 1.2;
    double outer = 3.0;
    double theta0 = -2.356194490192345; // -3*pi/4
    double theta1 = 2.356194490192345;
    double side = 1.0;
    std::vector<double> center{0.0, 0.0};
};

struct RunConfig {
    DomainConfig domain;
    std::vector<std::string> surface;
    std::vector<std::string> boundary;
    std::string out_dir = ".";
    bool svg = false;
    unsigned seed = 0;
    dc::SolverParams solver;
    std::optional<double> gate;
    std::vector<double> at;
};

void add_domain_options(CLI::App* cmd, DomainConfig& dom) {
    cmd->add_option("--domain", dom.shape, "disc | annulus | square | sector")
        ->check(CLI::IsMember({"disc", "annulus", "square", "sector"}));
    cmd->add_option("--h", dom.h, "grid spacing")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", dom.radius, "disc radius");
    cmd->add_option("--inner", dom.inner, "annulus/sector inner radius");
    cmd->add_option("--outer", dom.outer, "annulus/sector outer radius");
    cmd->add_option("--theta0", dom.theta0, "sector start angle (rad)");
    cmd->add_option("--theta1", dom.theta1, "sector end angle (rad)");
    cmd->add_option("--side", dom.side, "square side length");
    cmd->add_option("--center", dom.center, "domain center")->expected(2);
}

dc::DomainMask build_mask(const DomainConfig& dom) {
    const dc::Vec2 c{dom.center[0], dom.center[1]};
    dc::Vec2 lo, hi;
    std::function<bool(dc::Vec2)> inside;
    if (dom.shape == "disc") {
        inside = dc::inside_disc(c, dom.radius);
        lo = {c.x - dom.radius, c.y - dom.radius};
        hi = {c.x + dom.radius, c.y + dom.radius};
    } else if (dom.shape == "annulus") {
        inside = dc::inside_annulus(c, dom.inner, dom.outer);
        lo = {c.x - dom.outer, c.y - dom.outer};
        hi = {c.x + dom.outer, c.y + dom.outer};
    } else if (dom.shape == "sector") {
        inside = dc::inside_sector(c, dom.inner, dom.outer, dom.theta0, dom.theta1);
        lo = {c.x - dom.outer, c.y - dom.outer};
        hi = {c.x + dom.outer, c.y + dom.outer};
    } else {
        lo = {c.x - dom.side / 2.0, c.y - dom.side / 2.0};
        hi = {c.x + dom.side / 2.0, c.y + dom.side / 2.0};
        inside = dc::inside_rectangle(lo, hi);
    }
    return dc::DomainMask::build(dc::aligned_geometry(lo, hi, dom.h), inside);
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += ' ';
        s += p;
    }
    return s;
}

dc::DomainMask mask_with_boundary(const RunConfig& cfg) {
    dc::DomainMask mask = build_mask(cfg.domain);
    if (cfg.boundary.empty()) {
        throw dc::BoundaryDataError("missing --boundary");
    }
    const std::string kind = cfg.boundary.front();
    if (kind == "affine") {
        if (cfg.boundary.size() != 4) {
            throw dc::BoundaryDataError("--boundary affine needs: affine A B C");
        }
        const double a = std::stod(cfg.boundary[1]);
        const double b = std::stod(cfg.boundary[2]);
        const double c = std::stod(cfg.boundary[3]);
        return mask.with_boundary_values(
            [=](dc::Vec2 p) { return a * p.x + b * p.y + c; });
    }
    if (kind == "surface") {
        const auto entry = dc::catalog::get(join({cfg.boundary.begin() + 1, cfg.boundary.end()}));
        const auto& geom = mask.geometry();
        for (int idx : mask.boundary_nodes()) {
            if (!entry.surface.in_domain(geom.node(idx % geom.nx, idx / geom.nx))) {
                throw dc::DomainError(entry.surface.name + " trace undefined on this boundary");
            }
        }
        return mask.with_boundary_values(
            [&](dc::Vec2 p) { return entry.surface.value(p); });
    }
    if (kind == "file") {
        if (cfg.boundary.size() != 2) {
            throw dc::BoundaryDataError("--boundary file needs: file PATH");
        }
        const dc::GridField stored = dc::io::read_field_csv(cfg.boundary[1]);
        const auto& sg = stored.geometry();
        const auto& mg = mask.geometry();
        if (std::abs(sg.h - mg.h) > 1e-12 || sg.nx != mg.nx || sg.ny != mg.ny ||
            std::abs(sg.origin.x - mg.origin.x) > 1e-12 ||
            std::abs(sg.origin.y - mg.origin.y) > 1e-12) {
            throw dc::BoundaryDataError("stored field geometry does not match the domain");
        }
        std::vector<double> values;
        for (int idx : mask.boundary_nodes()) values.push_back(stored.at(idx));
        return mask.with_boundary_values(values);
    }
    throw dc::BoundaryDataError("--boundary must start with affine | surface | file");
}

void write_curvature_svgs(const dc::GridField& field, const fs::path& dir) {
    const auto& geom = field.geometry();
    const char* names[4] = {"H_R", "H_L", "K_R", "K_L"};
    std::vector<std::vector<double>> grids(
        4, std::vector<double>(geom.size(), std::numeric_limits<double>::quiet_NaN()));
    for (int idx : field.mask().interior_nodes()) {
        const dc::ScalarJet jet = field.fd_jet(idx % geom.nx, idx / geom.nx);
        if (!jet.spacelike(dc::kSpacelikeMargin)) continue;
        const dc::CurvatureSample c = dc::invariants(jet);
        grids[0][idx] = c.h_r;
        grids[1][idx] = c.h_l;
        grids[2][idx] = c.k_r;
        grids[3][idx] = c.k_l;
    }
    for (int k = 0; k < 4; ++k) {
        dc::io::write_svg_heatmap(geom, grids[k], names[k],
                                  (dir / (std::string(names[k]) + ".svg")).string());
    }
}

/// Seeded spot check of the normal-curvature identity
/// (|v|_R^2/cos_theta) kappa_R + (|v|_L^2/cosh_psi) kappa_L = 0
/// on random interior nodes and random tangent directions.
dc::CheckOutcome normal_curvature_spot_check(const dc::GridField& field, unsigned seed) {
    std::mt19937 rng(seed);
    const auto& interior = field.mask().interior_nodes();
    const auto& geom = field.geometry();
    std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);

    dc::CheckOutcome outcome;
    outcome.name = "normal_curvature_identity_spot";
    outcome.rhs = 0.0;
    outcome.tolerance = 1e-10;
    double worst = 0.0;
    for (int trial = 0; trial < 256; ++trial) {
        const int idx = interior[pick(rng)];
        const dc::ScalarJet jet = field.fd_jet(idx % geom.nx, idx / geom.nx);
        if (!jet.spacelike(dc::kSpacelikeMargin)) continue;
        const double phi = angle(rng);
        const dc::Vec2 w{std::cos(phi), std::sin(phi)};
        const dc::Vec3 v{w.x, w.y, dc::dot(jet.du, w)};
        const dc::CurvatureSample c = dc::invariants(jet);
        const double kr = dc::normal_curvature(jet, v, dc::Metric::Riemannian);
        const double kl = dc::normal_curvature(jet, v, dc::Metric::Lorentzian);
        const double tr = dc::dot_r(v, v) / c.cos_theta * kr;
        const double tl = dc::dot_l(v, v) / c.cosh_psi * kl;
        const double scale = std::max(1.0, std::abs(tr) + std::abs(tl));
        const double err = std::abs(tr + tl) / scale;
        if (err > worst) {
            worst = err;
            outcome.worst_node = idx;
        }
    }
    outcome.lhs = worst;
    outcome.holds = worst <= outcome.tolerance;
    return outcome;
}

int run_curvature(const RunConfig& cfg) {
    const auto entry = dc::catalog::get(join(cfg.surface));
    const dc::DomainMask mask = build_mask(cfg.domain);
    const dc::GridField field = dc::sample(entry.surface, mask);
    fs::create_directories(cfg.out_dir);
    dc::io::write_field_csv(field, (fs::path(cfg.out_dir) / "field.csv").string());
    dc::io::write_curvature_csv(field, (fs::path(cfg.out_dir) / "curvature.csv").string());
    if (cfg.svg) write_curvature_svgs(field, cfg.out_dir);
    std::cout << "curvature: wrote " << (fs::path(cfg.out_dir) / "curvature.csv").string()
              << " (" << mask.interior_nodes().size() << " interior nodes)\n";
    return 0;
}

int run_solve(const RunConfig& cfg) {
    const dc::DomainMask mask = mask_with_boundary(cfg);
    auto [field, report] = dc::solve_dirichlet(mask, std::nullopt, cfg.solver);

    fs::create_directories(cfg.out_dir);
    dc::io::write_field_csv(field, (fs::path(cfg.out_dir) / "solution.csv").string());
    nlohmann::ordered_json j = dc::io::solve_report_json(report);

    int code = report.converged ? 0 : 2;
    if (report.converged) {
        const auto checks = dc::verify_solution(field, cfg.gate);
        j["verification"] = dc::io::checks_json(checks, field.geometry());
        for (const auto& c : checks) {
            if (!c.holds) code = 3;
        }
    }
    dc::io::write_json(j, (fs::path(cfg.out_dir) / "report.json").string());
    if (cfg.svg) {
        dc::io::write_svg_heatmap(field.geometry(), field.values(), "u",
                                  (fs::path(cfg.out_dir) / "solution.svg").string());
        write_curvature_svgs(field, cfg.out_dir);
    }
    std::cout << "solve: converged=" << (report.converged ? "true" : "false")
              << " iterations=" << report.iterations
              << " residual=" << report.residual_norm_inf << "\n";
    return code;
}

int run_verify(const RunConfig& cfg) {
    dc::GridField field = [&] {
        if (!cfg.surface.empty()) {
            const auto entry = dc::catalog::get(join(cfg.surface));
            return dc::sample(entry.surface, build_mask(cfg.domain));
        }
        auto [solved, report] = dc::solve_dirichlet(mask_with_boundary(cfg), std::nullopt,
                                                    cfg.solver);
        if (!report.converged) {
            throw dc::LineSearchStalled("solver did not converge before verification");
        }
        return std::move(solved);
    }();

    auto checks = dc::verify_solution(field, cfg.gate);
    checks.push_back(normal_curvature_spot_check(field, cfg.seed));

    fs::create_directories(cfg.out_dir);
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["h"] = field.h();
    j["checks"] = dc::io::checks_json(checks, field.geometry());
    dc::io::write_json(j, (fs::path(cfg.out_dir) / "verify.json").string());

    bool all_hold = true;
    for (const auto& c : checks) {
        std::cout << (c.holds ? "[holds] " : "[FAILS] ") << c.name << " lhs=" << c.lhs
                  << " rhs=" << c.rhs << "\n";
        all_hold = all_hold && c.holds;
    }
    return all_hold ? 0 : 3;
}

int run_catalog(const RunConfig& cfg) {
    const auto entry = dc::catalog::get(join(cfg.surface));
    if (cfg.at.size() % 2 != 0 || cfg.at.empty()) {
        throw dc::DomainError("--at needs one or more x y pairs");
    }
    std::cout << "surface " << entry.surface.name
              << (entry.is_solution ? " (solution of H_R = H_L)" : " (not a solution)") << "\n";
    std::cout << "x1,x2,H_R,H_L,K_R,K_L,Q\n";
    for (std::size_t k = 0; k + 1 < cfg.at.size(); k += 2) {
        const dc::Vec2 p{cfg.at[k], cfg.at[k + 1]};
        if (!entry.surface.in_domain(p)) {
            throw dc::DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                  ") is outside the domain of " + entry.surface.name);
        }
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x, p.y,
                      entry.h_r(p), entry.h_l(p), entry.k_r(p), entry.k_l(p), entry.q(p));
        std::cout << buf;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-curvature toolkit for spacelike graphs"};
    // --h is the grid-spacing option, so help must not claim the short -h.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags take precedence)");

    RunConfig cfg;

    CLI::App* curvature = app.add_subcommand("curvature", "curvature tables of a catalog surface");
    curvature->set_help_flag("--help", "print help and exit");
    curvature->fallthrough();
    add_domain_options(curvature, cfg.domain);
    curvature->add_option("--surface", cfg.surface, "catalog surface, e.g. plane 0.3 0.4 0")
        ->required()
        ->expected(1, 4);
    curvature->add_option("--out", cfg.out_dir, "output directory");
    curvature->add_flag("--svg", cfg.svg, "emit SVG heatmaps");

    CLI::App* solve = app.add_subcommand("solve", "Dirichlet problem for the H_R = H_L equation");
    solve->set_help_flag("--help", "print help and exit");
    solve->fallthrough();
    add_domain_options(solve, cfg.domain);
    solve->add_option("--boundary", cfg.boundary,
                      "affine A B C | surface NAME [ARGS] | file PATH")
        ->required()
        ->expected(1, 5);
    solve->add_option("--out", cfg.out_dir, "output directory");
    solve->add_flag("--svg", cfg.svg, "emit SVG heatmaps");
    solve->add_option("--tol_res,--tol", cfg.solver.tol_res,
                      "relative residual tolerance factor");
    solve->add_option("--max_iter,--max-iter", cfg.solver.max_iter, "Newton iteration cap");
    solve->add_option("--delta_space", cfg.solver.delta_space, "spacelike margin");
    solve->add_option("--mu0", cfg.solver.mu0, "Tikhonov shift scale");

    CLI::App* verify = app.add_subcommand("verify", "run the theorem checks on a solution");
    verify->set_help_flag("--help", "print help and exit");
    verify->fallthrough();
    add_domain_options(verify, cfg.domain);
    verify->add_option("--surface", cfg.surface, "catalog surface to sample")->expected(1, 4);
    verify->add_option("--boundary", cfg.boundary, "solve first from this boundary data")
        ->expected(1, 5);
    verify->add_option("--out", cfg.out_dir, "output directory");
    verify->add_option("--seed", cfg.seed, "seed for the randomized identity spot check");
    verify->add_option("--gate", cfg.gate, "residual threshold for accepting a solution");
    verify->add_option("--tol_res,--tol", cfg.solver.tol_res,
                       "relative residual tolerance factor");
    verify->add_option("--max_iter,--max-iter", cfg.solver.max_iter, "Newton iteration cap");

    CLI::App* cat = app.add_subcommand("catalog", "closed-form invariants at points");
    cat->set_help_flag("--help", "print help and exit");
    cat->fallthrough();
    cat->add_option("--surface", cfg.surface, "catalog surface")->required()->expected(1, 4);
    cat->add_option("--at", cfg.at, "evaluation points x1 y1 [x2 y2 ...]")
        ->required()
        ->expected(-2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (curvature->parsed()) return run_curvature(cfg);
        if (solve->parsed()) return run_solve(cfg);
        if (verify->parsed()) return run_verify(cfg);
        return run_catalog(cfg);
    } catch (const dc::LineSearchStalled& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dc::TheoremViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
