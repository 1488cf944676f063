#include "dualcurv/catalog.hpp"

#include <cmath>
#include <sstream>

namespace dualcurv {
namespace catalog {

namespace {

std::function<double(Vec2)> constant(double v) {
    return [v](Vec2) { return v; };
}

} // namespace

CatalogEntry plane(double a, double b, double c) {
    if (a * a + b * b >= 1.0) {
        throw DomainError("plane slope (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not spacelike");
    }
    CatalogEntry entry;
    entry.surface.name = "plane";
    entry.surface.in_domain = [](Vec2) { return true; };
    entry.surface.jet_at = [a, b, c](Vec2 p) {
        ScalarJet jet;
        jet.point = p;
        jet.u = a * p.x + b * p.y + c;
        jet.du = {a, b};
        return jet;
    };
    entry.h_r = constant(0.0);
    entry.h_l = constant(0.0);
    entry.k_r = constant(0.0);
    entry.k_l = constant(0.0);
    entry.q = constant(0.0);
    entry.is_solution = true;
    return entry;
}

CatalogEntry helicoid() {
    CatalogEntry entry;
    entry.surface.name = "helicoid";
    entry.surface.in_domain = [](Vec2 p) { return norm2(p) > 1.0; };
    entry.surface.jet_at = [](Vec2 p) {
        const double r2 = norm2(p);
        const double r4 = r2 * r2;
        ScalarJet jet;
        jet.point = p;
        jet.u = std::atan2(p.y, p.x);
        jet.du = {-p.y / r2, p.x / r2};
        jet.d2u.xx = 2.0 * p.x * p.y / r4;
        jet.d2u.xy = (p.y * p.y - p.x * p.x) / r4;
        jet.d2u.yy = -2.0 * p.x * p.y / r4;
        return jet;
    };
    entry.h_r = constant(0.0);
    entry.h_l = constant(0.0);
    entry.k_r = [](Vec2 p) {
        const double r2 = norm2(p);
        return -1.0 / ((1.0 + r2) * (1.0 + r2));
    };
    entry.k_l = [](Vec2 p) {
        const double r2 = norm2(p);
        return 1.0 / ((r2 - 1.0) * (r2 - 1.0));
    };
    entry.q = constant(0.0);
    entry.is_solution = true;
    return entry;
}

CatalogEntry hyperboloid() {
    CatalogEntry entry;
    entry.surface.name = "hyperboloid";
    entry.surface.in_domain = [](Vec2) { return true; };
    entry.surface.jet_at = [](Vec2 p) {
        const double u = std::sqrt(1.0 + norm2(p));
        const double u3 = u * u * u;
        ScalarJet jet;
        jet.point = p;
        jet.u = u;
        jet.du = {p.x / u, p.y / u};
        jet.d2u.xx = (1.0 + p.y * p.y) / u3;
        jet.d2u.xy = -p.x * p.y / u3;
        jet.d2u.yy = (1.0 + p.x * p.x) / u3;
        return jet;
    };
    entry.h_l = constant(1.0);
    entry.h_r = [](Vec2 p) {
        const double r2 = norm2(p);
        return (1.0 + r2) * std::pow(1.0 + 2.0 * r2, -1.5);
    };
    entry.k_r = [](Vec2 p) {
        const double w = 1.0 + 2.0 * norm2(p);
        return 1.0 / (w * w);
    };
    entry.k_l = constant(-1.0);
    entry.q = [](Vec2 p) {
        const double r2 = norm2(p);
        return 2.0 - (2.0 + 2.0 * r2) * std::pow(1.0 + 2.0 * r2, -1.5);
    };
    entry.is_solution = false;
    return entry;
}

CatalogEntry sphere_cap(double R) {
    if (!(R > 0.0)) throw DomainError("sphere_cap radius must be positive");
    CatalogEntry entry;
    entry.surface.name = "sphere_cap";
    entry.surface.in_domain = [R](Vec2 p) { return norm2(p) < R * R / 2.0; };
    entry.surface.jet_at = [R](Vec2 p) {
        const double u = std::sqrt(R * R - norm2(p));
        const double u3 = u * u * u;
        ScalarJet jet;
        jet.point = p;
        jet.u = u;
        jet.du = {-p.x / u, -p.y / u};
        jet.d2u.xx = -(u * u + p.x * p.x) / u3;
        jet.d2u.xy = -p.x * p.y / u3;
        jet.d2u.yy = -(u * u + p.y * p.y) / u3;
        return jet;
    };
    entry.h_r = constant(-1.0 / R);
    entry.h_l = [R](Vec2 p) {
        const double r2 = norm2(p);
        return -(R * R - r2) * std::pow(R * R - 2.0 * r2, -1.5);
    };
    entry.k_r = constant(1.0 / (R * R));
    entry.k_l = [R](Vec2 p) {
        const double w = R * R - 2.0 * norm2(p);
        return -R * R / (w * w);
    };
    entry.q = [R](Vec2 p) {
        const double r2 = norm2(p);
        return -2.0 * (R * R - r2) * std::pow(R * R - 2.0 * r2, -1.5) + 2.0 / R;
    };
    entry.is_solution = false;
    return entry;
}

CatalogEntry get(const std::string& descriptor) {
    std::istringstream in(descriptor);
    std::string name;
    in >> name;
    if (name == "plane") {
        double a, b, c;
        if (!(in >> a >> b >> c)) throw DomainError("plane requires: plane A B C");
        return plane(a, b, c);
    }
    if (name == "helicoid") return helicoid();
    if (name == "hyperboloid") return hyperboloid();
    if (name == "sphere_cap") {
        double R;
        if (!(in >> R)) throw DomainError("sphere_cap requires: sphere_cap R");
        return sphere_cap(R);
    }
    throw DomainError("unknown catalog surface '" + name + "'");
}

} // namespace catalog
} // namespace dualcurv
