#include "dualcurv/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dualcurv/curvature.hpp"

namespace dualcurv {
namespace io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* class_name(NodeClass c) {
    switch (c) {
        case NodeClass::Interior: return "interior";
        case NodeClass::Boundary: return "boundary";
        default: return "outside";
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_field_csv(const GridField& field, const std::string& path) {
    auto out = open_out(path);
    const auto& geom = field.geometry();
    const auto& mask = field.mask();
    out << "x1,x2,u,class\n";
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            const Vec2 p = geom.node(i, j);
            const NodeClass c = mask.node_class(i, j);
            const double u = c == NodeClass::Outside ? kNaN : field.at(i, j);
            out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(u) << ','
                << class_name(c) << '\n';
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

GridField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("x1,x2,u,class", 0) != 0) {
        throw IoError("'" + path + "' is not a field CSV (bad header)");
    }
    struct Row {
        double x, y, u;
        std::string cls;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Row row;
        char cls[32];
        // sscanf, not stream extraction: u may legitimately be "nan".
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%31s", &row.x, &row.y, &row.u, cls) != 4) {
            throw IoError("malformed row in '" + path + "': " + line);
        }
        row.cls = cls;
        rows.push_back(row);
    }
    if (rows.size() < 64) throw IoError("'" + path + "' holds too few nodes");

    std::vector<double> xs, ys;
    for (const Row& r : rows) {
        xs.push_back(r.x);
        ys.push_back(r.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
    if (rows.size() != static_cast<std::size_t>(nx) * ny) {
        throw IoError("'" + path + "' is not a full grid");
    }
    const double h = nx > 1 ? xs[1] - xs[0] : ys[1] - ys[0];

    GridGeometry geom{{xs.front(), ys.front()}, h, nx, ny};
    std::vector<NodeClass> classes(geom.size(), NodeClass::Outside);
    std::vector<double> values(geom.size(), kNaN);
    for (const Row& r : rows) {
        const int i = static_cast<int>(std::llround((r.x - geom.origin.x) / h));
        const int j = static_cast<int>(std::llround((r.y - geom.origin.y) / h));
        if (!geom.contains(i, j)) throw IoError("node off the inferred grid in '" + path + "'");
        const int idx = geom.index(i, j);
        values[idx] = r.u;
        if (r.cls == "interior") classes[idx] = NodeClass::Interior;
        else if (r.cls == "boundary") classes[idx] = NodeClass::Boundary;
        else if (r.cls == "outside") classes[idx] = NodeClass::Outside;
        else throw IoError("unknown node class '" + r.cls + "' in '" + path + "'");
    }

    // Rebuild a mask that matches the stored classification.
    DomainMask mask = DomainMask::build(geom, [&](Vec2 p) {
        const int i = static_cast<int>(std::llround((p.x - geom.origin.x) / h));
        const int j = static_cast<int>(std::llround((p.y - geom.origin.y) / h));
        return classes[geom.index(i, j)] != NodeClass::Outside;
    });
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (mask.node_class(i, j) != classes[geom.index(i, j)]) {
                throw IoError("'" + path + "' classification violates mask invariants at node (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    std::vector<double> boundary_vals;
    for (int idx : mask.boundary_nodes()) boundary_vals.push_back(values[idx]);
    auto final_mask = std::make_shared<DomainMask>(mask.with_boundary_values(boundary_vals));
    std::vector<double> interior_vals;
    for (int idx : final_mask->interior_nodes()) interior_vals.push_back(values[idx]);
    return GridField(final_mask, interior_vals);
}

void write_curvature_csv(const GridField& field, const std::string& path) {
    auto out = open_out(path);
    const auto& geom = field.geometry();
    const auto& mask = field.mask();
    out << "x1,x2,H_R,H_L,K_R,K_L,cos_theta,cosh_psi,gap\n";
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            const Vec2 p = geom.node(i, j);
            CurvatureSample c;
            bool have = false;
            if (mask.is_interior(i, j)) {
                const ScalarJet jet = field.fd_jet(i, j);
                if (jet.spacelike(kSpacelikeMargin)) {
                    c = invariants(jet);
                    have = true;
                }
            }
            out << fmt17(p.x) << ',' << fmt17(p.y);
            if (have) {
                out << ',' << fmt17(c.h_r) << ',' << fmt17(c.h_l) << ',' << fmt17(c.k_r) << ','
                    << fmt17(c.k_l) << ',' << fmt17(c.cos_theta) << ',' << fmt17(c.cosh_psi)
                    << ',' << fmt17(c.ellipticity_gap);
            } else {
                out << ",nan,nan,nan,nan,nan,nan,nan";
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

nlohmann::ordered_json outcome_json(const CheckOutcome& check, const GridGeometry& geom) {
    nlohmann::ordered_json j;
    j["name"] = check.name;
    j["holds"] = check.holds;
    j["lhs"] = check.lhs;
    j["rhs"] = std::isfinite(check.rhs) ? nlohmann::ordered_json(check.rhs)
                                        : nlohmann::ordered_json("inf");
    j["tolerance"] = check.tolerance;
    if (check.worst_node) {
        const int idx = *check.worst_node;
        const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
        j["worst_node"] = {{"i", idx % geom.nx}, {"j", idx / geom.nx}, {"x1", p.x}, {"x2", p.y}};
    } else {
        j["worst_node"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json checks_json(const std::vector<CheckOutcome>& checks,
                                   const GridGeometry& geom) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckOutcome& c : checks) arr.push_back(outcome_json(c, geom));
    return arr;
}

nlohmann::ordered_json solve_report_json(const SolveReport& report) {
    nlohmann::ordered_json j;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["residual_history"] = report.residual_history;
    j["residual_norm_inf"] = report.residual_norm_inf;
    j["residual_norm_2"] = report.residual_norm_2;
    j["tolerance"] = report.tolerance;
    j["damping_events"] = report.damping_events;
    j["shift_events"] = report.shift_events;
    j["final_gradient_max"] = report.final_gradient_max;
    j["final_gradient_min"] = report.final_gradient_min;
    j["verification"] = nlohmann::ordered_json::array();
    return j;
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

void rgb_of(double t, int& r, int& g, int& b) {
    // Two-segment blue -> white -> red map.
    t = std::clamp(t, 0.0, 1.0);
    if (t < 0.5) {
        const double s = t / 0.5;
        r = static_cast<int>(59 + s * (255 - 59));
        g = static_cast<int>(76 + s * (255 - 76));
        b = static_cast<int>(192 + s * (255 - 192));
    } else {
        const double s = (t - 0.5) / 0.5;
        r = static_cast<int>(255 + s * (180 - 255));
        g = static_cast<int>(255 + s * (4 - 255));
        b = static_cast<int>(255 + s * (38 - 255));
    }
}

} // namespace

void write_svg_heatmap(const GridGeometry& geom, const std::vector<double>& values,
                       const std::string& title, const std::string& path) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    const double span = hi > lo ? hi - lo : 1.0;

    const int cell = 4;
    const int wpx = geom.nx * cell, hpx = geom.ny * cell;
    const int legend = 44;
    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wpx << "\" height=\""
        << hpx + legend << "\">\n";
    char buf[256];
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            const double v = values[geom.index(i, j)];
            int r = 160, g = 160, b = 160;
            if (std::isfinite(v)) rgb_of((v - lo) / span, r, g, b);
            // y axis points up: row j drawn from the bottom.
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          i * cell, (geom.ny - 1 - j) * cell, cell, cell, r, g, b);
            out << buf;
        }
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"2\" y=\"%d\" font-size=\"12\" font-family=\"monospace\">%s</text>\n",
                  hpx + 16, title.c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"2\" y=\"%d\" font-size=\"12\" font-family=\"monospace\">"
                  "min %.6g  max %.6g</text>\n",
                  hpx + 34, lo, hi);
    out << buf;
    out << "</svg>\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace io
} // namespace dualcurv
