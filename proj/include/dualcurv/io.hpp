#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dualcurv/analysis.hpp"
#include "dualcurv/grid_field.hpp"
#include "dualcurv/solver.hpp"

namespace dualcurv {
namespace io {

/// Writes "x1,x2,u,class" rows (row-major over the grid, x fastest),
/// 17 significant digits, class in {interior, boundary, outside}.
void write_field_csv(const GridField& field, const std::string& path);

/// Rebuilds a field from write_field_csv output. The grid geometry is
/// inferred from the coordinate columns; IoError on malformed input.
GridField read_field_csv(const std::string& path);

/// Per-node curvature table "x1,x2,H_R,H_L,K_R,K_L,cos_theta,cosh_psi,gap"
/// from centered FD jets; nan on non-interior or non-spacelike nodes.
void write_curvature_csv(const GridField& field, const std::string& path);

/// Report as JSON; "verification" starts as an empty array for the caller
/// to fill with checks_json once post-solve checks have run.
nlohmann::ordered_json solve_report_json(const SolveReport& report);
nlohmann::ordered_json checks_json(const std::vector<CheckOutcome>& checks,
                                   const GridGeometry& geom);
void write_json(const nlohmann::ordered_json& j, const std::string& path);

/// Color-mapped cell plot of per-node values (NaN cells grey) with a
/// min/max legend.
void write_svg_heatmap(const GridGeometry& geom, const std::vector<double>& values,
                       const std::string& title, const std::string& path);

} // namespace io
} // namespace dualcurv
