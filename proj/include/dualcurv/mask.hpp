#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/geometry.hpp"

namespace dualcurv {

enum class NodeClass : std::uint8_t { Outside = 0, Boundary = 1, Interior = 2 };

/// Uniform node lattice: node (i,j) sits at origin + h*(i,j).
struct GridGeometry {
    Vec2 origin;
    double h = 0.0;
    int nx = 0;
    int ny = 0;

    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    bool contains(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
    Vec2 node(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
};

/// Node classification of a planar domain on a uniform grid, plus the
/// Dirichlet values carried on the boundary ring.
///
/// Structural guarantees established at build time:
///  - every interior node has its full 3x3 neighbourhood on the grid and
///    free of outside nodes, so every stencil used anywhere is defined;
///  - boundary nodes are exactly the non-interior nodes touching an
///    interior node (8-neighbourhood);
///  - the interior is a single 4-edge-connected component and non-empty;
///  - the grid is at least 8x8.
class DomainMask {
  public:
    /// Classifies nodes of `geom` by an inside-predicate evaluated at node
    /// centers. Boundary values start unset (NaN) — see with_boundary_values.
    static DomainMask build(const GridGeometry& geom,
                            const std::function<bool(Vec2)>& inside);

    const GridGeometry& geometry() const { return geom_; }
    NodeClass node_class(int i, int j) const { return classes_[geom_.index(i, j)]; }
    NodeClass node_class(int idx) const { return classes_[idx]; }
    bool is_interior(int i, int j) const { return node_class(i, j) == NodeClass::Interior; }

    /// Grid indices of interior / boundary nodes in row-major order.
    const std::vector<int>& interior_nodes() const { return interior_; }
    const std::vector<int>& boundary_nodes() const { return boundary_; }

    /// Dirichlet value at a boundary node (NaN where unset).
    double boundary_value(int idx) const { return boundary_values_[idx]; }
    const std::vector<double>& boundary_values() const { return boundary_values_; }
    bool has_boundary_values() const { return has_values_; }

    /// Copy of this mask with g evaluated at every boundary node.
    DomainMask with_boundary_values(const std::function<double(Vec2)>& g) const;
    /// Copy with explicit values, one per entry of boundary_nodes().
    DomainMask with_boundary_values(const std::vector<double>& per_boundary_node) const;

  private:
    DomainMask() = default;

    GridGeometry geom_;
    std::vector<NodeClass> classes_;
    std::vector<double> boundary_values_; // full grid size, NaN off the boundary
    std::vector<int> interior_;
    std::vector<int> boundary_;
    bool has_values_ = false;
};

// Shape predicates; all domains are open sets.
std::function<bool(Vec2)> inside_disc(Vec2 center, double radius);
std::function<bool(Vec2)> inside_annulus(Vec2 center, double r_inner, double r_outer);
std::function<bool(Vec2)> inside_rectangle(Vec2 lo, Vec2 hi);
/// Annular sector r_inner < r < r_outer, theta0 < atan2 < theta1 (no wrap,
/// -pi < theta0 < theta1 <= pi).
std::function<bool(Vec2)> inside_sector(Vec2 center, double r_inner, double r_outer,
                                        double theta0, double theta1);

/// Grid geometry whose node lattice is aligned to multiples of h around the
/// bounding box [lo,hi], padded by two cells so the boundary ring fits.
GridGeometry aligned_geometry(Vec2 lo, Vec2 hi, double h);

} // namespace dualcurv
