#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualcurv/jet.hpp"
#include "dualcurv/mask.hpp"

namespace dualcurv {

/// Analytic surface u(x1,x2) with exact jets, defined on a planar domain.
struct AnalyticSurface {
    std::string name;
    std::function<bool(Vec2)> in_domain;
    std::function<ScalarJet(Vec2)> jet_at;

    double value(Vec2 p) const { return jet_at(p).u; }
};

/// Scalar samples on the nodes of a masked grid. Interior and boundary
/// nodes carry values; outside nodes hold NaN and are never read.
class GridField {
  public:
    /// Field over `mask` with interior values from `interior` (one per
    /// interior node, mask order) and boundary values from the mask.
    GridField(std::shared_ptr<const DomainMask> mask, const std::vector<double>& interior);

    /// Field with every non-outside value taken from `f` at node centers.
    /// Boundary values of the returned field's mask equal the trace of f.
    static GridField from_function(std::shared_ptr<const DomainMask> mask,
                                   const std::function<double(Vec2)>& f);

    const DomainMask& mask() const { return *mask_; }
    std::shared_ptr<const DomainMask> mask_ptr() const { return mask_; }
    const GridGeometry& geometry() const { return mask_->geometry(); }
    double h() const { return mask_->geometry().h; }

    double at(int i, int j) const { return values_[mask_->geometry().index(i, j)]; }
    double at(int idx) const { return values_[idx]; }
    const std::vector<double>& values() const { return values_; }

    /// Central second-order jet at an interior node. O(h^2) on smooth
    /// fields, exact on quadratics. StencilError off the interior.
    ScalarJet fd_jet(int i, int j) const;

    /// Gradient at the midpoint of the face between (i,j) and (i+1,j)
    /// (axis==0) or (i,j) and (i,j+1) (axis==1): two-point normal
    /// difference, four-point tangential average.
    Vec2 face_gradient(int i, int j, int axis) const;

    /// Largest |face gradient| over the four faces of every interior node.
    double max_face_gradient() const;

    /// max face gradient <= 1 - margin.
    bool admissible(double margin = kSpacelikeMargin) const;

    /// Node-centered gradient extrema over interior nodes.
    double max_node_gradient() const;
    double min_node_gradient() const;

  private:
    GridField() = default;

    std::shared_ptr<const DomainMask> mask_;
    std::vector<double> values_;
};

/// Samples an analytic surface over a mask: DomainError if the surface's
/// domain predicate fails at any interior or boundary node, NotSpacelike
/// if the sampled field is not admissible at the given margin.
GridField sample(const AnalyticSurface& surface, const DomainMask& mask,
                 double margin = kSpacelikeMargin);

} // namespace dualcurv
