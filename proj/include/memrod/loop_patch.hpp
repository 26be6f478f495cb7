#pragma once

#include <Eigen/Dense>

#include "memrod/mesh.hpp"

namespace memrod {

/// Shape-function rows of one patch at a parametric point, in the element
/// chart (X1, X2) = (b1, b2) of the central triangle. Row length equals
/// patch.points.size(); entries pair with those control vertices.
struct PatchShape {
    int order = 2;
    Eigen::VectorXd val;
    Eigen::VectorXd d1[2];    // d/dX1, d/dX2
    Eigen::VectorXd d2[3];    // X1X1, X1X2, X2X2
    Eigen::VectorXd d3[4];    // X1X1X1, X1X1X2, X1X2X2, X2X2X2
};

/// Quartic box-spline basis of the regular patch (12 canonical points).
/// Derivative rows up to `order` (1, 2 or 3).
void box_spline_basis(double u, double v, int order, PatchShape& out);

/// Shape functions of an arbitrary patch at chart point (u, v) = (b1, b2),
/// b1 + b2 <= 1, b1, b2 >= 0. Regular patches evaluate the box-spline basis
/// directly; irregular ones subdivide the patch locally until the point
/// falls in a regular sub-patch (exact for any point off the extraordinary
/// corners). `min_depth` > 0 forces that many subdivision steps even on
/// regular patches (used by the refinement-equation tests).
PatchShape eval_patch_shape(const PatchTopology& patch, double u, double v,
                            int order, int min_depth = 0);

/// Limit position weights of control vertex `v` over [v, ring...]:
/// returns (w_center, w_ring) of the Loop limit stencil for valence n.
std::pair<double, double> limit_stencil(int valence);

/// Loop subdivision weight beta(n).
double loop_beta(int valence);

} // namespace memrod
