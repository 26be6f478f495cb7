#pragma once

#include <Eigen/Dense>

#include "memrod/loop_patch.hpp"
#include "memrod/mesh.hpp"

namespace memrod {

/// Derivatives of the deformation map at one surface point, in the element
/// chart (X1, X2) = (b1, b2). The normal is a1 x a2 / |a1 x a2| (outward
/// for CCW-from-outside triangles); with that convention H = -1 on the
/// outward-oriented unit sphere.
struct SurfaceJet {
    Eigen::Vector3d f;
    Eigen::Vector3d a[2];        // a_alpha = f_{,alpha}
    Eigen::Vector3d aa[3];       // f_{,11}, f_{,12}, f_{,22}
    Eigen::Vector3d aaa[4];      // third derivatives (order 3 only)
    Eigen::Vector3d n;
    Eigen::Matrix2d g_cov, g_con, b_cov;
    double H = 0, K = 0, sqrt_g = 0;
    int order = 2;

    Eigen::Vector3d dual(int alpha) const {
        return g_con(alpha, 0) * a[0] + g_con(alpha, 1) * a[1];
    }
    /// Weingarten: n_{,alpha} = -b_alpha^beta a_beta.
    Eigen::Vector3d n_d(int alpha) const;
    const Eigen::Vector3d& second(int alpha, int beta) const {
        return aa[alpha + beta];  // (0,0)->0, (0,1)/(1,0)->1, (1,1)->2
    }
    const Eigen::Vector3d& third(int a_, int b_, int c_) const {
        return aaa[a_ + b_ + c_];
    }
};

struct ReferenceMetric {
    Eigen::Matrix2d h_cov;
    double sqrt_h = 0;
};

/// Fills geometric quantities from raw derivative vectors; throws
/// GeometryError when sqrt_g falls below `tol`.
void finish_jet(SurfaceJet& jet, double tol = 1e-12);

/// Limit-surface jet at (element, bary) for the control positions `dofs`
/// (N x 3). `bary` are barycentric coordinates (3, summing to 1) against
/// the element's corners; the chart is (X1, X2) = (bary1, bary2).
SurfaceJet evaluate_jet(const ControlMesh& mesh, const Eigen::MatrixXd& dofs,
                        int element, const Eigen::Vector3d& bary, int order);

/// Jet plus the shape rows used to build it (for weak-form assembly).
SurfaceJet evaluate_jet_with_shape(const ControlMesh& mesh,
                                   const Eigen::MatrixXd& dofs, int element,
                                   const Eigen::Vector3d& bary, int order,
                                   PatchShape& shape);

/// (H, K, sqrt_g) of a finished jet.
void curvature_measures(const SurfaceJet& jet, double& H, double& K, double& sqrt_g);

/// Metric of the reference limit surface at the same chart point.
ReferenceMetric reference_metric(const ControlMesh& mesh, int element,
                                 const Eigen::Vector3d& bary);

/// Limit position of a control vertex (Loop limit stencil).
Eigen::Vector3d vertex_limit_position(const ControlMesh& mesh,
                                      const Eigen::MatrixXd& dofs, int v);

/// Three-point Gauss rule on the unit triangle: barycentric points and
/// weights summing to 1/2 (the chart area).
struct TriQuadrature {
    static constexpr int n_points = 3;
    static const Eigen::Vector3d bary[3];
    static constexpr double weight = 1.0 / 6.0;
};

/// Precomputed per-quadrature-point data shared by all membrane integrals:
/// order-2 shape rows, reference metric, reference limit position.
struct SurfaceQuadrature {
    struct Point {
        int element;
        Eigen::Vector3d bary;
        double weight;             // chart weight
        PatchShape shape;          // order 2
        ReferenceMetric ref;
        Eigen::Vector3d R;         // reference limit position
    };
    std::vector<Point> points;

    static SurfaceQuadrature build(const ControlMesh& mesh);
};

} // namespace memrod
