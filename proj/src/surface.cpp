#include "memrod/surface.hpp"

#include <cmath>

#include "memrod/errors.hpp"

namespace memrod {

const Eigen::Vector3d TriQuadrature::bary[3] = {
    {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
    {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
    {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};

Eigen::Vector3d SurfaceJet::n_d(int alpha) const {
    // mixed curvature b_alpha^beta = g^{beta gamma} b_{gamma alpha}
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    for (int beta = 0; beta < 2; ++beta) {
        double b_mixed = 0;
        for (int gamma = 0; gamma < 2; ++gamma)
            b_mixed += g_con(beta, gamma) * b_cov(gamma, alpha);
        r -= b_mixed * a[beta];
    }
    return r;
}

void finish_jet(SurfaceJet& jet, double tol) {
    const Eigen::Vector3d cr = jet.a[0].cross(jet.a[1]);
    jet.sqrt_g = cr.norm();
    if (!(jet.sqrt_g > tol)) throw GeometryError("degenerate surface jet (sqrt_g ~ 0)");
    jet.n = cr / jet.sqrt_g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) jet.g_cov(i, j) = jet.a[i].dot(jet.a[j]);
    const double det = jet.g_cov.determinant();
    jet.g_con << jet.g_cov(1, 1), -jet.g_cov(0, 1), -jet.g_cov(1, 0), jet.g_cov(0, 0);
    jet.g_con /= det;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) jet.b_cov(i, j) = jet.n.dot(jet.second(i, j));
    double H = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) H += jet.g_con(i, j) * jet.b_cov(j, i);
    jet.H = 0.5 * H;
    jet.K = jet.b_cov.determinant() / det;
}

SurfaceJet evaluate_jet_with_shape(const ControlMesh& mesh,
                                   const Eigen::MatrixXd& dofs, int element,
                                   const Eigen::Vector3d& bary, int order,
                                   PatchShape& shape) {
    if (!mesh.tables_built()) throw TopologyError("patch tables not built");
    if (element < 0 || element >= mesh.n_triangles())
        throw SizeError("element index out of range");
    const PatchTopology& patch = mesh.patches[element];
    shape = eval_patch_shape(patch, bary[1], bary[2], order);

    const int M = (int)patch.points.size();
    Eigen::MatrixXd P(M, 3);
    for (int i = 0; i < M; ++i) P.row(i) = dofs.row(patch.points[i]);

    SurfaceJet jet;
    jet.order = order;
    jet.f = (shape.val.transpose() * P).transpose();
    for (int k = 0; k < 2; ++k) jet.a[k] = (shape.d1[k].transpose() * P).transpose();
    for (int k = 0; k < 3; ++k) jet.aa[k] = (shape.d2[k].transpose() * P).transpose();
    if (order >= 3)
        for (int k = 0; k < 4; ++k) jet.aaa[k] = (shape.d3[k].transpose() * P).transpose();
    finish_jet(jet);
    return jet;
}

SurfaceJet evaluate_jet(const ControlMesh& mesh, const Eigen::MatrixXd& dofs,
                        int element, const Eigen::Vector3d& bary, int order) {
    PatchShape shape;
    return evaluate_jet_with_shape(mesh, dofs, element, bary, order, shape);
}

void curvature_measures(const SurfaceJet& jet, double& H, double& K, double& sqrt_g) {
    H = jet.H;
    K = jet.K;
    sqrt_g = jet.sqrt_g;
}

ReferenceMetric reference_metric(const ControlMesh& mesh, int element,
                                 const Eigen::Vector3d& bary) {
    const Eigen::MatrixXd ref = mesh.vertex_matrix();
    const SurfaceJet jet = evaluate_jet(mesh, ref, element, bary, 2);
    ReferenceMetric h;
    h.h_cov = jet.g_cov;
    h.sqrt_h = jet.sqrt_g;
    if (!(h.h_cov(0, 0) > 0) || !(h.h_cov.determinant() > 0))
        throw GeometryError("reference metric not positive definite");
    return h;
}

Eigen::Vector3d vertex_limit_position(const ControlMesh& mesh,
                                      const Eigen::MatrixXd& dofs, int v) {
    const auto [wc, wr] = limit_stencil(mesh.vertex_valences[v]);
    Eigen::Vector3d p = wc * dofs.row(v).transpose();
    for (int r : mesh.vertex_rings[v]) p += wr * dofs.row(r).transpose();
    return p;
}

SurfaceQuadrature SurfaceQuadrature::build(const ControlMesh& mesh) {
    SurfaceQuadrature q;
    const Eigen::MatrixXd ref = mesh.vertex_matrix();
    q.points.reserve(mesh.n_triangles() * TriQuadrature::n_points);
    for (int e = 0; e < mesh.n_triangles(); ++e) {
        for (int k = 0; k < TriQuadrature::n_points; ++k) {
            Point p;
            p.element = e;
            p.bary = TriQuadrature::bary[k];
            p.weight = TriQuadrature::weight;
            SurfaceJet rjet = evaluate_jet_with_shape(mesh, ref, e, p.bary, 2, p.shape);
            p.ref.h_cov = rjet.g_cov;
            p.ref.sqrt_h = rjet.sqrt_g;
            p.R = rjet.f;
            q.points.push_back(std::move(p));
        }
    }
    return q;
}

} // namespace memrod
