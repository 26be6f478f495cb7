#include "memrod/loop_patch.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "memrod/errors.hpp"

namespace memrod {

// Quartic box-spline basis over the canonical 12-point regular patch,
// exact rational coefficients times 12. Monomial order below.
static constexpr int kMono[15][2] = {
    {0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {0, 3}, {1, 2},
    {2, 1}, {3, 0}, {0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}};

static constexpr double kCoeff12[12][15] = {
    {6, 0, 0, -12, -12, -12, 8, 12, 12, 8, -1, -2, 0, -2, -1},
    {1, 2, 4, 0, 6, 6, -4, -12, -6, -4, 2, 4, 0, -2, -1},
    {1, 4, 2, 6, 6, 0, -4, -6, -12, -4, -1, -2, 0, 4, 2},
    {1, -2, 2, 0, -6, 0, 2, 6, 0, -4, -1, -2, 0, 4, 2},
    {0, 0, 0, 0, 0, 0, 2, 6, 6, 2, -1, -2, 0, -2, -1},
    {1, 2, -2, 0, -6, 0, -4, 0, 6, 2, 2, 4, 0, -2, -1},
    {1, -2, -4, 0, 6, 6, 2, 0, -6, -4, -1, -2, 0, 2, 1},
    {1, -4, -2, 6, 6, 0, -4, -6, 0, 2, 1, 2, 0, -2, -1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, -2, -1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 2, 0, 0, 0, -1, -2, 0, 0, 0}};

double loop_beta(int n) {
    const double c = 3.0 / 8.0 + std::cos(2.0 * M_PI / n) / 4.0;
    return (5.0 / 8.0 - c * c) / n;
}

std::pair<double, double> limit_stencil(int n) {
    const double wr = 1.0 / (n + 3.0 / (8.0 * loop_beta(n)));
    return {1.0 - n * wr, wr};
}

namespace {

double falling(int a, int p) {
    double f = 1.0;
    for (int k = 0; k < p; ++k) f *= (a - k);
    return f;
}

// 15-vector of d^p/du^p d^q/dv^q monomials at (u, v)
void mono_derivs(double u, double v, int p, int q, double out[15]) {
    for (int m = 0; m < 15; ++m) {
        const int a = kMono[m][0], b = kMono[m][1];
        if (a < p || b < q) {
            out[m] = 0.0;
            continue;
        }
        out[m] = falling(a, p) * falling(b, q) * std::pow(u, a - p) * std::pow(v, b - q);
    }
}

void basis_row(double u, double v, int p, int q, Eigen::VectorXd& row) {
    double mono[15];
    mono_derivs(u, v, p, q, mono);
    row.resize(12);
    for (int i = 0; i < 12; ++i) {
        double s = 0.0;
        for (int m = 0; m < 15; ++m) s += kCoeff12[i][m] * mono[m];
        row[i] = s / 12.0;
    }
}

} // namespace

void box_spline_basis(double u, double v, int order, PatchShape& out) {
    out.order = order;
    basis_row(u, v, 0, 0, out.val);
    basis_row(u, v, 1, 0, out.d1[0]);
    basis_row(u, v, 0, 1, out.d1[1]);
    if (order >= 2) {
        basis_row(u, v, 2, 0, out.d2[0]);
        basis_row(u, v, 1, 1, out.d2[1]);
        basis_row(u, v, 0, 2, out.d2[2]);
    }
    if (order >= 3) {
        basis_row(u, v, 3, 0, out.d3[0]);
        basis_row(u, v, 2, 1, out.d3[1]);
        basis_row(u, v, 1, 2, out.d3[2]);
        basis_row(u, v, 0, 3, out.d3[3]);
    }
}

namespace {

struct LocalMesh {
    std::vector<std::array<int, 3>> faces;
    std::array<int, 3> central;
    Eigen::MatrixXd W;  // (#local vertices) x (#patch points)
};

// CCW ring of vertex v; throws if the ring does not close (incomplete disk).
std::vector<int> local_ring(const std::vector<std::array<int, 3>>& faces, int v) {
    std::map<int, int> next;  // within faces (v,a,b): a -> b
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k)
            if (f[k] == v) next[f[(k + 1) % 3]] = f[(k + 2) % 3];
    if (next.empty()) throw TopologyError("vertex without faces in local patch");
    std::vector<int> ring;
    const int start = next.begin()->first;
    int cur = start;
    do {
        ring.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) throw TopologyError("open ring in local patch");
        cur = it->second;
        if (ring.size() > next.size() + 1) throw TopologyError("non-closing local ring");
    } while (cur != start);
    if (ring.size() != next.size()) throw TopologyError("inconsistent local ring");
    return ring;
}

int pos_in(const std::vector<int>& ring, int x) {
    for (int i = 0; i < (int)ring.size(); ++i)
        if (ring[i] == x) return i;
    throw TopologyError("vertex not in local ring");
}

// canonical 12 control points of a regular central triangle
std::array<int, 12> canonical12(const std::vector<std::array<int, 3>>& faces,
                                const std::array<int, 3>& central) {
    const int c0 = central[0], c1 = central[1], c2 = central[2];
    auto r0 = local_ring(faces, c0);
    auto r1 = local_ring(faces, c1);
    auto r2 = local_ring(faces, c2);
    if (r0.size() != 6 || r1.size() != 6 || r2.size() != 6)
        throw TopologyError("canonical12 called on irregular patch");
    auto at = [](const std::vector<int>& r, int i) {
        const int n = (int)r.size();
        return r[((i % n) + n) % n];
    };
    std::array<int, 12> c;
    c[0] = c0; c[1] = c1; c[2] = c2;
    const int p01 = pos_in(r0, c1);
    if (at(r0, p01 + 1) != c2) throw TopologyError("local ring orientation broken");
    c[3] = at(r0, p01 - 1);   // w01
    const int p12 = pos_in(r1, c2);
    c[4] = at(r1, p12 - 1);   // w12
    c[5] = at(r0, p01 + 2);   // w02
    c[6] = at(r0, p01 + 3);
    c[7] = at(r0, p01 + 4);
    const int p0in1 = pos_in(r1, c0);
    c[8] = at(r1, p0in1 + 2);
    c[9] = at(r1, p0in1 + 3);
    const int p1in2 = pos_in(r2, c1);
    c[10] = at(r2, p1in2 + 2);
    c[11] = at(r2, p1in2 + 3);
    return c;
}

struct ChildPick {
    int which;          // 0,1,2 corner children; 3 central
    double u, v;        // remapped coords
    double scale;       // chart linear factor (+-2)
};

ChildPick select_child(double u, double v) {
    if (u >= 0.5) return {1, 2 * u - 1.0, 2 * v, 2.0};
    if (v >= 0.5) return {2, 2 * u, 2 * v - 1.0, 2.0};
    if (u + v <= 0.5) return {0, 2 * u, 2 * v, 2.0};
    return {3, 1.0 - 2 * u, 1.0 - 2 * v, -2.0};
}

LocalMesh subdivide_local(const LocalMesh& lm, int child) {
    const int c0 = lm.central[0], c1 = lm.central[1], c2 = lm.central[2];
    auto corner = [&](int v) { return v == c0 || v == c1 || v == c2; };

    // undirected edge -> (wing vertices) via the <=2 adjacent faces
    std::map<std::pair<int, int>, std::vector<int>> edge_wings;
    for (const auto& f : lm.faces)
        for (int k = 0; k < 3; ++k) {
            auto key = std::minmax(f[k], f[(k + 1) % 3]);
            edge_wings[key].push_back(f[(k + 2) % 3]);
        }

    std::map<std::pair<int, int>, int> vid;  // (-1,v): V-point; (a,b): E-point
    std::vector<Eigen::RowVectorXd> rows;
    auto V = [&](int v) {
        auto key = std::make_pair(-1, v);
        auto it = vid.find(key);
        if (it != vid.end()) return it->second;
        auto ring = local_ring(lm.faces, v);
        const int n = (int)ring.size();
        const double b = loop_beta(n);
        Eigen::RowVectorXd r = (1.0 - n * b) * lm.W.row(v);
        for (int x : ring) r += b * lm.W.row(x);
        vid[key] = (int)rows.size();
        rows.push_back(r);
        return vid[key];
    };
    auto E = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = vid.find(key);
        if (it != vid.end()) return it->second;
        const auto& wings = edge_wings.at(key);
        if (wings.size() != 2) throw TopologyError("edge point without two wings");
        Eigen::RowVectorXd r = 0.375 * (lm.W.row(a) + lm.W.row(b)) +
                               0.125 * (lm.W.row(wings[0]) + lm.W.row(wings[1]));
        vid[key] = (int)rows.size();
        rows.push_back(r);
        return vid[key];
    };

    std::vector<std::array<int, 3>> fine_faces;
    for (const auto& f : lm.faces) {
        int ncorner = corner(f[0]) + corner(f[1]) + corner(f[2]);
        for (int k = 0; k < 3; ++k) {
            const int x = f[k], y = f[(k + 1) % 3], z = f[(k + 2) % 3];
            if (corner(x)) fine_faces.push_back({V(x), E(x, y), E(x, z)});
        }
        if (ncorner >= 2)
            fine_faces.push_back({E(f[0], f[1]), E(f[1], f[2]), E(f[2], f[0])});
    }

    std::array<int, 3> fc;
    switch (child) {
        case 0: fc = {V(c0), E(c0, c1), E(c0, c2)}; break;
        case 1: fc = {E(c0, c1), V(c1), E(c1, c2)}; break;
        case 2: fc = {E(c0, c2), E(c1, c2), V(c2)}; break;
        default: fc = {E(c1, c2), E(c0, c2), E(c0, c1)}; break;
    }

    // keep faces incident to the new central corners, compact indices
    auto keeps = [&](const std::array<int, 3>& f) {
        for (int k = 0; k < 3; ++k)
            if (f[k] == fc[0] || f[k] == fc[1] || f[k] == fc[2]) return true;
        return false;
    };
    std::map<int, int> remap;
    LocalMesh out;
    auto id_of = [&](int fine) {
        auto it = remap.find(fine);
        if (it != remap.end()) return it->second;
        const int nid = (int)remap.size();
        remap[fine] = nid;
        return nid;
    };
    std::vector<std::array<int, 3>> kept;
    for (const auto& f : fine_faces)
        if (keeps(f)) kept.push_back({id_of(f[0]), id_of(f[1]), id_of(f[2])});
    out.faces = std::move(kept);
    out.central = {remap.at(fc[0]), remap.at(fc[1]), remap.at(fc[2])};
    out.W.resize((int)remap.size(), lm.W.cols());
    for (const auto& [fine, nid] : remap) out.W.row(nid) = rows[fine];
    return out;
}

bool central_regular(const LocalMesh& lm) {
    for (int k = 0; k < 3; ++k)
        if (local_ring(lm.faces, lm.central[k]).size() != 6) return false;
    return true;
}

} // namespace

PatchShape eval_patch_shape(const PatchTopology& patch, double u, double v,
                            int order, int min_depth) {
    const double tol = 1e-12;
    if (u < -tol || v < -tol || u + v > 1.0 + tol)
        throw GeometryError("patch evaluation point outside the unit triangle");
    u = std::max(u, 0.0);
    v = std::max(v, 0.0);
    if (u + v > 1.0) {
        const double s = u + v;
        u /= s;
        v /= s;
    }

    const int M = (int)patch.points.size();
    PatchShape out;
    out.order = order;

    if (patch.regular && min_depth == 0 && M == 12) {
        box_spline_basis(u, v, order, out);
        return out;
    }

    // nudge numerically-at-corner points off irregular corners
    const double corner_dist[3] = {u + v, 1.0 - u, 1.0 - v};
    for (int k = 0; k < 3; ++k) {
        if (patch.corner_valence[k] != 6 && corner_dist[k] < 1e-13) {
            if (order >= 3)
                throw SingularityError(
                    "third derivatives requested at an extraordinary vertex");
            const double eps = 1e-13;
            if (k == 0) { u = eps; v = eps; }
            if (k == 1) u = 1.0 - eps;
            if (k == 2) v = 1.0 - eps;
        }
    }

    LocalMesh lm;
    lm.faces = patch.faces;
    lm.central = {0, 1, 2};
    lm.W = Eigen::MatrixXd::Identity(M, M);

    double chart_scale = 1.0;
    int depth = 0;
    const int max_depth = 52;
    while (depth < min_depth || !central_regular(lm)) {
        if (depth >= max_depth)
            throw SingularityError(
                "patch subdivision depth exceeded near extraordinary vertex");
        const ChildPick pick = select_child(u, v);
        lm = subdivide_local(lm, pick.which);
        u = pick.u;
        v = pick.v;
        chart_scale *= pick.scale;
        ++depth;
    }

    const auto canon = canonical12(lm.faces, lm.central);
    PatchShape basis;
    box_spline_basis(u, v, order, basis);

    auto expand = [&](const Eigen::VectorXd& b, double factor) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(lm.W.cols());
        for (int i = 0; i < 12; ++i) r += b[i] * lm.W.row(canon[i]);
        return Eigen::VectorXd(factor * r.transpose());
    };
    const double s1 = chart_scale;
    const double s2 = chart_scale * chart_scale;
    const double s3 = s2 * chart_scale;
    out.val = expand(basis.val, 1.0);
    out.d1[0] = expand(basis.d1[0], s1);
    out.d1[1] = expand(basis.d1[1], s1);
    if (order >= 2)
        for (int k = 0; k < 3; ++k) out.d2[k] = expand(basis.d2[k], s2);
    if (order >= 3)
        for (int k = 0; k < 4; ++k) out.d3[k] = expand(basis.d3[k], s3);
    return out;
}

} // namespace memrod
