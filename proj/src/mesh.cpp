#include "memrod/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

#include "memrod/errors.hpp"

namespace memrod {

Eigen::MatrixXd ControlMesh::vertex_matrix() const {
    Eigen::MatrixXd m(n_vertices(), 3);
    for (int i = 0; i < n_vertices(); ++i) m.row(i) = vertices[i].transpose();
    return m;
}

namespace {

ControlMesh make_icosahedron() {
    // Poles on the z-axis, two pentagonal rings at latitude +-atan(1/2).
    ControlMesh m;
    const double lat = std::atan(0.5);
    m.vertices.push_back({0.0, 0.0, 1.0});
    for (int k = 0; k < 5; ++k) {
        const double lon = 2.0 * M_PI * k / 5.0;
        m.vertices.push_back({std::cos(lat) * std::cos(lon),
                              std::cos(lat) * std::sin(lon), std::sin(lat)});
    }
    for (int k = 0; k < 5; ++k) {
        const double lon = 2.0 * M_PI * (k + 0.5) / 5.0;
        m.vertices.push_back({std::cos(lat) * std::cos(lon),
                              std::cos(lat) * std::sin(lon), -std::sin(lat)});
    }
    m.vertices.push_back({0.0, 0.0, -1.0});
    for (int k = 0; k < 5; ++k) {
        const int a = 1 + k, b = 1 + (k + 1) % 5;
        const int c = 6 + k, d = 6 + (k + 1) % 5;
        m.triangles.push_back({0, a, b});       // north cap
        m.triangles.push_back({a, c, d});       // upper band
        m.triangles.push_back({a, d, b});       // lower band
        m.triangles.push_back({11, d, c});      // south cap
    }
    return m;
}

ControlMesh subdivide_midpoint(const ControlMesh& coarse) {
    ControlMesh fine;
    fine.vertices = coarse.vertices;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int idx = static_cast<int>(fine.vertices.size());
        fine.vertices.push_back(0.5 * (coarse.vertices[a] + coarse.vertices[b]));
        midpoint.emplace(key, idx);
        return idx;
    };
    for (const auto& t : coarse.triangles) {
        const int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m02 = mid(t[0], t[2]);
        fine.triangles.push_back({t[0], m01, m02});
        fine.triangles.push_back({t[1], m12, m01});
        fine.triangles.push_back({t[2], m02, m12});
        fine.triangles.push_back({m01, m12, m02});
    }
    return fine;
}

} // namespace

ControlMesh build_icosphere(int level) {
    if (level < 0) throw SizeError("icosphere level must be non-negative");
    if (level > 7) throw SizeError("icosphere level exceeds guard (max 7)");
    ControlMesh m = make_icosahedron();
    for (int l = 0; l < level; ++l) m = subdivide_midpoint(m);
    for (auto& v : m.vertices) v.normalize();
    build_patch_tables(m);
    return m;
}

int euler_characteristic(const ControlMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
    return mesh.n_vertices() - static_cast<int>(edges.size()) + mesh.n_triangles();
}

namespace {

// Directed edge (a,b) -> (triangle, corner index of a).
using EdgeMap = std::map<std::pair<int, int>, std::pair<int, int>>;

EdgeMap build_edge_map(const ControlMesh& mesh) {
    EdgeMap em;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k) {
            auto key = std::make_pair(tri[k], tri[(k + 1) % 3]);
            if (tri[k] == tri[(k + 1) % 3])
                throw TopologyError("degenerate edge in triangle");
            if (!em.emplace(key, std::make_pair(t, k)).second)
                throw TopologyError("directed edge repeated: inconsistent orientation");
        }
    }
    for (const auto& [key, val] : em) {
        (void)val;
        if (!em.count({key.second, key.first}))
            throw TopologyError("boundary edge found: surface is not closed");
    }
    return em;
}

std::vector<int> ordered_ring(const ControlMesh& mesh, const EdgeMap& em, int v,
                              int first_nbr) {
    // CCW walk: in triangle (v, a, b) the sector runs a -> b, and the next
    // sector starts at b.
    std::vector<int> ring;
    int cur = first_nbr;
    do {
        ring.push_back(cur);
        auto it = em.find({v, cur});
        if (it == em.end()) throw TopologyError("broken ring walk");
        const auto& tri = mesh.triangles[it->second.first];
        cur = tri[(it->second.second + 2) % 3];
        if (static_cast<int>(ring.size()) > mesh.n_vertices())
            throw TopologyError("non-manifold vertex ring");
    } while (cur != first_nbr);
    return ring;
}

// Positions of x in ring (ring is cyclic).
int ring_pos(const std::vector<int>& ring, int x) {
    for (int i = 0; i < static_cast<int>(ring.size()); ++i)
        if (ring[i] == x) return i;
    throw TopologyError("vertex not found in ring");
}

PatchTopology build_patch(const ControlMesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    PatchTopology patch;
    const int c0 = tri[0], c1 = tri[1], c2 = tri[2];
    const int n0 = mesh.vertex_valences[c0];
    const int n1 = mesh.vertex_valences[c1];
    const int n2 = mesh.vertex_valences[c2];
    patch.corner_valence = {n0, n1, n2};
    patch.regular = (n0 == 6 && n1 == 6 && n2 == 6);

    // canonical candidate list (may contain repeats on tiny meshes)
    std::vector<int> canon = {c0, c1, c2};
    const auto& r0 = mesh.vertex_rings[c0];
    const auto& r1 = mesh.vertex_rings[c1];
    const auto& r2 = mesh.vertex_rings[c2];
    auto at = [](const std::vector<int>& r, int i) {
        const int n = static_cast<int>(r.size());
        return r[((i % n) + n) % n];
    };
    const int p01 = ring_pos(r0, c1);
    if (at(r0, p01 + 1) != c2) throw TopologyError("ring order inconsistent with triangle");
    canon.push_back(at(r0, p01 - 1));              // w01
    const int p12 = ring_pos(r1, c2);
    canon.push_back(at(r1, p12 - 1));              // w12
    canon.push_back(at(r0, p01 + 2));              // w02
    for (int k = 0; k < n0 - 4; ++k) canon.push_back(at(r0, p01 + 3 + k));  // fan c0
    const int p0in1 = ring_pos(r1, c0);
    for (int k = 0; k < n1 - 4; ++k) canon.push_back(at(r1, p0in1 + 2 + k)); // fan c1
    const int p1in2 = ring_pos(r2, c1);
    for (int k = 0; k < n2 - 4; ++k) canon.push_back(at(r2, p1in2 + 2 + k)); // fan c2

    // unique points, order of first appearance
    std::map<int, int> local;
    for (int g : canon) {
        if (!local.count(g)) {
            local.emplace(g, static_cast<int>(patch.points.size()));
            patch.points.push_back(g);
        }
    }

    // local faces: every triangle incident to a corner, central first
    patch.faces.push_back({0, 1, 2});
    std::set<std::array<int, 3>> seen;
    seen.insert({0, 1, 2});
    auto add_face = [&](const std::array<int, 3>& gtri) {
        std::array<int, 3> lf;
        for (int k = 0; k < 3; ++k) {
            auto it = local.find(gtri[k]);
            if (it == local.end()) return;  // touches vertices outside patch support
            lf[k] = it->second;
        }
        // canonical rotation (smallest first) to dedupe while keeping winding
        int s = 0;
        for (int k = 1; k < 3; ++k)
            if (lf[k] < lf[s]) s = k;
        std::array<int, 3> rot = {lf[s], lf[(s + 1) % 3], lf[(s + 2) % 3]};
        if (seen.insert(rot).second) patch.faces.push_back(rot);
    };
    for (int c : {c0, c1, c2}) {
        const auto& ring = mesh.vertex_rings[c];
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i)
            add_face({c, ring[i], ring[(i + 1) % n]});
    }
    return patch;
}

} // namespace

void build_patch_tables(ControlMesh& mesh) {
    if (euler_characteristic(mesh) != 2)
        throw TopologyError("mesh is not a closed genus-0 surface");
    const EdgeMap em = build_edge_map(mesh);

    const int nv = mesh.n_vertices();
    mesh.vertex_rings.assign(nv, {});
    mesh.vertex_valences.assign(nv, 0);
    std::vector<int> first_nbr(nv, -1);
    for (int t = 0; t < mesh.n_triangles(); ++t)
        for (int k = 0; k < 3; ++k) {
            const int v = mesh.triangles[t][k];
            if (first_nbr[v] < 0) first_nbr[v] = mesh.triangles[t][(k + 1) % 3];
        }
    for (int v = 0; v < nv; ++v) {
        if (first_nbr[v] < 0) throw TopologyError("isolated vertex");
        mesh.vertex_rings[v] = ordered_ring(mesh, em, v, first_nbr[v]);
        mesh.vertex_valences[v] = static_cast<int>(mesh.vertex_rings[v].size());
        if (mesh.vertex_valences[v] < 3) throw TopologyError("vertex valence < 3");
    }

    mesh.tri_neighbors.assign(mesh.n_triangles(), {-1, -1, -1});
    for (int t = 0; t < mesh.n_triangles(); ++t)
        for (int k = 0; k < 3; ++k) {
            const auto& tri = mesh.triangles[t];
            auto it = em.find({tri[(k + 1) % 3], tri[k]});
            mesh.tri_neighbors[t][k] = it->second.first;
        }

    mesh.patches.clear();
    mesh.patches.reserve(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) mesh.patches.push_back(build_patch(mesh, t));
}

} // namespace memrod
