#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace memrod {

/// Ordered control-point support of one triangle.
///
/// `points` lists the union of the corner one-rings in a canonical order:
///   [c0, c1, c2, w01, w12, w02, fan(c0)..., fan(c1)..., fan(c2)...]
/// where w_ij is the apex of the triangle across edge (ci, cj) and each fan
/// runs CCW strictly between the two wings of its corner. Regular patches
/// (all corner valences 6) have exactly 12 points and can be evaluated with
/// the quartic box-spline basis in this order. `faces` is the local
/// triangulation (indices into `points`) of all triangles incident to a
/// corner; faces[0] is the central triangle (0,1,2).
struct PatchTopology {
    std::vector<int> points;
    std::vector<std::array<int, 3>> faces;
    bool regular = false;
    std::array<int, 3> corner_valence = {0, 0, 0};
};

/// Triangulated control net of a closed genus-0 surface with Loop
/// subdivision connectivity. Triangles are CCW as seen from outside.
struct ControlMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> triangles;

    // filled by build_patch_tables()
    std::vector<int> vertex_valences;
    std::vector<std::vector<int>> vertex_rings;         // CCW one-rings
    std::vector<std::array<int, 3>> tri_neighbors;      // across edge (k, k+1)
    std::vector<PatchTopology> patches;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    bool tables_built() const { return !patches.empty(); }

    /// Control positions as an N x 3 matrix (the reference state).
    Eigen::MatrixXd vertex_matrix() const;
};

/// Icosahedron subdivided `level` times, vertices projected to the unit
/// sphere. V = 10*4^level + 2. The two poles are icosahedron vertices, so
/// all twelve valence-5 vertices sit at the poles and the +-26.57 deg
/// latitude rings.
ControlMesh build_icosphere(int level);

/// Validates manifoldness/orientation and fills valences, rings, neighbor
/// and per-triangle patch tables.
void build_patch_tables(ControlMesh& mesh);

/// Euler characteristic V - E + F.
int euler_characteristic(const ControlMesh& mesh);

} // namespace memrod
