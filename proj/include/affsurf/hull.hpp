#pragma once

#include <array>
#include <vector>

#include "affsurf/linalg.hpp"

namespace affsurf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// ---- 2D ----

// Convex hull in CCW order (Andrew monotone chain). Collinear points dropped.
std::vector<Vec2> hull2d(std::vector<Vec2> pts);

// Signed area (positive for CCW).
double polygon_area(const std::vector<Vec2>& poly);

// Area and centroid; polygon must be simple and CCW.
void polygon_moments(const std::vector<Vec2>& poly, double& area, Vec2& centroid);

// Clip polygon against the halfplane <x, n> <= c.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& n, double c);

// Vertices of the intersection of halfplanes { <normal_i, x> <= offset_i }
// containing `interior` strictly; returned in CCW order. Built from the
// convex hull of the polar dual points, which prunes redundant halfplanes.
std::vector<Vec2> halfplane_intersection(const std::vector<Vec2>& normals,
                                         const std::vector<double>& offsets,
                                         const Vec2& interior);

// ---- 3D ----

struct Hull3D {
    std::vector<Vec3> points;                 // input points
    std::vector<std::array<int, 3>> faces;    // CCW from outside
    double volume = 0.0;
    bool degenerate = false;                  // affinely dependent input

    // Facets merged by outward normal: (unit normal, total area).
    std::vector<std::pair<Vec3, double>> merged_facets(double normal_tol = 1e-9) const;
};

// QuickHull with conflict lists. Handles coplanar faces by thick-plane
// epsilon; degenerate (planar or lower-dimensional) input yields
// degenerate = true and volume 0.
Hull3D hull3d(const std::vector<Vec3>& pts);

// Vertices of the intersection of halfspaces { <n_i, x> <= c_i } in R^3
// containing `interior` strictly (dual hull construction).
std::vector<Vec3> halfspace_intersection_3d(const std::vector<Vec3>& normals,
                                            const std::vector<double>& offsets,
                                            const Vec3& interior);

}  // namespace affsurf
