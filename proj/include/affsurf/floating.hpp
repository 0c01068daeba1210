#pragma once

#include <vector>

#include "affsurf/bodies.hpp"
#include "affsurf/body_ops.hpp"

namespace affsurf {

// Cap-volume solver over a convex polygon. Preprocesses prefix shoelace
// sums and the edge-normal fan, so each cap query costs O(log m).
// Smooth bodies are handled through a fine inscribed boundary polygon.
class PolygonCapSolver {
public:
    explicit PolygonCapSolver(std::vector<Vec2> ccw_vertices);

    double area() const { return area_; }
    const std::vector<Vec2>& vertices() const { return verts_; }

    // support value max <v, xi> and the maximizing vertex index
    double support(const Vec2& xi, int* argmax = nullptr) const;

    // area of { x in P : <x, xi> >= c }
    double cap_area(const Vec2& xi, double c) const;

    // offset c with cap area = t within max(1e-10, 1e-4 t)
    double cap_height(const Vec2& xi, double t) const;

private:
    std::vector<Vec2> verts_;
    std::vector<double> prefix_;       // prefix sums of cross(v_i, v_{i+1})
    std::vector<double> normal_angle_; // edge outward normal angles, increasing
    double area_;
    int argmax_fan(double angle) const;
};

struct FloatingBodyResult {
    double t;
    HPolytope body;               // intersection of the grid halfspaces
    std::vector<Vec2> polygon;    // its vertex form (n = 2)
    double deficit;               // vol(K) - vol(K_t)
    double normalized;            // deficit / t^{2/(n+1)}
    double inradius;              // certificate that K_t has interior
};

// offset c with vol(K n { <x,xi> >= c }) = t, by monotone bisection.
double cap_height(const ConvexBody& k, const Vec& xi, double t, int resolution = 131072);

// Convex floating body K_t as the intersection of { <x,xi> <= cap_height }
// over the grid directions augmented with the facet normals of polytope
// bodies (without them the outer approximation bulges past the corners).
FloatingBodyResult floating_body(const ConvexBody& k, double t, const SphereGrid& grid,
                                 int resolution = 131072);

struct FloatingEstimate {
    double t;
    double deficit;
    double normalized;
    double asa_estimate;  // 2 (vol(B^{n-1})/(n+1))^{2/(n+1)} * deficit / t^{2/(n+1)}
};

// Floating-body limit estimates converging to as(K) as t -> 0.
std::vector<FloatingEstimate> asa_via_floating(const ConvexBody& k,
                                               const std::vector<double>& t_sequence,
                                               const SphereGrid& grid, int resolution = 131072);

// Largest rho with B(x - rho N(x), rho) inside K: exact from the facet
// constraints for polytopes (0 at vertices/edges), support-grid bound plus
// local refinement for smooth bodies.
double rolling_radius(const ConvexBody& k, const Vec& x, const SphereGrid& grid);

struct RollingProfile {
    std::vector<double> t_grid;
    std::vector<double> measure;     // m(t) = H_{n-1}{ x : r(x) >= t }
    std::vector<double> stderr_m;
    std::vector<double> reference;   // (1-t)^{n-1} vol_{n-1}(bd K)
    double boundary_area;
};

// Boundary measure profile of the rolling function for K containing the
// unit ball; the reference curve is the optimal lower bound.
RollingProfile sw1_profile(const ConvexBody& k, const std::vector<double>& t_grid,
                           std::int64_t samples, const SphereGrid& grid, std::uint64_t seed);

// Area-weighted uniform boundary sample of a polytope, or grid-Jacobian
// weighted boundary points of a smooth body.
std::vector<Vec> sample_boundary_uniform(const ConvexBody& k, std::int64_t count,
                                         const SphereGrid& grid, std::uint64_t seed);

double boundary_area(const ConvexBody& k, const SphereGrid& grid);

}  // namespace affsurf
