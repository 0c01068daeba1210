#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "affsurf/bodies.hpp"
#include "affsurf/rng.hpp"

namespace affsurf {

// h_K(u) = max over K of <x, u>. Exact for polytopes (vertex max) and for
// smooth bodies with a closed-form support; otherwise solved by grid scan
// plus golden-section refinement of the radial parametrization.
double support(const ConvexBody& k, const Vec& u);

// rho_K(xi) = max { s >= 0 : s xi in K }; origin must be interior.
double radial(const ConvexBody& k, const Vec& xi);

// Membership with tolerance in the representation's natural scale.
bool contains(const ConvexBody& k, const Vec& x, double tol = 1e-12);

// Outward unit normal and curvature data at the boundary point hit by the
// ray through xi; piece = index of the active smooth part (-1: flat).
struct BoundaryHit {
    Vec x;
    Vec normal;
    double rho;
    double jacobian;   // rho^{n-1} / <xi, N>
    double kappa;      // generalized Gauss-Kronecker curvature (0 on flat pieces)
    int piece;
};
BoundaryHit boundary_hit(const ConvexBody& k, const Vec& xi);

// Polar body: vertices map to halfspaces and vice versa. Origin must be
// strictly interior.
ConvexBody polar_polytope(const ConvexBody& p);

struct Moments {
    double volume;
    Vec centroid;
    double stderr_volume;  // 0 for the exact path
    double acceptance;     // rejection-sampling acceptance rate (1 for exact)
    std::string method;    // "exact" | "monte_carlo"
};

// Exact (triangulation) for polytopes in n <= 3; bounding-box rejection
// Monte Carlo with reported standard error otherwise.
Moments moments(const ConvexBody& k, std::int64_t samples = 200000, std::uint64_t seed = 1);

// Quadrature moments for bodies with a radial function about the origin:
// vol = (1/n) sum w rho^n, centroid = sum w rho^{n+1} xi / ((n+1) vol).
Moments moments_quadrature(const ConvexBody& k, const SphereGrid& grid);

// Precise volume: exact for polytopes and bodies with closed forms,
// radial quadrature otherwise.
double volume(const ConvexBody& k);

enum class DistanceMode { Hausdorff, SymDiff };

// Hausdorff via sup-norm of support difference on the grid (exact identity
// for convex bodies); symmetric difference via Monte Carlo.
double body_distance(const ConvexBody& c, const ConvexBody& k, DistanceMode mode,
                     const SphereGrid& grid, std::int64_t samples = 200000,
                     std::uint64_t seed = 1, double* stderr_out = nullptr);

// Convex hull of pairwise vertex sums.
ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q);

// Atomic surface area measure of a polytope: one (outward normal, facet
// measure) atom per facet.
struct SurfaceMeasureAtoms {
    std::vector<std::pair<Vec, double>> atoms;
    double total_mass() const;
};
SurfaceMeasureAtoms surface_measure(const ConvexBody& p);

// V_1(K, C) = (1/n) int h_C d sigma_K. K polytope (atomic) or smooth
// (grid pushforward of the boundary measure); C any body with support.
double mixed_volume_v1(const ConvexBody& k, const ConvexBody& c, const SphereGrid& grid);

// Support of the projection body: vol_{n-1} of the shadow orthogonal to xi.
// Exact width in n = 2; Monte Carlo in n = 3.
double projection_body_support(const ConvexBody& k, const Vec& xi, std::int64_t samples = 100000,
                               std::uint64_t seed = 1, double* stderr_out = nullptr);

struct SteinerResult {
    ConvexBody body;
    double volume_before;
    double volume_after;
    bool coarse_warning;  // волume drift above 0.5%
};

// Chord-by-chord reflection about the hyperplane through 0 orthogonal to u.
// Exact (breakpoint) construction for polygons; sampled otherwise.
SteinerResult steiner_symmetrize(const ConvexBody& k, const Vec& u, int resolution = 512);

// 2D convex polygon in CCW order for a body (polytopes exact, smooth bodies
// sampled on the boundary at `resolution` angles).
std::vector<Vec2> boundary_polygon(const ConvexBody& k, int resolution);

// Chord { y : base + y*u in K } endpoints [lo, hi], or nullopt if the line
// misses the body. Works for any representation via golden + bisection.
std::optional<std::pair<double, double>> line_chord(const ConvexBody& k, const Vec& base,
                                                    const Vec& u, double reach);

}  // namespace affsurf
