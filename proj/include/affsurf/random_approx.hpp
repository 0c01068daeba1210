#pragma once

#include <cstdint>
#include <vector>

#include "affsurf/bodies.hpp"
#include "affsurf/body_ops.hpp"
#include "affsurf/rng.hpp"

namespace affsurf {

// i.i.d. uniform points in K by bounding-box rejection.
std::vector<Vec> sample_interior(const ConvexBody& k, std::int64_t count, std::uint64_t seed,
                                 double* acceptance = nullptr);

// Density on the boundary with respect to the surface measure, tabulated on
// the boundary points of a grid parametrization; integrates to 1.
struct BoundaryDensity {
    SphereGrid grid;
    std::vector<double> values;       // f at the boundary point of each direction
    std::vector<double> jacobians;    // surface element of the parametrization
    double normalization = 1.0;       // int f dmu (1 after normalize())
    void normalize();
};

// Uniform density (f = 1/area).
BoundaryDensity uniform_density(const ConvexBody& k, const SphereGrid& grid);

// f proportional to g(x) on the boundary, normalized.
BoundaryDensity density_from(const ConvexBody& k, const SphereGrid& grid,
                             const std::function<double(const Vec&)>& g);

// f_as = kappa^{1/(n+1)} / as(K); the normalized affine surface area density.
BoundaryDensity asa_density(const ConvexBody& k, const SphereGrid& grid);

// Boundary points distributed per f d mu: inverse CDF along the angle in
// n = 2, rejection against the grid Jacobian in n = 3.
std::vector<Vec> sample_boundary(const ConvexBody& k, const BoundaryDensity& f, std::int64_t count,
                                 std::uint64_t seed);

// Exact convex hull volume; 0 for affinely dependent point sets.
double hull_volume(const std::vector<Vec>& points);

struct DeficitCurve {
    std::vector<std::int64_t> n_values;
    std::vector<double> mean_deficit;
    std::vector<double> stderr_deficit;
    int replicates = 0;
    std::uint64_t seed = 0;
    double slope = 0.0;            // log-log slope of deficit vs N
    double limit_raw = 0.0;        // normalized estimate at the largest N
    double limit_extrapolated = 0.0;
    double limit_stderr = 0.0;
};

// Expected-volume deficit of uniform random polytopes: estimates
// c_n (vol(K) - E(K,N)) / (vol(K)/N)^{2/(n+1)} -> as(K).
DeficitCurve ranpol1_estimate(const ConvexBody& k, const std::vector<std::int64_t>& n_list,
                              int replicates, std::uint64_t seed);

// Single replicate of the interior experiment; keyed by (seed, N, r) so the
// value is independent of evaluation order and worker count.
double ranpol1_replicate_deficit(const ConvexBody& k, double vol_k, std::int64_t n_points,
                                 std::uint64_t seed, int replicate);

// Boundary random polytopes: (vol(K) - E(f,N)) N^{2/(n-1)} ->
// c_n int kappa^{1/(n-1)} f^{-2/(n-1)} dmu.
DeficitCurve ranpol2_estimate(const ConvexBody& k, const BoundaryDensity& f,
                              const std::vector<std::int64_t>& n_list, int replicates,
                              std::uint64_t seed);

// c_n of the interior theorem (evaluated from its Gamma-function formula).
double ranpol1_constant(int n);

// c_n of the boundary theorem; n >= 3 (the printed formula degenerates at
// n = 2 and is not used there).
double ranpol2_constant(int n);

// Reference limit of the boundary theorem for smooth K and density f.
double ranpol2_reference(const ConvexBody& k, const BoundaryDensity& f);

struct BestApproxRow {
    std::int64_t n;
    double deficit;        // pi - (N/2) sin(2 pi / N), inscribed regular N-gon
    double del1_estimate;  // 2 N^2 deficit / (2 pi)^3 -> 1/6
};

// Best approximation of the disk by inscribed polygons (closed form).
std::vector<BestApproxRow> disk_best_approx(const std::vector<std::int64_t>& n_list);

}  // namespace affsurf
