#pragma once

#include <string>
#include <utility>

#include "affsurf/bodies.hpp"
#include "affsurf/body_ops.hpp"

namespace affsurf {

struct AsaResult {
    double value = 0.0;
    std::string method;      // "quadrature" | "closed_form" | "definitional_zero"
    int resolution = 0;
    double error_estimate = 0.0;
};

struct AffineMap {
    Mat matrix;
    Vec translation;
};

// as(K) = int over the boundary of kappa^{1/(n+1)} d mu. Polytopes are
// exactly 0. Smooth and intersection bodies integrate over a radial
// parametrization; in n = 2, panels between declared singular directions
// (and piece seams) are geometrically graded, which absorbs the integrable
// curvature singularities of B_p bodies.
AsaResult affine_surface_area(const ConvexBody& k, const SphereGrid& grid);

// 2^n (p-1)^{(n-1)/(n+1)} Gamma(a)^n / (p^{n-1} Gamma(n a)),
// a = (p+n-1)/((n+1) p).
double bpn_asa_closed_form(double p, int n);

// |det T|^{(n-1)/(n+1)} * as(K).
double affine_image_asa(double as_k, const AffineMap& t, int n);

struct IsoperimetricResult {
    double as_value;
    double bound;   // n vol(B)^{2/(n+1)} vol(K)^{(n-1)/(n+1)}
    double ratio;   // as / bound, in [0, 1] up to tolerance
};
IsoperimetricResult isoperimetric_bound(const ConvexBody& k, const SphereGrid& grid);

// K = E cut at x1 <= a, C = E cut at x1 >= b with b < 0 < a, so that
// K u C = E and K n C is the slab piece.
struct SlabDecomposition {
    ConvexBody whole;
    ConvexBody k;
    ConvexBody c;
    ConvexBody kc;
};
SlabDecomposition make_slab_decomposition(const ConvexBody& e, double a, double b);

// as(K u C) + as(K n C) - as(K) - as(C); zero for the valuation.
double valuation_defect(const SlabDecomposition& slab, const SphereGrid& grid);

// Midpoint probe that the union of two bodies is convex; throws
// union-not-convex otherwise.
void check_union_convex(const ConvexBody& k, const ConvexBody& c, std::uint64_t seed = 99);

// n^{1/(n+1)} (vol(L)^{1/n} int rho_L^{-1} d sigma_K)^{n/(n+1)};
// an upper bound for as(K) for every admissible L, equality at K = L = ball.
double lutwak_functional(const ConvexBody& k, const ConvexBody& l, const SphereGrid& grid);

// as(K)^{n+1} / (n^{n+1} vol(B^n)^n vol(B^{n-1})^{-n} vol(Pi K)) <= 1.
double petty_ratio(const ConvexBody& k, const SphereGrid& grid, std::int64_t samples = 100000,
                   std::uint64_t seed = 1);

// K intersected with the centered ball of radius c sqrt(n).
ConvexBody ghsw_candidate(const ConvexBody& k, double c);

// Both sides of the Steiner comparison computed from the boundary graphs
// over the hyperplane orthogonal to u (n = 2 smooth bodies): first is
// as(K), second is as(St_u(K)). Independent of the radial quadrature route.
std::pair<double, double> asa_steiner_pair(const ConvexBody& k, const Vec& u, int base_nodes = 4000);

}  // namespace affsurf
