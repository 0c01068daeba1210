#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "affsurf/bodies.hpp"

namespace affsurf {

// Convex function of one variable on [lo, hi]. Midpoint convexity is probed
// at construction.
class ConvexScalarFunction {
public:
    ConvexScalarFunction(std::function<double(double)> f, double lo, double hi);
    double operator()(double x) const { return f_(x); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::function<double(double)> f_;
    double lo_, hi_;
};

// One-sided derivative pair [d-, d+] by difference quotients with Richardson
// refinement. Convex functions have d- <= d+; a gap marks a kink.
std::pair<double, double> subdifferential_1d(const ConvexScalarFunction& f, double x);

struct HessianEstimate {
    Mat matrix;                                  // symmetric, PSD up to -1e-8
    double residual;                             // deviation in the defining bound at the smallest radius
    std::vector<std::pair<double, double>> trace;  // (radius, max deviation at that radius)
};

// Least-squares slope of subdifferential values against displacement over a
// ladder of probe radii. residual/r -> 0 iff f is twice differentiable in
// the generalized sense at x0.
HessianEstimate generalized_hessian_1d(const ConvexScalarFunction& f, double x0,
                                       const std::vector<double>& probe_radii);

// det(hess) / (1 + |grad|^2)^{(d+2)/2} for a convex graph over R^d.
// hess must be symmetric PSD within 1e-8.
double curvature_graph(const Vec& gradient, const Mat& hessian);

// Gauss-Kronecker curvature from an implicit evaluation: cofactor and
// bordered-determinant forms (cross-checked by tests). Divisor is
// |grad F|^{n+1} for a body in R^n, which the sphere oracle pins down.
double kappa_cofactor(const SmoothEval& e, int dim);
double kappa_bordered(const SmoothEval& e, int dim);

// Curvature of a smooth body at boundary point x (F(x) = 0 within 1e-9).
double curvature_implicit(const ConvexBody& b, const Vec& x);

// Closed form on the boundary of B_p^n; all coordinates must be nonzero.
double bpn_curvature(double p, const Vec& x);

struct DupinSlice {
    double delta;
    std::vector<Vec> rescaled_points;  // tangent-plane coords / sqrt(2 delta)
    std::vector<double> semi_axes;
    double fit_residual;
    double kappa;        // (prod r_i)^{-2}; 0 for the cylinder verdict
    bool cylinder;
};

struct DupinResult {
    double kappa;
    bool cylinder;
    std::vector<DupinSlice> trace;
};

// Slice K at depths Delta below the tangent plane at x0, project onto the
// tangent plane, rescale by 1/sqrt(2 Delta) and fit a centered ellipsoid;
// kappa = (prod r_i)^{-2}, converging to the implicit curvature.
DupinResult dupin_curvature(const ConvexBody& k, const Vec& x0, const Vec& normal,
                            const std::vector<double>& deltas, int slice_rays = 64);

}  // namespace affsurf
