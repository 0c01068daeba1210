#include "affsurf/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affsurf/body_ops.hpp"
#include "affsurf/rng.hpp"

namespace affsurf {

ConvexScalarFunction::ConvexScalarFunction(std::function<double(double)> f, double lo, double hi)
    : f_(std::move(f)), lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw std::invalid_argument("ConvexScalarFunction: empty interval");
    Rng rng(0x434f4e56);  // fixed probe stream
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi);
        double m = 0.5 * (a + b);
        double scale = std::max({1.0, std::abs(f_(a)), std::abs(f_(b))});
        if (f_(m) > 0.5 * (f_(a) + f_(b)) + 1e-12 * scale)
            throw std::invalid_argument("ConvexScalarFunction: midpoint convexity violated");
    }
}

namespace {

// one-sided derivative with Richardson refinement on a geometric ladder
double one_sided(const ConvexScalarFunction& f, double x, double dir, double room) {
    double h0 = std::min(1e-2, 0.25 * room);
    double prev = 0.0, extr = 0.0;
    bool have_prev = false;
    double f0 = f(x);
    for (int k = 0; k < 40; ++k) {
        double h = h0 * std::pow(0.5, k);
        if (h < 1e-14) break;
        double q = (f(x + dir * h) - f0) / (dir * h);
        if (have_prev) {
            // quotient ~ d + c h for convex f; eliminate the linear term
            double e = 2.0 * q - prev;
            if (k > 2 && std::abs(e - extr) < 1e-11 * (1.0 + std::abs(e))) return e;
            extr = e;
        }
        prev = q;
        have_prev = true;
    }
    return extr;
}

}  // namespace

std::pair<double, double> subdifferential_1d(const ConvexScalarFunction& f, double x) {
    if (!(x > f.lo() && x < f.hi()))
        throw std::invalid_argument("subdifferential_1d: x must be interior");
    double room_l = x - f.lo(), room_r = f.hi() - x;
    double dm = one_sided(f, x, -1.0, room_l);
    double dp = one_sided(f, x, +1.0, room_r);
    if (dm > dp + 1e-9)
        throw std::runtime_error("subdifferential_1d: non-convexity detected (d- > d+)");
    // subgradient inequality spot check
    Rng rng(0x53554244);
    for (int i = 0; i < 50; ++i) {
        double y = rng.uniform(f.lo(), f.hi());
        for (double g : {dm, dp}) {
            if (f(x) + g * (y - x) > f(y) + 1e-10)
                throw std::runtime_error("subdifferential_1d: non-convexity detected");
        }
    }
    return {std::min(dm, dp), dp};
}

HessianEstimate generalized_hessian_1d(const ConvexScalarFunction& f, double x0,
                                       const std::vector<double>& probe_radii) {
    if (probe_radii.empty()) throw std::invalid_argument("generalized_hessian_1d: no radii");
    auto sub0 = subdifferential_1d(f, x0);
    double d0 = 0.5 * (sub0.first + sub0.second);
    // least squares of (df(x0+s) - d0) against s over all probes
    double sxy = 0.0, sxx = 0.0;
    std::vector<std::pair<double, double>> probes;  // (s, df)
    for (double r : probe_radii) {
        for (double s : {r, -r}) {
            if (x0 + s <= f.lo() || x0 + s >= f.hi()) continue;
            auto sd = subdifferential_1d(f, x0 + s);
            double d = 0.5 * (sd.first + sd.second);
            probes.push_back({s, d});
            sxy += (d - d0) * s;
            sxx += s * s;
        }
    }
    if (probes.empty()) throw std::invalid_argument("generalized_hessian_1d: probes out of domain");
    double a = sxy / sxx;
    HessianEstimate est;
    est.matrix = Mat::Constant(1, 1, a);
    if (a < -1e-8) throw std::runtime_error("generalized_hessian_1d: negative estimate (convexity)");
    // deviation ||df(x) - df(x0) - a (x - x0)|| per radius
    double r_min = 1e300;
    est.residual = 0.0;
    for (double r : probe_radii) {
        double dev = 0.0;
        for (const auto& [s, d] : probes)
            if (std::abs(std::abs(s) - r) < 1e-15 * (1.0 + r))
                dev = std::max(dev, std::abs(d - d0 - a * s));
        est.trace.push_back({r, dev});
        if (r < r_min) {
            r_min = r;
            est.residual = dev;
        }
    }
    return est;
}

double curvature_graph(const Vec& gradient, const Mat& hessian) {
    const int d = static_cast<int>(gradient.size());
    if (hessian.rows() != d || hessian.cols() != d)
        throw std::invalid_argument("curvature_graph: dimension mismatch");
    if ((hessian - hessian.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("curvature_graph: hessian not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(hessian);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::runtime_error("curvature_graph: hessian not PSD");
    double det = hessian.determinant();
    if (det < -1e-8) throw std::runtime_error("curvature_graph: negative determinant");
    det = std::max(det, 0.0);
    return det / std::pow(1.0 + gradient.squaredNorm(), 0.5 * (d + 2));
}

double kappa_cofactor(const SmoothEval& e, int dim) {
    double gn = e.grad.norm();
    if (gn < 1e-12) throw std::runtime_error("kappa: zero gradient (exception set)");
    Mat cof = adjugate(e.hess);  // adjugate == cofactor for symmetric matrices
    double num = std::abs(double(e.grad.transpose() * cof * e.grad));
    return num / std::pow(gn, dim + 1);
}

double kappa_bordered(const SmoothEval& e, int dim) {
    double gn = e.grad.norm();
    if (gn < 1e-12) throw std::runtime_error("kappa: zero gradient (exception set)");
    Mat b(dim + 1, dim + 1);
    b.topLeftCorner(dim, dim) = e.hess;
    b.topRightCorner(dim, 1) = e.grad;
    b.bottomLeftCorner(1, dim) = e.grad.transpose();
    b(dim, dim) = 0.0;
    return std::abs(b.determinant()) / std::pow(gn, dim + 1);
}

double curvature_implicit(const ConvexBody& b, const Vec& x) {
    const SmoothBody* s = b.as_smooth();
    if (!s) {
        // boundary point of an intersection body: use the active smooth part
        if (auto* ib = b.as_intersection()) {
            for (const auto& part : ib->smooth_parts) {
                if (std::abs(part.value(x)) <= 1e-9) {
                    SmoothEval e = part.eval(x);
                    return kappa_cofactor(e, b.dim());
                }
            }
            return 0.0;  // on a flat cut
        }
        throw std::invalid_argument("curvature_implicit: needs a smooth body");
    }
    if (std::abs(s->value(x)) > 1e-9)
        throw std::invalid_argument("curvature_implicit: point not on boundary (|F| > 1e-9)");
    SmoothEval e = s->eval(x);
    return kappa_cofactor(e, b.dim());
}

double bpn_curvature(double p, const Vec& x) {
    const int n = static_cast<int>(x.size());
    if (!(p > 1.0)) throw std::invalid_argument("bpn_curvature: need p > 1");
    double sum_p = x.array().abs().pow(p).sum();
    if (std::abs(sum_p - 1.0) > 1e-9)
        throw std::invalid_argument("bpn_curvature: point not on the boundary of B_p");
    double prod = 1.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double a = std::abs(x[i]);
        if (a == 0.0) throw std::invalid_argument("bpn_curvature: coordinate zero (exception set)");
        prod *= std::pow(a, p - 2.0);
        sum2 += std::pow(a, 2.0 * p - 2.0);
    }
    return std::pow(p - 1.0, n - 1) * prod / std::pow(sum2, 0.5 * (n + 1));
}

namespace {

// centered algebraic ellipse fit y^T Q y = 1 in d dims (d = 1 or 2);
// residual is the geometric distance of the worst point to the fitted curve
void fit_centered_quadric(const std::vector<Vec>& ys, int d, Mat& q, double& residual) {
    if (d == 1) {
        double s2 = 0.0, s4 = 0.0;
        for (const auto& y : ys) {
            double y2 = y[0] * y[0];
            s2 += y2;
            s4 += y2 * y2;
        }
        q = Mat::Constant(1, 1, s2 / s4);  // LS of q*y^2 = 1
    } else {
        // unknowns (q11, q22, q12): rows [y1^2, y2^2, 2 y1 y2] . u = 1
        Mat a(static_cast<int>(ys.size()), 3);
        Vec rhs = Vec::Ones(static_cast<int>(ys.size()));
        for (std::size_t i = 0; i < ys.size(); ++i) {
            a(static_cast<int>(i), 0) = ys[i][0] * ys[i][0];
            a(static_cast<int>(i), 1) = ys[i][1] * ys[i][1];
            a(static_cast<int>(i), 2) = 2.0 * ys[i][0] * ys[i][1];
        }
        Vec u = (a.transpose() * a).ldlt().solve(a.transpose() * rhs);
        q.resize(2, 2);
        q << u[0], u[2], u[2], u[1];
    }
    residual = 0.0;
    for (const auto& y : ys) {
        double alg = std::abs(double(y.transpose() * q * y) - 1.0);
        double grad = 2.0 * (q * y).norm();
        residual = std::max(residual, alg / std::max(grad, 1e-30));
    }
}

}  // namespace

DupinResult dupin_curvature(const ConvexBody& k, const Vec& x0, const Vec& normal,
                            const std::vector<double>& deltas, int slice_rays) {
    const int n = k.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("dupin_curvature: n in {2,3}");
    Vec nrm = unit(normal);
    // tangent frame
    std::vector<Vec> frame;
    if (n == 2) {
        frame.push_back(perp2(nrm));
    } else {
        Vec3 z(nrm[0], nrm[1], nrm[2]);
        Vec3 t1 = z.unitOrthogonal();
        Vec3 t2 = z.cross(t1);
        frame.push_back(vec3(t1.x(), t1.y(), t1.z()));
        frame.push_back(vec3(t2.x(), t2.y(), t2.z()));
    }
    double diam_reach = 4.0 * (1.0 + x0.norm());
    DupinResult out;
    out.kappa = 0.0;
    out.cylinder = false;
    for (double delta : deltas) {
        DupinSlice slice;
        slice.delta = delta;
        Vec c0 = x0 - delta * nrm;
        if (!contains(k, c0, 0.0))
            throw std::runtime_error("dupin_curvature: slice center outside body (bad normal?)");
        const int rays = (n == 2) ? 2 : slice_rays;
        for (int r = 0; r < rays; ++r) {
            Vec dir;
            if (n == 2)
                dir = (r == 0) ? frame[0] : Vec(-frame[0]);
            else {
                double phi = 2.0 * kPi * (r + 0.5) / rays;
                dir = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
            }
            // boundary crossing along dir from c0 within the slice plane
            double lo = 0.0, hi = diam_reach;
            auto inside = [&](double s) { return contains(k, Vec(c0 + s * dir), 0.0); };
            int guard = 0;
            while (inside(hi)) {
                hi *= 2.0;
                if (++guard > 60) throw std::runtime_error("dupin_curvature: unbounded slice");
            }
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                if (inside(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            double s = 0.5 * (lo + hi);
            Vec y(n - 1);
            for (int d = 0; d < n - 1; ++d) y[d] = s * dir.dot(frame[d]);
            slice.rescaled_points.push_back(y / std::sqrt(2.0 * delta));
        }
        Mat q;
        fit_centered_quadric(slice.rescaled_points, n - 1, q, slice.fit_residual);
        Eigen::SelfAdjointEigenSolver<Mat> es(q);
        double diam = 0.0;
        for (const auto& y : slice.rescaled_points) diam = std::max(diam, 2.0 * y.norm());
        slice.cylinder = false;
        for (int i = 0; i < n - 1; ++i) {
            double lam = es.eigenvalues()[i];
            if (lam < 1e-6) {  // squared semi-axis beyond 1e6: elliptic cylinder
                slice.cylinder = true;
            }
            slice.semi_axes.push_back(lam > 0 ? 1.0 / std::sqrt(lam) : 1e300);
        }
        if (slice.fit_residual > 1e-3 * std::max(1.0, diam)) slice.cylinder = true;
        slice.kappa = slice.cylinder ? 0.0 : q.determinant();
        out.trace.push_back(slice);
    }
    const DupinSlice& last = out.trace.back();
    out.kappa = last.kappa;
    out.cylinder = last.cylinder;
    return out;
}

}  // namespace affsurf
