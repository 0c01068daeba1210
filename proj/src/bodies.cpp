#include "affsurf/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace affsurf {

namespace {

Vec2 to2(const Vec& v) { return Vec2(v[0], v[1]); }
Vec3 to3(const Vec& v) { return Vec3(v[0], v[1], v[2]); }
Vec from2(const Vec2& v) { return vec2(v.x(), v.y()); }
Vec from3(const Vec3& v) { return vec3(v.x(), v.y(), v.z()); }

void check_unit(const Vec& n) {
    if (std::abs(n.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("halfspace normal must be unit length");
}

}  // namespace

// ------------------------------------------------------------ HPolytope

HPolytope::HPolytope(std::vector<Halfspace> hs, int dim) : hs_(std::move(hs)), dim_(dim) {
    if (hs_.empty()) throw std::invalid_argument("HPolytope: empty halfspace list");
    if (dim_ < 2 || dim_ > 3)
        throw std::invalid_argument("HPolytope: exact polytope geometry restricted to n in {2,3}");
    for (auto& h : hs_) {
        if (static_cast<int>(h.normal.size()) != dim_)
            throw std::invalid_argument("HPolytope: dimension mismatch");
        check_unit(h.normal);
    }
    // interior point: average of a feasible sample -- use Chebyshev-like
    // iteration: start from 0 shifted into feasibility by subgradient steps.
    Vec x = Vec::Zero(dim_);
    for (int it = 0; it < 2000; ++it) {
        double worst = -1e300;
        int wi = -1;
        for (std::size_t i = 0; i < hs_.size(); ++i) {
            double s = hs_[i].normal.dot(x) - hs_[i].offset;
            if (s > worst) {
                worst = s;
                wi = static_cast<int>(i);
            }
        }
        if (worst < 0) break;
        x -= (worst + 1e-3 * (std::abs(worst) + 1.0)) * hs_[wi].normal;
        if (it == 1999) throw std::invalid_argument("HPolytope: empty interior");
    }
    // margin-improving pass: move toward centroid of active set complement
    if (dim_ == 2) {
        std::vector<Vec2> ns(hs_.size());
        std::vector<double> cs(hs_.size());
        for (std::size_t i = 0; i < hs_.size(); ++i) {
            ns[i] = to2(hs_[i].normal);
            cs[i] = hs_[i].offset;
        }
        auto vs = halfplane_intersection(ns, cs, to2(x));
        if (vs.size() < 3) throw std::invalid_argument("HPolytope: degenerate (empty interior)");
        for (const auto& v : vs) verts_.push_back(from2(v));
        double area;
        Vec2 cen;
        polygon_moments(vs, area, cen);
        if (area <= 1e-15) throw std::invalid_argument("HPolytope: degenerate (zero area)");
        interior_ = from2(cen);
    } else {
        std::vector<Vec3> ns(hs_.size());
        std::vector<double> cs(hs_.size());
        for (std::size_t i = 0; i < hs_.size(); ++i) {
            ns[i] = to3(hs_[i].normal);
            cs[i] = hs_[i].offset;
        }
        auto vs = halfspace_intersection_3d(ns, cs, to3(x));
        if (vs.size() < 4) throw std::invalid_argument("HPolytope: degenerate");
        Vec3 cen = Vec3::Zero();
        for (const auto& v : vs) {
            verts_.push_back(from3(v));
            cen += v;
        }
        interior_ = from3(cen / static_cast<double>(vs.size()));
    }
    // boundedness: every vertex finite (halfplane_intersection throws when
    // unbounded because the dual hull degenerates); double-check magnitudes
    for (const auto& v : verts_)
        if (!v.allFinite() || v.norm() > 1e12)
            throw std::invalid_argument("HPolytope: unbounded");
}

// ------------------------------------------------------------ VPolytope

VPolytope::VPolytope(std::vector<Vec> verts, int dim) : dim_(dim) {
    if (verts.empty()) throw std::invalid_argument("VPolytope: empty vertex list");
    for (auto& v : verts)
        if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("VPolytope: dim mismatch");
    if (dim == 2) {
        std::vector<Vec2> p2;
        p2.reserve(verts.size());
        for (const auto& v : verts) p2.push_back(to2(v));
        auto h = hull2d(p2);
        if (h.size() < 3) {  // lower-dimensional: keep points, no facets
            verts_ = std::move(verts);
            return;
        }
        for (const auto& v : h) verts_.push_back(from2(v));
        const std::size_t m = h.size();
        for (std::size_t i = 0; i < m; ++i) {
            Vec2 e = h[(i + 1) % m] - h[i];
            Vec2 n(e.y(), -e.x());
            double nn = n.norm();
            if (nn < 1e-14) continue;
            n /= nn;
            facets_.push_back({from2(n), n.dot(h[i])});
        }
    } else if (dim == 3) {
        std::vector<Vec3> p3;
        p3.reserve(verts.size());
        for (const auto& v : verts) p3.push_back(to3(v));
        Hull3D h = hull3d(p3);
        if (h.degenerate) {
            verts_ = std::move(verts);
            return;
        }
        // reduce to extreme points
        std::vector<char> used(p3.size(), 0);
        for (const auto& f : h.faces)
            for (int a : f) used[a] = 1;
        for (std::size_t i = 0; i < p3.size(); ++i)
            if (used[i]) verts_.push_back(from3(p3[i]));
        for (const auto& [n, area] : h.merged_facets()) {
            // offset from any incident vertex: use support over vertices
            double off = -1e300;
            for (const auto& v : verts_) off = std::max(off, n.dot(to3(v)));
            facets_.push_back({from3(n), off});
        }
    } else {
        // generic dimension: keep the points, no facet structure
        verts_ = std::move(verts);
    }
}

// ------------------------------------------------------------ StarBody

StarBody::StarBody(SphereGrid grid, std::vector<double> rho)
    : grid_(std::move(grid)), rho_(std::move(rho)) {
    if (grid_.dim != 2) throw std::invalid_argument("StarBody: only n = 2 supported");
    if (rho_.size() != grid_.size()) throw std::invalid_argument("StarBody: size mismatch");
    for (double r : rho_)
        if (!(r > 0.0)) throw std::invalid_argument("StarBody: radial values must be positive");
}

double StarBody::radial(const Vec& xi) const {
    // periodic linear interpolation in the angle; grid angles are
    // theta_k = 2 pi (k + 1/2) / N
    const int n = static_cast<int>(rho_.size());
    double th = std::atan2(xi[1], xi[0]);
    if (th < 0) th += 2.0 * kPi;
    double u = th * n / (2.0 * kPi) - 0.5;
    double fl = std::floor(u);
    double frac = u - fl;
    int k0 = static_cast<int>(fl) % n;
    if (k0 < 0) k0 += n;
    int k1 = (k0 + 1) % n;
    return rho_[k0] * (1.0 - frac) + rho_[k1] * frac;
}

// ------------------------------------------------------------ ConvexBody

ConvexBody::ConvexBody(BodyRep rep, std::string name)
    : rep_(std::make_shared<const BodyRep>(std::move(rep))), name_(std::move(name)) {
    dim_ = std::visit(
        [](const auto& r) -> int {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HPolytope> || std::is_same_v<T, VPolytope> ||
                          std::is_same_v<T, StarBody>)
                return r.dim();
            else
                return r.dim;
        },
        *rep_);
}

bool ConvexBody::is_polytope() const { return as_hpoly() != nullptr || as_vpoly() != nullptr; }

// ------------------------------------------------------------ factories

ConvexBody make_ball(int dim, double radius) {
    std::vector<double> ax(dim, radius);
    return make_ellipsoid(ax);
}

ConvexBody make_ellipsoid(const std::vector<double>& semi_axes) {
    const int n = static_cast<int>(semi_axes.size());
    if (n < 2) throw std::invalid_argument("ellipsoid: need dim >= 2");
    for (double a : semi_axes)
        if (!(a > 0)) throw std::invalid_argument("ellipsoid: semi-axes must be positive");
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = semi_axes[i];
    SmoothBody b;
    b.dim = n;
    b.origin_symmetric = true;
    b.bound = a.maxCoeff() * 1.5;
    b.value = [a](const Vec& x) { return (x.array() / a.array()).square().sum() - 1.0; };
    b.eval = [a, n](const Vec& x) {
        SmoothEval e;
        e.value = (x.array() / a.array()).square().sum() - 1.0;
        e.grad = 2.0 * (x.array() / a.array().square()).matrix();
        e.hess = (2.0 * a.array().square().inverse()).matrix().asDiagonal();
        return e;
    };
    b.support = [a](const Vec& u) { return std::sqrt((a.array().square() * u.array().square()).sum()); };
    b.radial = [a](const Vec& xi) {
        return 1.0 / std::sqrt((xi.array() / a.array()).square().sum());
    };
    b.volume_exact = ball_volume(n) * a.prod();
    bool isball = true;
    for (int i = 1; i < n; ++i) isball = isball && semi_axes[i] == semi_axes[0];
    std::string name = isball ? "ball" : "ellipsoid";
    b.name = name;
    return ConvexBody(std::move(b), name);
}

ConvexBody make_bpn(int dim, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("bpn: need p > 1");
    if (dim < 2) throw std::invalid_argument("bpn: need dim >= 2");
    SmoothBody b;
    b.dim = dim;
    b.origin_symmetric = true;
    b.bound = 1.5;
    b.value = [p](const Vec& x) { return x.array().abs().pow(p).sum() - 1.0; };
    b.eval = [p, dim](const Vec& x) {
        SmoothEval e;
        e.value = x.array().abs().pow(p).sum() - 1.0;
        e.grad.resize(dim);
        Vec h(dim);
        for (int i = 0; i < dim; ++i) {
            double ax = std::abs(x[i]);
            double s = (x[i] >= 0) ? 1.0 : -1.0;
            e.grad[i] = p * std::pow(ax, p - 1.0) * s;
            h[i] = p * (p - 1.0) * std::pow(ax, p - 2.0);  // +inf at 0 for p < 2
        }
        e.hess = h.asDiagonal();
        return e;
    };
    double q = p / (p - 1.0);
    b.support = [q](const Vec& u) {
        return std::pow(u.array().abs().pow(q).sum(), 1.0 / q);
    };
    b.radial = [p](const Vec& xi) {
        return std::pow(xi.array().abs().pow(p).sum(), -1.0 / p);
    };
    b.volume_exact = std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), dim) / std::tgamma(1.0 + dim / p);
    if (p != 2.0 && dim == 2)
        b.exception_angles = {0.0, 0.5 * kPi, kPi, 1.5 * kPi};
    b.name = "bpn";
    return ConvexBody(std::move(b), "bpn");
}

ConvexBody make_cube(int dim, double half) {
    std::vector<Halfspace> hs;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e[i] = 1.0;
        hs.push_back({e, half});
        hs.push_back({-e, half});
    }
    return ConvexBody(HPolytope(std::move(hs), dim), "cube");
}

ConvexBody make_simplex(int dim) {
    std::vector<Vec> verts;
    Vec centroid = Vec::Zero(dim);
    verts.push_back(Vec::Zero(dim));
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e[i] = 1.0;
        verts.push_back(e);
        centroid += e;
    }
    centroid /= (dim + 1.0);
    for (auto& v : verts) v -= centroid;
    return ConvexBody(VPolytope(std::move(verts), dim), "simplex");
}

ConvexBody make_vpolytope(std::vector<Vec> verts) {
    if (verts.empty()) throw std::invalid_argument("vpolytope: empty");
    int dim = static_cast<int>(verts.front().size());
    return ConvexBody(VPolytope(std::move(verts), dim), "poly");
}

ConvexBody make_hpolytope(std::vector<Halfspace> hs, int dim) {
    return ConvexBody(HPolytope(std::move(hs), dim), "poly");
}

SmoothBody affine_image_smooth(const SmoothBody& b, const Mat& t, const Vec& shift) {
    double det = t.determinant();
    if (std::abs(det) < 1e-12) throw std::invalid_argument("affine image: singular map");
    Mat tinv = t.inverse();
    SmoothBody out;
    out.dim = b.dim;
    out.convex = b.convex;
    out.origin_symmetric = b.origin_symmetric && shift.norm() == 0.0;
    out.bound = b.bound * t.cwiseAbs().rowwise().sum().maxCoeff() + shift.cwiseAbs().maxCoeff();
    auto value = b.value;
    out.value = [value, tinv, shift](const Vec& x) { return value(tinv * (x - shift)); };
    auto eval = b.eval;
    out.eval = [eval, tinv, shift](const Vec& x) {
        SmoothEval e0 = eval(tinv * (x - shift));
        SmoothEval e;
        e.value = e0.value;
        e.grad = tinv.transpose() * e0.grad;
        e.hess = tinv.transpose() * e0.hess * tinv;
        return e;
    };
    if (b.support) {
        auto sup = b.support;
        Mat tt = t.transpose();
        out.support = [sup, tt, shift](const Vec& u) { return sup(tt * u) + shift.dot(u); };
    }
    if (b.radial && shift.norm() == 0.0) {
        auto rad = b.radial;
        out.radial = [rad, tinv](const Vec& xi) {
            Vec y = tinv * xi;
            double yn = y.norm();
            return rad(y / yn) / yn;
        };
    }
    if (b.volume_exact) out.volume_exact = *b.volume_exact * std::abs(det);
    // exception directions move with the map; recompute angles in n = 2
    if (b.dim == 2 && !b.exception_angles.empty()) {
        for (double th : b.exception_angles) {
            Vec x = t * vec2(std::cos(th), std::sin(th));
            double a = std::atan2(x[1], x[0]);
            if (a < 0) a += 2.0 * kPi;
            out.exception_angles.push_back(a);
        }
        std::sort(out.exception_angles.begin(), out.exception_angles.end());
    }
    out.name = b.name + "_affine";
    return out;
}

}  // namespace affsurf
