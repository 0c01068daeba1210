#include "affsurf/affine_surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affsurf/curvature.hpp"
#include "affsurf/rng.hpp"

namespace affsurf {

namespace {

double asa_integrand(const ConvexBody& k, const Vec& xi) {
    BoundaryHit hit = boundary_hit(k, xi);
    if (hit.kappa <= 0.0) return 0.0;
    return std::pow(hit.kappa, 1.0 / (k.dim() + 1)) * hit.jacobian;
}

// 12-point Gauss-Legendre on [-1, 1]
const double kGlX[12] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                         -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
                         0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
                         0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGlW[12] = {0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
                         0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
                         0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                         0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

template <typename F>
double gl12(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += kGlW[i] * f(mid + half * kGlX[i]);
    return s * half;
}

// integral over [a, b] with geometric grading toward both endpoints;
// handles integrable power singularities at panel boundaries
template <typename F>
double graded_panel(F&& f, double a, double b, int levels) {
    double total = 0.0;
    double m = 0.5 * (a + b);
    for (int side = 0; side < 2; ++side) {
        double end = (side == 0) ? a : b;
        double len = m - end;  // signed
        for (int k = 0; k < levels; ++k) {
            double hi = end + len * std::pow(0.5, k);
            double lo = end + len * std::pow(0.5, k + 1);
            total += (side == 0) ? gl12(f, lo, hi) : gl12(f, hi, lo);
        }
    }
    return total;
}

// seam angles of an intersection body: directions where the active piece
// changes (smooth <-> smooth or smooth <-> flat)
std::vector<double> seam_angles(const ConvexBody& k) {
    const auto* ib = k.as_intersection();
    if (!ib) return {};
    auto piece_at = [&](double th) {
        Vec xi = vec2(std::cos(th), std::sin(th));
        return boundary_hit(k, xi).piece;
    };
    const int scan = 8192;
    std::vector<double> seams;
    int prev = piece_at(2.0 * kPi * 0.5 / scan);
    for (int i = 1; i <= scan; ++i) {
        double th = 2.0 * kPi * ((i % scan) + 0.5) / scan;
        int cur = piece_at(th);
        if (cur != prev) {
            double lo = 2.0 * kPi * (i - 0.5) / scan, hi = 2.0 * kPi * (i + 0.5) / scan;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (piece_at(mid) == prev)
                    lo = mid;
                else
                    hi = mid;
            }
            seams.push_back(std::fmod(0.5 * (lo + hi), 2.0 * kPi));
        }
        prev = cur;
    }
    return seams;
}

double asa_2d(const ConvexBody& k, int resolution, int levels) {
    std::vector<double> cuts;
    if (auto* s = k.as_smooth()) cuts = s->exception_angles;
    if (auto* ib = k.as_intersection()) {
        for (const auto& part : ib->smooth_parts)
            cuts.insert(cuts.end(), part.exception_angles.begin(), part.exception_angles.end());
        auto seams = seam_angles(k);
        cuts.insert(cuts.end(), seams.begin(), seams.end());
    }
    auto f = [&](double th) { return asa_integrand(k, vec2(std::cos(th), std::sin(th))); };
    if (cuts.empty()) {
        KahanSum s;
        for (int i = 0; i < resolution; ++i) s.add(f(2.0 * kPi * (i + 0.5) / resolution));
        return s.value() * 2.0 * kPi / resolution;
    }
    for (auto& c : cuts) {
        c = std::fmod(c, 2.0 * kPi);
        if (c < 0) c += 2.0 * kPi;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-10; }),
               cuts.end());
    KahanSum s;
    const std::size_t m = cuts.size();
    for (std::size_t i = 0; i < m; ++i) {
        double a = cuts[i];
        double b = (i + 1 < m) ? cuts[i + 1] : cuts[0] + 2.0 * kPi;
        if (b - a < 1e-12) continue;
        s.add(graded_panel(f, a, b, levels));
    }
    return s.value();
}

}  // namespace

AsaResult affine_surface_area(const ConvexBody& k, const SphereGrid& grid) {
    AsaResult r;
    r.resolution = grid.param;
    if (k.is_polytope()) {
        r.value = 0.0;
        r.method = "definitional_zero";
        return r;
    }
    if (k.as_star())
        throw std::invalid_argument(
            "affine_surface_area: star bodies without smooth structure are unsupported");
    r.method = "quadrature";
    const int n = k.dim();
    if (n == 2) {
        int levels = 48;
        r.value = asa_2d(k, grid.param, levels);
        double coarse = asa_2d(k, std::max(128, grid.param / 2), levels - 8);
        r.error_estimate = std::abs(r.value - coarse);
        return r;
    }
    KahanSum s;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s.add(grid.weights[i] * asa_integrand(k, grid.dirs[i]));
    r.value = s.value();
    SphereGrid half = grid.refined(0.5);
    KahanSum s2;
    for (std::size_t i = 0; i < half.size(); ++i)
        s2.add(half.weights[i] * asa_integrand(k, half.dirs[i]));
    r.error_estimate = std::abs(r.value - s2.value());
    return r;
}

double bpn_asa_closed_form(double p, int n) {
    if (!(p > 1.0)) throw std::invalid_argument("bpn_asa_closed_form: need p > 1");
    if (n < 2) throw std::invalid_argument("bpn_asa_closed_form: need n >= 2");
    double a = (p + n - 1.0) / ((n + 1.0) * p);
    double log_val = n * std::log(2.0) + ((n - 1.0) / (n + 1.0)) * std::log(p - 1.0) +
                     n * std::lgamma(a) - (n - 1.0) * std::log(p) - std::lgamma(n * a);
    return std::exp(log_val);
}

double affine_image_asa(double as_k, const AffineMap& t, int n) {
    if (as_k < 0.0) throw std::invalid_argument("affine_image_asa: negative input");
    double det = t.matrix.determinant();
    if (std::abs(det) < 1e-12) throw std::invalid_argument("affine_image_asa: singular map");
    return std::pow(std::abs(det), (n - 1.0) / (n + 1.0)) * as_k;
}

IsoperimetricResult isoperimetric_bound(const ConvexBody& k, const SphereGrid& grid) {
    const int n = k.dim();
    IsoperimetricResult r;
    r.as_value = affine_surface_area(k, grid).value;
    double vol = volume(k);
    r.bound = n * std::pow(ball_volume(n), 2.0 / (n + 1)) * std::pow(vol, (n - 1.0) / (n + 1.0));
    r.ratio = r.as_value / r.bound;
    return r;
}

SlabDecomposition make_slab_decomposition(const ConvexBody& e, double a, double b) {
    const SmoothBody* s = e.as_smooth();
    if (!s) throw std::invalid_argument("slab decomposition: needs a smooth body");
    if (!(b < 0.0 && 0.0 < a))
        throw std::invalid_argument("slab decomposition: need b < 0 < a (origin in the slab)");
    const int n = e.dim();
    Vec e1 = Vec::Zero(n);
    e1[0] = 1.0;
    Halfspace below{e1, a};          // x1 <= a
    Halfspace above{Vec(-e1), -b};   // x1 >= b
    IntersectionBody k{{*s}, {below}, n};
    IntersectionBody c{{*s}, {above}, n};
    IntersectionBody kc{{*s}, {below, above}, n};
    return SlabDecomposition{e, ConvexBody(std::move(k), "slab_k"), ConvexBody(std::move(c), "slab_c"),
                             ConvexBody(std::move(kc), "slab_kc")};
}

double valuation_defect(const SlabDecomposition& slab, const SphereGrid& grid) {
    double as_union = affine_surface_area(slab.whole, grid).value;
    double as_inter = affine_surface_area(slab.kc, grid).value;
    double as_k = affine_surface_area(slab.k, grid).value;
    double as_c = affine_surface_area(slab.c, grid).value;
    return as_union + as_inter - as_k - as_c;
}

void check_union_convex(const ConvexBody& k, const ConvexBody& c, std::uint64_t seed) {
    // midpoints of segments between the two bodies must stay in the union
    Rng rng = Rng::stream(seed, 0x554e494fULL);
    const int n = k.dim();
    Vec lo_k(n), hi_k(n), lo_c(n), hi_c(n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        hi_k[i] = support(k, e);
        lo_k[i] = -support(k, Vec(-e));
        hi_c[i] = support(c, e);
        lo_c[i] = -support(c, Vec(-e));
    }
    int found = 0;
    for (int it = 0; it < 20000 && found < 200; ++it) {
        Vec x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo_k[i], hi_k[i]);
        for (int i = 0; i < n; ++i) y[i] = rng.uniform(lo_c[i], hi_c[i]);
        if (!contains(k, x, 0.0) || !contains(c, y, 0.0)) continue;
        ++found;
        Vec mid = 0.5 * (x + y);
        if (!contains(k, mid, 1e-9) && !contains(c, mid, 1e-9))
            throw std::runtime_error("valuation: union not convex");
    }
}

double lutwak_functional(const ConvexBody& k, const ConvexBody& l, const SphereGrid& grid) {
    const int n = k.dim();
    if (l.dim() != n) throw std::invalid_argument("lutwak: dimension mismatch");
    Vec cen;
    if (l.is_polytope()) {
        cen = moments(l).centroid;
    } else {
        cen = moments_quadrature(l, grid).centroid;
    }
    if (cen.norm() > 1e-6)
        throw std::runtime_error("lutwak: centroid of L not at the origin");
    double vol_l = volume(l);
    KahanSum integral;
    if (k.is_polytope()) {
        for (const auto& [nrm, mass] : surface_measure(k).atoms)
            integral.add(mass / radial(l, nrm));
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
            integral.add(grid.weights[i] * hit.jacobian / radial(l, hit.normal));
        }
    }
    double inner = std::pow(vol_l, 1.0 / n) * integral.value();
    return std::pow(static_cast<double>(n), 1.0 / (n + 1.0)) * std::pow(inner, n / (n + 1.0));
}

double petty_ratio(const ConvexBody& k, const SphereGrid& grid, std::int64_t samples,
                   std::uint64_t seed) {
    const int n = k.dim();
    double as_k = affine_surface_area(k, grid).value;
    double vol_pi = 0.0;
    if (n == 2) {
        std::vector<Vec2> normals;
        std::vector<double> offsets;
        for (const auto& xi : grid.dirs) {
            Vec t = perp2(xi);
            double w = support(k, t) + support(k, Vec(-t));
            normals.push_back(Vec2(xi[0], xi[1]));
            offsets.push_back(w);
        }
        auto poly = halfplane_intersection(normals, offsets, Vec2(0, 0));
        vol_pi = std::abs(polygon_area(poly));
    } else if (n == 3) {
        if (!k.is_polytope())
            throw std::invalid_argument("petty_ratio: n = 3 supported for polytopes only");
        std::vector<Vec3> normals;
        std::vector<double> offsets;
        for (const auto& xi : grid.dirs) {
            double w = projection_body_support(k, xi, samples, seed);
            normals.push_back(Vec3(xi[0], xi[1], xi[2]));
            offsets.push_back(w);
        }
        auto verts = halfspace_intersection_3d(normals, offsets, Vec3(0, 0, 0));
        Hull3D h = hull3d(verts);
        vol_pi = h.volume;
    } else {
        throw std::invalid_argument("petty_ratio: n in {2,3}");
    }
    double denom = std::pow(static_cast<double>(n), n + 1.0) * std::pow(ball_volume(n), n) /
                   std::pow(ball_volume(n - 1), n) * vol_pi;
    return std::pow(as_k, n + 1.0) / denom;
}

ConvexBody ghsw_candidate(const ConvexBody& k, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("ghsw_candidate: need c > 0");
    const int n = k.dim();
    if (!contains(k, Vec::Zero(n), 0.0))
        throw std::runtime_error("ghsw_candidate: K does not contain the origin");
    double r = c * std::sqrt(static_cast<double>(n));
    // ball swallows K: candidate is K itself
    SphereGrid grid = SphereGrid::standard(n);
    bool k_inside = true;
    for (const auto& u : grid.dirs)
        if (support(k, u) > r) {
            k_inside = false;
            break;
        }
    if (k_inside) return k;
    ConvexBody ball_body = make_ball(n, r);
    IntersectionBody ib;
    ib.dim = n;
    ib.smooth_parts.push_back(*ball_body.as_smooth());
    if (k.is_polytope()) {
        if (auto* h = k.as_hpoly()) ib.cuts = h->halfspaces();
        if (auto* v = k.as_vpoly()) ib.cuts = v->facets();
    } else if (auto* s = k.as_smooth()) {
        ib.smooth_parts.push_back(*s);
    } else if (auto* prev = k.as_intersection()) {
        ib.smooth_parts.insert(ib.smooth_parts.end(), prev->smooth_parts.begin(),
                               prev->smooth_parts.end());
        ib.cuts = prev->cuts;
    } else {
        throw std::invalid_argument("ghsw_candidate: unsupported representation");
    }
    return ConvexBody(std::move(ib), "ghsw_candidate");
}

std::pair<double, double> asa_steiner_pair(const ConvexBody& k, const Vec& u, int base_nodes) {
    if (k.dim() != 2) throw std::invalid_argument("asa_steiner_pair: n = 2 only");
    const SmoothBody* s = k.as_smooth();
    if (!s) throw std::invalid_argument("asa_steiner_pair: needs a smooth body");
    Vec uu = unit(u);
    Vec w = perp2(uu);
    double s_hi = support(k, w), s_lo = -support(k, Vec(-w));
    double mid = 0.5 * (s_lo + s_hi), half_range = 0.5 * (s_hi - s_lo);
    double reach = support(k, uu) + support(k, Vec(-uu)) + 1.0;
    auto fpp = [&](const Vec& x) {
        SmoothEval e = s->eval(x);
        double fu = e.grad.dot(uu);
        double yprime = -e.grad.dot(w) / fu;
        Vec d = w + yprime * uu;
        return -double(d.transpose() * e.hess * d) / fu;
    };
    KahanSum as_k, as_st;
    for (int i = 0; i < base_nodes; ++i) {
        double phi = kPi * (i + 0.5) / base_nodes - 0.5 * kPi;
        double sb = mid + half_range * std::sin(phi);
        double ds = half_range * std::cos(phi) * (kPi / base_nodes);
        auto ch = line_chord(k, Vec(sb * w), uu, reach);
        if (!ch) continue;
        double f_minus = fpp(Vec(sb * w + ch->first * uu));   // convex side: >= 0
        double f_plus = fpp(Vec(sb * w + ch->second * uu));   // concave side: <= 0
        if (!std::isfinite(f_minus) || !std::isfinite(f_plus)) continue;
        as_k.add((std::cbrt(std::max(0.0, f_minus)) + std::cbrt(std::max(0.0, -f_plus))) * ds);
        as_st.add(2.0 * std::cbrt(std::max(0.0, -(f_plus - f_minus) / 2.0)) * ds);
    }
    return {as_k.value(), as_st.value()};
}

}  // namespace affsurf
