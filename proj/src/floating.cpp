#include "affsurf/floating.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affsurf/rng.hpp"

namespace affsurf {

namespace {

Vec2 to2(const Vec& v) { return Vec2(v[0], v[1]); }
Vec from2(const Vec2& v) { return vec2(v.x(), v.y()); }

}  // namespace

PolygonCapSolver::PolygonCapSolver(std::vector<Vec2> ccw_vertices) : verts_(std::move(ccw_vertices)) {
    const std::size_t m = verts_.size();
    if (m < 3) throw std::invalid_argument("PolygonCapSolver: need >= 3 vertices");
    if (polygon_area(verts_) < 0) std::reverse(verts_.begin(), verts_.end());
    prefix_.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        prefix_[i + 1] = prefix_[i] + cross2(verts_[i], verts_[(i + 1) % m]);
    area_ = 0.5 * prefix_[m];
    if (area_ <= 0) throw std::invalid_argument("PolygonCapSolver: degenerate polygon");
    normal_angle_.resize(m);
    double prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        Vec2 e = verts_[(i + 1) % m] - verts_[i];
        double a = std::atan2(-e.x(), e.y());  // outward normal angle for CCW
        if (i == 0) {
            normal_angle_[0] = a;
        } else {
            while (a < prev) a += 2.0 * kPi;  // unwrap to increasing
            normal_angle_[i] = a;
        }
        prev = normal_angle_[i];
    }
    if (normal_angle_[m - 1] - normal_angle_[0] > 2.0 * kPi + 1e-9)
        throw std::invalid_argument("PolygonCapSolver: polygon not convex");
}

int PolygonCapSolver::argmax_fan(double angle) const {
    const std::size_t m = verts_.size();
    // vertex i supports directions between edge normals i-1 and i
    double a0 = normal_angle_[0];
    double th = std::fmod(angle - a0, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    th += a0;
    auto it = std::lower_bound(normal_angle_.begin(), normal_angle_.end(), th);
    if (it == normal_angle_.end()) return 0;  // beyond last edge: wraps to vertex 0
    return static_cast<int>(it - normal_angle_.begin());
}

double PolygonCapSolver::support(const Vec2& xi, int* argmax) const {
    int i = argmax_fan(std::atan2(xi.y(), xi.x()));
    if (argmax) *argmax = i;
    return verts_[i].dot(xi);
}

double PolygonCapSolver::cap_area(const Vec2& xi, double c) const {
    const int m = static_cast<int>(verts_.size());
    int i_max, i_min;
    double h_max = support(xi, &i_max);
    double h_min = -support(-xi, &i_min);
    if (c >= h_max) return 0.0;
    if (c <= h_min) return area_;
    auto d = [&](int i) { return verts_[((i % m) + m) % m].dot(xi); };
    // arc from i_max CCW to i_min: d nonincreasing; find last with d >= c
    int len1 = ((i_min - i_max) % m + m) % m;
    int lo = 0, hi = len1;  // positions along the arc
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (d(i_max + mid) >= c)
            lo = mid;
        else
            hi = mid - 1;
    }
    int k_exit = (i_max + lo) % m;  // last cap vertex going CCW
    // arc from i_min CCW to i_max: d nondecreasing; find first with d >= c
    int len2 = ((i_max - i_min) % m + m) % m;
    lo = 0;
    hi = len2;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (d(i_min + mid) >= c)
            hi = mid;
        else
            lo = mid + 1;
    }
    int j_entry = (i_min + lo) % m;  // first cap vertex going CCW
    // crossing points on edges (k_exit, k_exit+1) and (j_entry-1, j_entry)
    auto crossing = [&](int a, int b) {
        double da = verts_[a].dot(xi) - c, db = verts_[b].dot(xi) - c;
        double t = da / (da - db);
        return Vec2(verts_[a] + t * (verts_[b] - verts_[a]));
    };
    Vec2 x_pt = crossing(k_exit, (k_exit + 1) % m);
    Vec2 e_pt = crossing((j_entry - 1 + m) % m, j_entry);
    // chain j_entry .. k_exit CCW via prefix sums
    double chain = 0.0;
    if (j_entry <= k_exit)
        chain = prefix_[k_exit] - prefix_[j_entry];
    else
        chain = (prefix_[m] - prefix_[j_entry]) + prefix_[k_exit];
    double s = chain + cross2(e_pt, verts_[j_entry]) + cross2(verts_[k_exit], x_pt) +
               cross2(x_pt, e_pt);
    return 0.5 * std::abs(s);
}

double PolygonCapSolver::cap_height(const Vec2& xi, double t) const {
    if (!(t > 0.0) || t >= 0.5 * area_)
        throw std::invalid_argument("cap_height: need 0 < t < vol/2");
    double lo = -support(-xi), hi = support(xi);
    double tol = std::max(1e-10, 1e-4 * t);
    double c = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        c = 0.5 * (lo + hi);
        double a = cap_area(xi, c);
        if (std::abs(a - t) <= tol) return c;
        if (a > t)
            lo = c;
        else
            hi = c;
        if (hi - lo < 1e-16 * (std::abs(hi) + 1.0)) break;
    }
    return c;
}

double cap_height(const ConvexBody& k, const Vec& xi, double t, int resolution) {
    if (k.dim() != 2)
        throw std::invalid_argument("cap_height: n = 2 (use floating_body_3d paths for n = 3)");
    PolygonCapSolver solver(boundary_polygon(k, resolution));
    return solver.cap_height(to2(unit(xi)), t);
}

FloatingBodyResult floating_body(const ConvexBody& k, double t, const SphereGrid& grid,
                                 int resolution) {
    if (k.dim() != 2) throw std::invalid_argument("floating_body: n = 2 only");
    if (grid.dim != 2) throw std::invalid_argument("floating_body: grid dim mismatch");
    PolygonCapSolver solver(boundary_polygon(k, resolution));
    if (!(t > 0.0) || t >= 0.5 * solver.area())
        throw std::invalid_argument("floating_body: need 0 < t < vol/2");
    std::vector<Vec2> dirs;
    dirs.reserve(grid.size() + 8);
    for (const auto& u : grid.dirs) dirs.push_back(to2(u));
    if (k.is_polytope()) {
        // facet normals must be in the family or K_t bulges past the corners
        for (const auto& [nrm, len] : surface_measure(k).atoms) dirs.push_back(to2(nrm));
        std::sort(dirs.begin(), dirs.end(), [](const Vec2& a, const Vec2& b) {
            return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
        });
    }
    std::vector<double> cs(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) cs[i] = solver.cap_height(dirs[i], t);
    double area_in;
    Vec2 cen;
    polygon_moments(solver.vertices(), area_in, cen);
    double inradius = 1e300;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        inradius = std::min(inradius, cs[i] - dirs[i].dot(cen));
    if (inradius < 1e-9)
        throw std::runtime_error("floating_body: empty floating body (t too large)");
    auto poly = halfplane_intersection(dirs, cs, cen);
    double vol_t = std::abs(polygon_area(poly));
    std::vector<Halfspace> hs;
    hs.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) hs.push_back({from2(dirs[i]), cs[i]});
    FloatingBodyResult r{t, HPolytope(std::move(hs), 2), poly, solver.area() - vol_t, 0.0, inradius};
    r.normalized = r.deficit / std::pow(t, 2.0 / 3.0);
    return r;
}

std::vector<FloatingEstimate> asa_via_floating(const ConvexBody& k,
                                               const std::vector<double>& t_sequence,
                                               const SphereGrid& grid, int resolution) {
    for (std::size_t i = 1; i < t_sequence.size(); ++i)
        if (t_sequence[i] >= t_sequence[i - 1])
            throw std::invalid_argument("asa_via_floating: t sequence must decrease");
    const int n = k.dim();
    double c_n = 2.0 * std::pow(ball_volume(n - 1) / (n + 1.0), 2.0 / (n + 1.0));
    std::vector<FloatingEstimate> out;
    for (double t : t_sequence) {
        FloatingBodyResult fb = floating_body(k, t, grid, resolution);
        FloatingEstimate e;
        e.t = t;
        e.deficit = fb.deficit;
        e.normalized = fb.deficit / std::pow(t, 2.0 / (n + 1.0));
        e.asa_estimate = c_n * e.normalized;
        out.push_back(e);
    }
    return out;
}

namespace {

double rolling_radius_polytope(const std::vector<Halfspace>& fs, const Vec& x) {
    double viol = -1e300;
    for (const auto& h : fs) viol = std::max(viol, h.normal.dot(x) - h.offset);
    if (std::abs(viol) > 1e-9)
        throw std::invalid_argument("rolling_radius: point not on the boundary");
    const Halfspace* active = nullptr;
    int active_count = 0;
    for (const auto& h : fs) {
        if (std::abs(h.normal.dot(x) - h.offset) <= 1e-9) {
            ++active_count;
            active = &h;
        }
    }
    if (active_count != 1) return 0.0;  // vertex or edge: no unique normal
    const Vec& nrm = active->normal;
    double r = 1e300;
    for (const auto& h : fs) {
        double align = h.normal.dot(nrm);
        if (align > 1.0 - 1e-12) continue;  // the supporting facet itself
        double slack = h.offset - h.normal.dot(x);
        r = std::min(r, slack / (1.0 - align));
    }
    return std::max(0.0, r);
}

}  // namespace

double rolling_radius(const ConvexBody& k, const Vec& x, const SphereGrid& grid) {
    if (k.is_polytope()) {
        const std::vector<Halfspace>* fs = nullptr;
        if (auto* h = k.as_hpoly()) fs = &h->halfspaces();
        if (auto* v = k.as_vpoly()) fs = &v->facets();
        return rolling_radius_polytope(*fs, x);
    }
    const SmoothBody* s = k.as_smooth();
    if (!s) throw std::invalid_argument("rolling_radius: unsupported representation");
    if (std::abs(s->value(x)) > 1e-9)
        throw std::invalid_argument("rolling_radius: point not on the boundary");
    SmoothEval e = s->eval(x);
    Vec nrm = unit(e.grad);
    auto r_of = [&](const Vec& u) {
        double align = nrm.dot(u);
        if (align > 1.0 - 1e-12) return 1e300;
        return (support(k, u) - x.dot(u)) / (1.0 - align);
    };
    double best = 1e300;
    Vec best_u = grid.dirs[0];
    for (const auto& u : grid.dirs) {
        double r = r_of(u);
        if (r < best) {
            best = r;
            best_u = u;
        }
    }
    if (k.dim() == 2) {
        double th0 = std::atan2(best_u[1], best_u[0]);
        double w = 2.0 * kPi / static_cast<double>(grid.size());
        double th = golden_min(
            [&](double a) { return r_of(vec2(std::cos(a), std::sin(a))); }, th0 - w, th0 + w);
        best = std::min(best, r_of(vec2(std::cos(th), std::sin(th))));
    } else {
        Vec u = best_u;
        double step = 2.0 / std::sqrt(static_cast<double>(grid.size()));
        for (int round = 0; round < 50; ++round) {
            bool improved = false;
            for (int axis = 0; axis < k.dim(); ++axis) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = u;
                    cand[axis] += sgn * step;
                    cand.normalize();
                    double r = r_of(cand);
                    if (r < best) {
                        best = r;
                        u = cand;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
            if (step < 1e-10) break;
        }
    }
    return best;
}

double boundary_area(const ConvexBody& k, const SphereGrid& grid) {
    if (k.is_polytope()) return surface_measure(k).total_mass();
    KahanSum s;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s.add(grid.weights[i] * boundary_hit(k, grid.dirs[i]).jacobian);
    return s.value();
}

std::vector<Vec> sample_boundary_uniform(const ConvexBody& k, std::int64_t count,
                                         const SphereGrid& grid, std::uint64_t seed) {
    std::vector<Vec> pts;
    pts.reserve(count);
    Rng rng = Rng::stream(seed, 0x42445359ULL);  // "BDSY"
    const int n = k.dim();
    if (k.is_polytope() && n == 2) {
        auto poly = boundary_polygon(k, 0);
        const std::size_t m = poly.size();
        std::vector<double> cum(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            cum[i + 1] = cum[i] + (poly[(i + 1) % m] - poly[i]).norm();
        for (std::int64_t s = 0; s < count; ++s) {
            double u = rng.uniform() * cum[m];
            std::size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() - 1;
            if (i >= m) i = m - 1;
            double frac = (u - cum[i]) / (cum[i + 1] - cum[i]);
            Vec2 p = poly[i] + frac * (poly[(i + 1) % m] - poly[i]);
            pts.push_back(from2(p));
        }
        return pts;
    }
    if (k.is_polytope() && n == 3) {
        const std::vector<Vec>* verts = nullptr;
        if (auto* h = k.as_hpoly()) verts = &h->vertices();
        if (auto* v = k.as_vpoly()) verts = &v->vertices();
        std::vector<Vec3> p3;
        for (const auto& v : *verts) p3.push_back(Vec3((v)[0], (v)[1], (v)[2]));
        Hull3D h = hull3d(p3);
        std::vector<double> cum = {0.0};
        for (const auto& f : h.faces) {
            double area =
                0.5 * (h.points[f[1]] - h.points[f[0]]).cross(h.points[f[2]] - h.points[f[0]]).norm();
            cum.push_back(cum.back() + area);
        }
        for (std::int64_t s = 0; s < count; ++s) {
            double u = rng.uniform() * cum.back();
            std::size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() - 1;
            if (i >= h.faces.size()) i = h.faces.size() - 1;
            double a = rng.uniform(), b = rng.uniform();
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            const auto& f = h.faces[i];
            Vec3 p = h.points[f[0]] + a * (h.points[f[1]] - h.points[f[0]]) +
                     b * (h.points[f[2]] - h.points[f[0]]);
            pts.push_back(vec3(p.x(), p.y(), p.z()));
        }
        return pts;
    }
    // smooth: grid atoms weighted by w * J
    std::vector<double> cum = {0.0};
    std::vector<Vec> bpts;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
        cum.push_back(cum.back() + grid.weights[i] * hit.jacobian);
        bpts.push_back(hit.x);
    }
    for (std::int64_t s = 0; s < count; ++s) {
        double u = rng.uniform() * cum.back();
        std::size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() - 1;
        if (i >= bpts.size()) i = bpts.size() - 1;
        pts.push_back(bpts[i]);
    }
    return pts;
}

RollingProfile sw1_profile(const ConvexBody& k, const std::vector<double>& t_grid,
                           std::int64_t samples, const SphereGrid& grid, std::uint64_t seed) {
    const int n = k.dim();
    for (const auto& u : grid.dirs)
        if (support(k, u) < 1.0 - 1e-12)
            throw std::runtime_error("sw1_profile: K does not contain the unit ball");
    RollingProfile prof;
    prof.t_grid = t_grid;
    prof.boundary_area = boundary_area(k, grid);
    auto pts = sample_boundary_uniform(k, samples, grid, seed);

    std::vector<double> r_vals;
    r_vals.reserve(pts.size());
    if (k.is_polytope()) {
        for (const auto& x : pts) r_vals.push_back(rolling_radius(k, x, grid));
    } else {
        // precompute support values over the grid once
        std::vector<double> h_vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) h_vals[i] = support(k, grid.dirs[i]);
        const SmoothBody* s = k.as_smooth();
        for (const auto& x : pts) {
            Vec nrm = unit(s->eval(x).grad);
            double best = 1e300;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double align = nrm.dot(grid.dirs[i]);
                if (align > 1.0 - 1e-12) continue;
                best = std::min(best, (h_vals[i] - x.dot(grid.dirs[i])) / (1.0 - align));
            }
            r_vals.push_back(best);
        }
    }
    for (double t : t_grid) {
        std::int64_t hits = 0;
        for (double r : r_vals)
            if (r >= t) ++hits;
        double p = static_cast<double>(hits) / r_vals.size();
        prof.measure.push_back(prof.boundary_area * p);
        prof.stderr_m.push_back(prof.boundary_area *
                                std::sqrt(std::max(p * (1.0 - p), 1e-12) / r_vals.size()));
        prof.reference.push_back(std::pow(1.0 - t, n - 1.0) * prof.boundary_area);
    }
    return prof;
}

}  // namespace affsurf
