#include "affsurf/body_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affsurf/curvature.hpp"

namespace affsurf {

namespace {

Vec2 to2(const Vec& v) { return Vec2(v[0], v[1]); }
Vec3 to3(const Vec& v) { return Vec3(v[0], v[1], v[2]); }
Vec from2(const Vec2& v) { return vec2(v.x(), v.y()); }
Vec from3(const Vec3& v) { return vec3(v.x(), v.y(), v.z()); }

double poly_radial(const std::vector<Halfspace>& facets, const Vec& xi) {
    double best = 1e300;
    for (const auto& h : facets) {
        if (h.offset <= 0.0)
            throw std::runtime_error("radial: origin not interior to polytope");
        double a = h.normal.dot(xi);
        if (a > 1e-300) best = std::min(best, h.offset / a);
    }
    if (best >= 1e300) throw std::runtime_error("radial: unbounded direction");
    return best;
}

const std::vector<Halfspace>& facets_of(const ConvexBody& k) {
    if (auto* h = k.as_hpoly()) return h->halfspaces();
    if (auto* v = k.as_vpoly()) {
        if (v->facets().empty())
            throw std::runtime_error("polytope is lower-dimensional (no facets)");
        return v->facets();
    }
    throw std::runtime_error("not a polytope");
}

// Signed violation; <= 0 inside. Convex in x for convex representations.
double violation(const ConvexBody& k, const Vec& x) {
    if (auto* s = k.as_smooth()) return s->value(x);
    if (auto* i = k.as_intersection()) {
        double v = -1e300;
        for (const auto& part : i->smooth_parts) v = std::max(v, part.value(x));
        for (const auto& h : i->cuts) v = std::max(v, h.normal.dot(x) - h.offset);
        return v;
    }
    if (k.is_polytope()) {
        double v = -1e300;
        for (const auto& h : facets_of(k)) v = std::max(v, h.normal.dot(x) - h.offset);
        return v;
    }
    if (auto* st = k.as_star()) return x.norm() - st->radial(x.norm() > 0 ? Vec(x / x.norm()) : vec2(1, 0));
    throw std::runtime_error("violation: unsupported representation");
}

double radial_bisect(const ConvexBody& k, const Vec& xi, double hi0) {
    if (violation(k, Vec::Zero(k.dim())) >= 0.0)
        throw std::runtime_error("radial: origin not interior");
    double lo = 0.0, hi = hi0;
    int guard = 0;
    while (violation(k, Vec(hi * xi)) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 80) throw std::runtime_error("radial: body appears unbounded");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (violation(k, Vec(mid * xi)) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Generic support by scan + refinement of g(xi) = rho(xi) <xi, u>.
double support_scan(const ConvexBody& k, const Vec& u) {
    const int n = k.dim();
    if (n == 2) {
        auto g = [&](double th) {
            Vec xi = vec2(std::cos(th), std::sin(th));
            return radial(k, xi) * xi.dot(u);
        };
        const int coarse = 512;
        double best = -1e300, best_th = 0.0;
        for (int i = 0; i < coarse; ++i) {
            double th = 2.0 * kPi * (i + 0.5) / coarse;
            double v = g(th);
            if (v > best) {
                best = v;
                best_th = th;
            }
        }
        double w = 2.0 * kPi / coarse;
        double th = golden_max(g, best_th - w, best_th + w);
        return std::max(best, g(th));
    }
    SphereGrid grid = SphereGrid::fibonacci(2048);
    double best = -1e300;
    Vec best_xi = grid.dirs[0];
    for (const auto& xi : grid.dirs) {
        double v = radial(k, xi) * xi.dot(u);
        if (v > best) {
            best = v;
            best_xi = xi;
        }
    }
    // local hill climb with shrinking steps
    Vec xi = best_xi;
    double step = 0.1;
    for (int round = 0; round < 60; ++round) {
        bool improved = false;
        for (int axis = 0; axis < n; ++axis) {
            for (double sgn : {1.0, -1.0}) {
                Vec cand = xi;
                cand[axis] += sgn * step;
                cand.normalize();
                double v = radial(k, cand) * cand.dot(u);
                if (v > best) {
                    best = v;
                    xi = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
        if (step < 1e-9) break;
    }
    return best;
}

}  // namespace

double support(const ConvexBody& k, const Vec& u) {
    if (std::abs(u.norm() - 1.0) > 1e-9) throw std::invalid_argument("support: direction not unit");
    if (auto* v = k.as_vpoly()) {
        double best = -1e300;
        for (const auto& x : v->vertices()) best = std::max(best, x.dot(u));
        return best;
    }
    if (auto* h = k.as_hpoly()) {
        double best = -1e300;
        for (const auto& x : h->vertices()) best = std::max(best, x.dot(u));
        return best;
    }
    if (auto* s = k.as_smooth()) {
        if (s->support) return s->support(u);
        return support_scan(k, u);
    }
    return support_scan(k, u);
}

double radial(const ConvexBody& k, const Vec& xi) {
    if (std::abs(xi.norm() - 1.0) > 1e-9) throw std::invalid_argument("radial: direction not unit");
    if (k.is_polytope()) return poly_radial(facets_of(k), xi);
    if (auto* s = k.as_smooth()) {
        if (s->radial) return s->radial(xi);
        return radial_bisect(k, xi, s->bound);
    }
    if (auto* st = k.as_star()) return st->radial(xi);
    if (auto* ib = k.as_intersection()) {
        double r = 1e300;
        for (const auto& part : ib->smooth_parts) {
            if (part.radial)
                r = std::min(r, part.radial(xi));
            else
                r = std::min(r, radial_bisect(ConvexBody(BodyRep(part)), xi, part.bound));
        }
        for (const auto& h : ib->cuts) {
            if (h.offset <= 0.0) throw std::runtime_error("radial: origin not interior");
            double a = h.normal.dot(xi);
            if (a > 1e-300) r = std::min(r, h.offset / a);
        }
        return r;
    }
    throw std::runtime_error("radial: unsupported representation");
}

bool contains(const ConvexBody& k, const Vec& x, double tol) {
    return violation(k, x) <= tol;
}

BoundaryHit boundary_hit(const ConvexBody& k, const Vec& xi) {
    BoundaryHit hit;
    hit.rho = radial(k, xi);
    hit.x = hit.rho * xi;
    hit.piece = -1;
    const int n = k.dim();
    if (k.is_polytope()) {
        const auto& fs = facets_of(k);
        double best = 1e300;
        const Halfspace* active = nullptr;
        for (const auto& h : fs) {
            double a = h.normal.dot(xi);
            if (a > 1e-300) {
                double r = h.offset / a;
                if (r < best) {
                    best = r;
                    active = &h;
                }
            }
        }
        hit.normal = active->normal;
        hit.kappa = 0.0;
    } else if (auto* s = k.as_smooth()) {
        SmoothEval e = s->eval(hit.x);
        double gn = e.grad.norm();
        if (gn < 1e-12) throw std::runtime_error("boundary_hit: zero gradient (exception set)");
        hit.normal = e.grad / gn;
        hit.kappa = kappa_cofactor(e, n);
        hit.piece = 0;
    } else if (auto* ib = k.as_intersection()) {
        // active piece = argmin radial
        double best = 1e300;
        int best_part = -1;
        for (std::size_t j = 0; j < ib->smooth_parts.size(); ++j) {
            const auto& part = ib->smooth_parts[j];
            double r = part.radial ? part.radial(xi)
                                   : radial_bisect(ConvexBody(BodyRep(part)), xi, part.bound);
            if (r < best) {
                best = r;
                best_part = static_cast<int>(j);
            }
        }
        const Halfspace* active_cut = nullptr;
        for (const auto& h : ib->cuts) {
            double a = h.normal.dot(xi);
            if (a > 1e-300) {
                double r = h.offset / a;
                if (r < best) {
                    best = r;
                    best_part = -1;
                    active_cut = &h;
                }
            }
        }
        if (best_part >= 0) {
            SmoothEval e = ib->smooth_parts[best_part].eval(hit.x);
            double gn = e.grad.norm();
            if (gn < 1e-12) throw std::runtime_error("boundary_hit: zero gradient");
            hit.normal = e.grad / gn;
            hit.kappa = kappa_cofactor(e, n);
            hit.piece = best_part;
        } else {
            hit.normal = active_cut->normal;
            hit.kappa = 0.0;
        }
    } else {
        throw std::runtime_error("boundary_hit: unsupported representation");
    }
    double c = xi.dot(hit.normal);
    if (c <= 1e-12) throw std::runtime_error("boundary_hit: degenerate radial Jacobian");
    hit.jacobian = std::pow(hit.rho, n - 1) / c;
    return hit;
}

ConvexBody polar_polytope(const ConvexBody& p) {
    const int n = p.dim();
    if (auto* v = p.as_vpoly()) {
        // origin strictly interior <=> all facet offsets positive
        if (v->facets().empty()) throw std::runtime_error("polar: polytope lower-dimensional");
        for (const auto& f : v->facets())
            if (f.offset <= 1e-12) throw std::runtime_error("polar: origin not strictly interior");
        std::vector<Halfspace> hs;
        for (const auto& x : v->vertices()) {
            double nn = x.norm();
            if (nn < 1e-12) continue;  // origin vertex adds no constraint
            hs.push_back({x / nn, 1.0 / nn});
        }
        return ConvexBody(HPolytope(std::move(hs), n), "polar");
    }
    if (auto* h = p.as_hpoly()) {
        std::vector<Vec> verts;
        for (const auto& hs : h->halfspaces()) {
            if (hs.offset <= 1e-12) throw std::runtime_error("polar: origin not strictly interior");
            verts.push_back(hs.normal / hs.offset);
        }
        return ConvexBody(VPolytope(std::move(verts), n), "polar");
    }
    throw std::runtime_error("polar_polytope: needs a polytope");
}

namespace {

Moments poly_moments_exact(const ConvexBody& k) {
    Moments m;
    m.method = "exact";
    m.stderr_volume = 0.0;
    m.acceptance = 1.0;
    const int n = k.dim();
    const std::vector<Vec>* verts = nullptr;
    if (auto* v = k.as_vpoly()) verts = &v->vertices();
    if (auto* h = k.as_hpoly()) verts = &h->vertices();
    if (n == 2) {
        std::vector<Vec2> poly;
        for (const auto& v : *verts) poly.push_back(to2(v));
        double area;
        Vec2 cen;
        polygon_moments(poly, area, cen);
        m.volume = std::abs(area);
        m.centroid = from2(cen);
        return m;
    }
    std::vector<Vec3> pts;
    for (const auto& v : *verts) pts.push_back(to3(v));
    Hull3D h = hull3d(pts);
    if (h.degenerate) {
        m.volume = 0.0;
        m.centroid = Vec::Zero(n);
        return m;
    }
    Vec3 ref = Vec3::Zero();
    for (const auto& p : pts) ref += p;
    ref /= static_cast<double>(pts.size());
    double vol = 0.0;
    Vec3 cen = Vec3::Zero();
    for (const auto& f : h.faces) {
        Vec3 a = h.points[f[0]], b = h.points[f[1]], c = h.points[f[2]];
        double v6 = (a - ref).cross(b - ref).dot(c - ref);
        vol += v6;
        cen += v6 * (a + b + c + ref) / 4.0;
    }
    m.volume = std::abs(vol) / 6.0;
    m.centroid = from3(cen / vol);
    return m;
}

void bounding_box(const ConvexBody& k, Vec& lo, Vec& hi) {
    const int n = k.dim();
    lo.resize(n);
    hi.resize(n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        hi[i] = support(k, e);
        lo[i] = -support(k, Vec(-e));
    }
}

}  // namespace

Moments moments(const ConvexBody& k, std::int64_t samples, std::uint64_t seed) {
    if (k.is_polytope() && k.dim() <= 3) return poly_moments_exact(k);
    Moments m;
    m.method = "monte_carlo";
    const int n = k.dim();
    Vec lo, hi;
    bounding_box(k, lo, hi);
    double box_vol = (hi - lo).prod();
    Rng rng = Rng::stream(seed, 0x4d43564f4cULL);  // "MCVOL"
    std::int64_t acc = 0;
    Vec sum = Vec::Zero(n);
    Vec x(n);
    for (std::int64_t s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        if (contains(k, x, 0.0)) {
            ++acc;
            sum += x;
        }
    }
    double p = static_cast<double>(acc) / samples;
    if (p < 1e-3) throw std::runtime_error("moments: acceptance rate below 1e-3");
    m.volume = box_vol * p;
    m.stderr_volume = box_vol * std::sqrt(p * (1.0 - p) / samples);
    m.centroid = sum / static_cast<double>(acc);
    m.acceptance = p;
    return m;
}

Moments moments_quadrature(const ConvexBody& k, const SphereGrid& grid) {
    const int n = k.dim();
    if (grid.dim != n) throw std::invalid_argument("moments_quadrature: grid dim mismatch");
    KahanSum vol;
    std::vector<KahanSum> cen(n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double rho = radial(k, grid.dirs[i]);
        double rn = std::pow(rho, n);
        vol.add(grid.weights[i] * rn);
        double rn1 = rn * rho;
        for (int d = 0; d < n; ++d) cen[d].add(grid.weights[i] * rn1 * grid.dirs[i][d]);
    }
    Moments m;
    m.method = "exact";
    m.acceptance = 1.0;
    m.stderr_volume = 0.0;
    m.volume = vol.value() / n;
    m.centroid.resize(n);
    for (int d = 0; d < n; ++d) m.centroid[d] = cen[d].value() / ((n + 1.0) * m.volume);
    return m;
}

double volume(const ConvexBody& k) {
    if (k.is_polytope()) return poly_moments_exact(k).volume;
    if (auto* s = k.as_smooth())
        if (s->volume_exact) return *s->volume_exact;
    SphereGrid grid = (k.dim() == 2) ? SphereGrid::circle(8192) : SphereGrid::gauss_product(64);
    return moments_quadrature(k, grid).volume;
}

double body_distance(const ConvexBody& c, const ConvexBody& k, DistanceMode mode,
                     const SphereGrid& grid, std::int64_t samples, std::uint64_t seed,
                     double* stderr_out) {
    if (c.dim() != k.dim()) throw std::invalid_argument("body_distance: dim mismatch");
    if (mode == DistanceMode::Hausdorff) {
        double d = 0.0;
        for (const auto& u : grid.dirs) d = std::max(d, std::abs(support(c, u) - support(k, u)));
        if (stderr_out) *stderr_out = 0.0;
        return d;
    }
    const int n = c.dim();
    Vec lo_c, hi_c, lo_k, hi_k;
    bounding_box(c, lo_c, hi_c);
    bounding_box(k, lo_k, hi_k);
    Vec lo = lo_c.cwiseMin(lo_k), hi = hi_c.cwiseMax(hi_k);
    double box_vol = (hi - lo).prod();
    Rng rng = Rng::stream(seed, 0x53594d44ULL);  // "SYMD"
    std::int64_t acc = 0;
    Vec x(n);
    for (std::int64_t s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        if (contains(c, x, 0.0) != contains(k, x, 0.0)) ++acc;
    }
    double p = static_cast<double>(acc) / samples;
    if (stderr_out) *stderr_out = box_vol * std::sqrt(p * (1.0 - p) / samples);
    return box_vol * p;
}

ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("minkowski_sum: dim mismatch");
    const std::vector<Vec>* vp = nullptr;
    const std::vector<Vec>* vq = nullptr;
    if (auto* v = p.as_vpoly()) vp = &v->vertices();
    if (auto* h = p.as_hpoly()) vp = &h->vertices();
    if (auto* v = q.as_vpoly()) vq = &v->vertices();
    if (auto* h = q.as_hpoly()) vq = &h->vertices();
    if (!vp || !vq) throw std::invalid_argument("minkowski_sum: needs polytopes");
    std::vector<Vec> sums;
    sums.reserve(vp->size() * vq->size());
    for (const auto& a : *vp)
        for (const auto& b : *vq) sums.push_back(a + b);
    return ConvexBody(VPolytope(std::move(sums), p.dim()), "minkowski_sum");
}

double SurfaceMeasureAtoms::total_mass() const {
    double s = 0.0;
    for (const auto& [n, m] : atoms) s += m;
    return s;
}

SurfaceMeasureAtoms surface_measure(const ConvexBody& p) {
    if (!p.is_polytope()) throw std::invalid_argument("surface_measure: needs a polytope");
    const int n = p.dim();
    SurfaceMeasureAtoms out;
    const std::vector<Vec>* verts = nullptr;
    if (auto* v = p.as_vpoly()) verts = &v->vertices();
    if (auto* h = p.as_hpoly()) verts = &h->vertices();
    if (n == 2) {
        // vertices CCW from construction for VPolytope; rebuild hull otherwise
        std::vector<Vec2> poly;
        for (const auto& v : *verts) poly.push_back(to2(v));
        poly = hull2d(poly);
        const std::size_t m = poly.size();
        for (std::size_t i = 0; i < m; ++i) {
            Vec2 e = poly[(i + 1) % m] - poly[i];
            double len = e.norm();
            if (len < 1e-12) continue;
            Vec2 nrm(e.y(), -e.x());
            nrm /= len;
            out.atoms.push_back({from2(nrm), len});
        }
        return out;
    }
    std::vector<Vec3> pts;
    for (const auto& v : *verts) pts.push_back(to3(v));
    Hull3D h = hull3d(pts);
    if (h.degenerate) throw std::runtime_error("surface_measure: degenerate polytope");
    for (const auto& [nrm, area] : h.merged_facets())
        if (area > 1e-12) out.atoms.push_back({from3(nrm), area});
    return out;
}

double mixed_volume_v1(const ConvexBody& k, const ConvexBody& c, const SphereGrid& grid) {
    const int n = k.dim();
    if (k.is_polytope()) {
        SurfaceMeasureAtoms atoms = surface_measure(k);
        KahanSum s;
        for (const auto& [nrm, mass] : atoms.atoms) s.add(support(c, nrm) * mass);
        return s.value() / n;
    }
    if (k.as_smooth() || k.as_intersection()) {
        KahanSum s;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
            s.add(grid.weights[i] * support(c, hit.normal) * hit.jacobian);
        }
        return s.value() / n;
    }
    throw std::runtime_error("mixed_volume_v1: unsupported representation for K");
}

std::optional<std::pair<double, double>> line_chord(const ConvexBody& k, const Vec& base,
                                                    const Vec& u, double reach) {
    auto g = [&](double t) { return violation(k, Vec(base + t * u)); };
    double t0 = golden_min(g, -reach, reach);
    if (g(t0) >= 0.0) return std::nullopt;
    auto cross = [&](double inside, double outside) {
        double lo = inside, hi = outside;
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * (std::abs(hi) + 1.0); ++it) {
            double mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    return std::make_pair(cross(t0, -reach), cross(t0, reach));
}

double projection_body_support(const ConvexBody& k, const Vec& xi, std::int64_t samples,
                               std::uint64_t seed, double* stderr_out) {
    const int n = k.dim();
    if (std::abs(xi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("projection_body_support: direction not unit");
    if (n == 2) {
        Vec t = perp2(xi);
        if (stderr_out) *stderr_out = 0.0;
        return support(k, t) + support(k, Vec(-t));
    }
    if (n != 3) throw std::invalid_argument("projection_body_support: only n in {2,3}");
    Vec3 z = to3(xi);
    Vec3 t1 = z.unitOrthogonal();
    Vec3 t2 = z.cross(t1);
    double a1 = support(k, from3(t1)), b1 = support(k, from3(-t1));
    double a2 = support(k, from3(t2)), b2 = support(k, from3(-t2));
    double reach = support(k, xi) + support(k, Vec(-xi)) + 1.0;
    double box = (a1 + b1) * (a2 + b2);
    Rng rng = Rng::stream(seed, 0x50524f4aULL);  // "PROJ"
    std::int64_t acc = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        double s1 = rng.uniform(-b1, a1);
        double s2 = rng.uniform(-b2, a2);
        Vec p = from3(s1 * t1 + s2 * t2);
        if (line_chord(k, p, xi, reach)) ++acc;
    }
    double prob = static_cast<double>(acc) / samples;
    if (stderr_out) *stderr_out = box * std::sqrt(prob * (1.0 - prob) / samples);
    return box * prob;
}

namespace {

// chord length breakpoint construction for polygons: the chord function is
// piecewise linear in the base coordinate with breaks at vertex projections
SteinerResult steiner_polygon(const ConvexBody& k, const Vec& u, double vol_before) {
    Vec w = perp2(u);
    const std::vector<Vec>* verts = nullptr;
    if (auto* v = k.as_vpoly()) verts = &v->vertices();
    if (auto* h = k.as_hpoly()) verts = &h->vertices();
    std::vector<double> ss;
    for (const auto& v : *verts) ss.push_back(w.dot(v));
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             ss.end());
    double reach = support(k, u) + support(k, Vec(-u)) + 1.0;
    std::vector<Vec> out;
    std::vector<std::pair<double, double>> chords;  // (s, half-length)
    for (double s : ss) {
        auto ch = line_chord(k, Vec(s * w), u, reach);
        double half = ch ? 0.5 * (ch->second - ch->first) : 0.0;
        chords.push_back({s, half});
    }
    for (const auto& [s, half] : chords) out.push_back(s * w + half * u);
    for (auto it = chords.rbegin(); it != chords.rend(); ++it)
        if (it->second > 0.0) out.push_back(it->first * w - it->second * u);
    SteinerResult r{ConvexBody(VPolytope(std::move(out), 2), "steiner"), vol_before, 0.0, false};
    r.volume_after = volume(r.body);
    r.coarse_warning = std::abs(r.volume_after - vol_before) > 0.005 * vol_before;
    return r;
}

}  // namespace

SteinerResult steiner_symmetrize(const ConvexBody& k, const Vec& u, int resolution) {
    const int n = k.dim();
    if (std::abs(u.norm() - 1.0) > 1e-9) throw std::invalid_argument("steiner: direction not unit");
    double vol_before = volume(k);
    if (n == 2 && k.is_polytope()) return steiner_polygon(k, u, vol_before);
    if (n == 2) {
        Vec w = perp2(u);
        double s_hi = support(k, w), s_lo = -support(k, Vec(-w));
        double mid = 0.5 * (s_lo + s_hi), half_range = 0.5 * (s_hi - s_lo);
        double reach = support(k, u) + support(k, Vec(-u)) + 1.0;
        std::vector<Vec> upper, lower;
        for (int i = 0; i < resolution; ++i) {
            // sine-spaced base points cluster near the tangency endpoints
            double phi = kPi * (i + 0.5) / resolution - 0.5 * kPi;
            double s = mid + half_range * std::sin(phi);
            auto ch = line_chord(k, Vec(s * w), u, reach);
            if (!ch) continue;
            double half = 0.5 * (ch->second - ch->first);
            upper.push_back(s * w + half * u);
            lower.push_back(s * w - half * u);
        }
        std::vector<Vec> pts = upper;
        pts.insert(pts.end(), lower.rbegin(), lower.rend());
        SteinerResult r{ConvexBody(VPolytope(std::move(pts), 2), "steiner"), vol_before, 0.0, false};
        r.volume_after = volume(r.body);
        r.coarse_warning = std::abs(r.volume_after - vol_before) > 0.005 * vol_before;
        return r;
    }
    if (n != 3) throw std::invalid_argument("steiner: only n in {2,3}");
    Vec3 z = to3(unit(u));
    Vec3 t1 = z.unitOrthogonal();
    Vec3 t2 = z.cross(t1);
    double r1 = std::max(support(k, from3(t1)), support(k, from3(-t1)));
    double r2 = std::max(support(k, from3(t2)), support(k, from3(-t2)));
    double reach = support(k, u) + support(k, Vec(-u)) + 1.0;
    std::vector<Vec> pts;
    int m = std::max(8, static_cast<int>(std::sqrt(static_cast<double>(resolution))) * 2);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double a = r1 * (2.0 * (i + 0.5) / m - 1.0);
            double b = r2 * (2.0 * (j + 0.5) / m - 1.0);
            Vec base = from3(a * t1 + b * t2);
            auto ch = line_chord(k, base, u, reach);
            if (!ch) continue;
            double half = 0.5 * (ch->second - ch->first);
            pts.push_back(base + half * u);
            if (half > 0) pts.push_back(base - half * u);
        }
    }
    if (pts.size() < 4) throw std::runtime_error("steiner: empty sample");
    SteinerResult r{ConvexBody(VPolytope(std::move(pts), 3), "steiner"), vol_before, 0.0, false};
    r.volume_after = volume(r.body);
    r.coarse_warning = std::abs(r.volume_after - vol_before) > 0.005 * vol_before;
    return r;
}

std::vector<Vec2> boundary_polygon(const ConvexBody& k, int resolution) {
    if (k.dim() != 2) throw std::invalid_argument("boundary_polygon: n = 2 only");
    if (k.is_polytope()) {
        std::vector<Vec2> poly;
        const std::vector<Vec>* verts = nullptr;
        if (auto* v = k.as_vpoly()) verts = &v->vertices();
        if (auto* h = k.as_hpoly()) verts = &h->vertices();
        for (const auto& v : *verts) poly.push_back(to2(v));
        return hull2d(poly);
    }
    std::vector<Vec2> poly;
    poly.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        double th = 2.0 * kPi * (i + 0.5) / resolution;
        Vec xi = vec2(std::cos(th), std::sin(th));
        poly.push_back(to2(Vec(radial(k, xi) * xi)));
    }
    return poly;
}

}  // namespace affsurf
