#include "affsurf/hull.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace affsurf {

// ---------------------------------------------------------------- 2D

std::vector<Vec2> hull2d(std::vector<Vec2> pts) {
    if (pts.size() < 3) return pts;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a == b; }),
              pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    std::vector<Vec2> h(2 * n);
    int k = 0;
    auto cw = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return cross2(a - o, b - o) <= 0.0;
    };
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cw(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    for (int i = n - 2, low = k + 1; i >= 0; --i) {
        while (k >= low && cw(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double polygon_area(const std::vector<Vec2>& poly) {
    const std::size_t m = poly.size();
    if (m < 3) return 0.0;
    KahanSum s;
    for (std::size_t i = 0; i < m; ++i) s.add(cross2(poly[i], poly[(i + 1) % m]));
    return 0.5 * s.value();
}

void polygon_moments(const std::vector<Vec2>& poly, double& area, Vec2& centroid) {
    const std::size_t m = poly.size();
    area = 0.0;
    centroid.setZero();
    if (m < 3) return;
    KahanSum a, cx, cy;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % m];
        double c = cross2(p, q);
        a.add(c);
        cx.add((p.x() + q.x()) * c);
        cy.add((p.y() + q.y()) * c);
    }
    area = 0.5 * a.value();
    if (std::abs(area) < 1e-300) return;
    centroid = Vec2(cx.value(), cy.value()) / (6.0 * area);
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& n, double c) {
    std::vector<Vec2> out;
    const std::size_t m = poly.size();
    if (m == 0) return out;
    out.reserve(m + 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % m];
        double dp = n.dot(p) - c, dq = n.dot(q) - c;
        if (dp <= 0.0) out.push_back(p);
        if ((dp < 0.0) != (dq < 0.0) && dp != dq) {
            double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

std::vector<Vec2> halfplane_intersection(const std::vector<Vec2>& normals,
                                         const std::vector<double>& offsets,
                                         const Vec2& interior) {
    const std::size_t m = normals.size();
    if (m < 3) throw std::invalid_argument("halfplane_intersection: need >= 3 halfplanes");
    // Dual points a_i / (b_i - <a_i, x0>); hull edges of the dual are primal vertices.
    std::vector<Vec2> dual(m);
    std::vector<std::pair<Vec2, int>> tagged(m);
    for (std::size_t i = 0; i < m; ++i) {
        double margin = offsets[i] - normals[i].dot(interior);
        if (margin <= 0.0)
            throw std::runtime_error("halfplane_intersection: interior point not strictly inside");
        dual[i] = normals[i] / margin;
    }
    // hull2d on dual points, keeping the constraint indices
    std::vector<int> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return dual[a].x() < dual[b].x() ||
               (dual[a].x() == dual[b].x() && dual[a].y() < dual[b].y());
    });
    auto cw = [&](int o, int a, int b) { return cross2(dual[a] - dual[o], dual[b] - dual[o]) <= 0.0; };
    std::vector<int> h(2 * m + 1);
    int k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (k >= 2 && cw(h[k - 2], h[k - 1], idx[i])) --k;
        h[k++] = idx[i];
    }
    for (int i = static_cast<int>(m) - 2, low = k + 1; i >= 0; --i) {
        while (k >= low && cw(h[k - 2], h[k - 1], idx[i])) --k;
        h[k++] = idx[i];
    }
    int hn = k - 1;
    if (hn < 3) throw std::runtime_error("halfplane_intersection: unbounded or degenerate");
    std::vector<Vec2> verts;
    verts.reserve(hn);
    for (int i = 0; i < hn; ++i) {
        int a = h[i], b = h[(i + 1) % hn];
        // primal vertex = intersection of constraint lines a and b
        double det = cross2(normals[a], normals[b]);
        if (std::abs(det) < 1e-300) continue;
        double ca = offsets[a] - normals[a].dot(interior);
        double cb = offsets[b] - normals[b].dot(interior);
        Vec2 v((ca * normals[b].y() - cb * normals[a].y()) / det,
               (normals[a].x() * cb - normals[b].x() * ca) / det);
        verts.push_back(v + interior);
    }
    // polarity preserves orientation: dual hull CCW gives primal CCW
    return verts;
}

// ---------------------------------------------------------------- 3D

namespace {

struct Face {
    std::array<int, 3> v;
    Vec3 n;        // outward unit normal
    double d;      // plane offset: n . x = d
    bool alive = true;
    std::vector<int> conflicts;
    double far_dist = 0.0;
    int far_pt = -1;
};

struct Builder {
    const std::vector<Vec3>& pts;
    std::vector<Face> faces;
    std::map<std::pair<int, int>, int> edge_face;  // directed edge -> face
    double eps;

    explicit Builder(const std::vector<Vec3>& p, double e) : pts(p), eps(e) {}

    double dist(int f, int p) const { return faces[f].n.dot(pts[p]) - faces[f].d; }

    int add_face(int a, int b, int c, const Vec3& inside) {
        Face f;
        f.v = {a, b, c};
        Vec3 n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
        double nn = n.norm();
        if (nn < 1e-300) n = Vec3(0, 0, 1); else n /= nn;
        double d = n.dot(pts[a]);
        if (n.dot(inside) - d > 0) {  // flip to outward
            std::swap(f.v[1], f.v[2]);
            n = -n;
            d = -d;
        }
        f.n = n;
        f.d = d;
        faces.push_back(f);
        int id = static_cast<int>(faces.size()) - 1;
        for (int e = 0; e < 3; ++e)
            edge_face[{faces[id].v[e], faces[id].v[(e + 1) % 3]}] = id;
        return id;
    }

    void kill_face(int id) {
        faces[id].alive = false;
        for (int e = 0; e < 3; ++e)
            edge_face.erase({faces[id].v[e], faces[id].v[(e + 1) % 3]});
    }

    void assign(int p, const std::vector<int>& candidates) {
        double best = eps;
        int best_f = -1;
        for (int f : candidates) {
            if (!faces[f].alive) continue;
            double d = dist(f, p);
            if (d > best) {
                best = d;
                best_f = f;
            }
        }
        if (best_f >= 0) {
            faces[best_f].conflicts.push_back(p);
            if (best > faces[best_f].far_dist) {
                faces[best_f].far_dist = best;
                faces[best_f].far_pt = p;
            }
        }
    }
};

}  // namespace

Hull3D hull3d(const std::vector<Vec3>& pts) {
    Hull3D out;
    out.points = pts;
    const int n = static_cast<int>(pts.size());
    if (n < 4) {
        out.degenerate = true;
        return out;
    }
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    if (scale == 0.0) scale = 1.0;
    const double eps = 1e-10 * scale;

    // initial simplex: extreme pair, then farthest from line, then from plane
    int i0 = 0, i1 = 0;
    for (int a = 0; a < n; ++a) {
        if (pts[a].x() < pts[i0].x()) i0 = a;
        if (pts[a].x() > pts[i1].x()) i1 = a;
    }
    if (i0 == i1) i1 = (i0 + 1) % n;
    int i2 = -1;
    double best = eps;
    Vec3 e01 = pts[i1] - pts[i0];
    double e01n = e01.norm();
    if (e01n < eps) {
        out.degenerate = true;
        return out;
    }
    for (int a = 0; a < n; ++a) {
        double d = e01.cross(pts[a] - pts[i0]).norm() / e01n;
        if (d > best) {
            best = d;
            i2 = a;
        }
    }
    if (i2 < 0) {
        out.degenerate = true;
        return out;
    }
    int i3 = -1;
    best = eps;
    Vec3 pn = e01.cross(pts[i2] - pts[i0]).normalized();
    for (int a = 0; a < n; ++a) {
        double d = std::abs(pn.dot(pts[a] - pts[i0]));
        if (d > best) {
            best = d;
            i3 = a;
        }
    }
    if (i3 < 0) {
        out.degenerate = true;
        return out;
    }

    Builder bld(pts, eps);
    Vec3 inside = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    bld.add_face(i0, i1, i2, inside);
    bld.add_face(i0, i1, i3, inside);
    bld.add_face(i0, i2, i3, inside);
    bld.add_face(i1, i2, i3, inside);
    {
        std::vector<int> all = {0, 1, 2, 3};
        for (int p = 0; p < n; ++p) {
            if (p == i0 || p == i1 || p == i2 || p == i3) continue;
            bld.assign(p, all);
        }
    }

    std::deque<int> work = {0, 1, 2, 3};
    while (!work.empty()) {
        int fid = work.front();
        work.pop_front();
        if (!bld.faces[fid].alive || bld.faces[fid].conflicts.empty()) continue;
        int apex = bld.faces[fid].far_pt;

        // grow visible set by BFS over face adjacency
        std::vector<int> visible;
        std::vector<int> stack = {fid};
        std::vector<char> seen(bld.faces.size(), 0);
        seen[fid] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            visible.push_back(f);
            for (int e = 0; e < 3; ++e) {
                auto it = bld.edge_face.find({bld.faces[f].v[(e + 1) % 3], bld.faces[f].v[e]});
                if (it == bld.edge_face.end()) continue;
                int g = it->second;
                if (seen[g]) continue;
                if (bld.dist(g, apex) > eps) {
                    seen[g] = 1;
                    stack.push_back(g);
                }
            }
        }
        // horizon: directed edges of visible faces whose twin is hidden
        std::vector<std::pair<int, int>> horizon;
        std::vector<int> orphaned;
        for (int f : visible) {
            for (int e = 0; e < 3; ++e) {
                int u = bld.faces[f].v[e], v = bld.faces[f].v[(e + 1) % 3];
                auto it = bld.edge_face.find({v, u});
                if (it == bld.edge_face.end() || !seen[it->second]) horizon.push_back({u, v});
            }
            for (int p : bld.faces[f].conflicts)
                if (p != apex) orphaned.push_back(p);
        }
        for (int f : visible) bld.kill_face(f);

        std::vector<int> fresh;
        for (auto [u, v] : horizon) fresh.push_back(bld.add_face(u, v, apex, inside));
        if (static_cast<int>(bld.faces.size()) > static_cast<int>(seen.size()))
            seen.resize(bld.faces.size(), 0);
        for (int p : orphaned) bld.assign(p, fresh);
        for (int f : fresh)
            if (!bld.faces[f].conflicts.empty()) work.push_back(f);
    }

    Vec3 c0 = Vec3::Zero();
    int alive_count = 0;
    for (const auto& f : bld.faces)
        if (f.alive) {
            ++alive_count;
            c0 += pts[f.v[0]] + pts[f.v[1]] + pts[f.v[2]];
        }
    if (alive_count == 0) {
        out.degenerate = true;
        return out;
    }
    c0 /= 3.0 * alive_count;
    KahanSum vol;
    for (const auto& f : bld.faces) {
        if (!f.alive) continue;
        out.faces.push_back(f.v);
        Vec3 a = pts[f.v[0]] - c0, b = pts[f.v[1]] - c0, c = pts[f.v[2]] - c0;
        vol.add(a.cross(b).dot(c));
    }
    out.volume = std::abs(vol.value()) / 6.0;
    return out;
}

std::vector<std::pair<Vec3, double>> Hull3D::merged_facets(double normal_tol) const {
    std::vector<std::pair<Vec3, double>> groups;
    for (const auto& f : faces) {
        Vec3 a = points[f[1]] - points[f[0]], b = points[f[2]] - points[f[0]];
        Vec3 cr = a.cross(b);
        double area = 0.5 * cr.norm();
        if (area < 1e-300) continue;
        Vec3 n = cr.normalized();
        bool found = false;
        for (auto& g : groups) {
            if ((g.first - n).norm() < normal_tol) {
                g.second += area;
                found = true;
                break;
            }
        }
        if (!found) groups.push_back({n, area});
    }
    return groups;
}

std::vector<Vec3> halfspace_intersection_3d(const std::vector<Vec3>& normals,
                                            const std::vector<double>& offsets,
                                            const Vec3& interior) {
    const std::size_t m = normals.size();
    if (m < 4) throw std::invalid_argument("halfspace_intersection_3d: need >= 4 halfspaces");
    std::vector<Vec3> dual(m);
    for (std::size_t i = 0; i < m; ++i) {
        double margin = offsets[i] - normals[i].dot(interior);
        if (margin <= 0.0)
            throw std::runtime_error("halfspace_intersection_3d: interior point not strictly inside");
        dual[i] = normals[i] / margin;
    }
    Hull3D h = hull3d(dual);
    if (h.degenerate) throw std::runtime_error("halfspace_intersection_3d: degenerate dual hull");
    // each dual facet -> primal vertex by solving the three active constraints
    std::vector<Vec3> verts;
    verts.reserve(h.faces.size());
    for (const auto& f : h.faces) {
        Eigen::Matrix3d A;
        Eigen::Vector3d b;
        for (int r = 0; r < 3; ++r) {
            A.row(r) = normals[f[r]].transpose();
            b[r] = offsets[f[r]] - normals[f[r]].dot(interior);
        }
        double det = A.determinant();
        if (std::abs(det) < 1e-14) continue;
        Vec3 x = A.partialPivLu().solve(b);
        verts.push_back(x + interior);
    }
    // coplanar dual facets produce duplicate vertices; dedup
    std::sort(verts.begin(), verts.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        if (a.y() != b.y()) return a.y() < b.y();
        return a.z() < b.z();
    });
    std::vector<Vec3> uniq;
    for (const auto& v : verts) {
        if (uniq.empty() || (uniq.back() - v).norm() > 1e-9) uniq.push_back(v);
    }
    return uniq;
}

}  // namespace affsurf
