#include <doctest.h>

#include <cmath>

#include "affsurf/hull.hpp"
#include "affsurf/rng.hpp"

using namespace affsurf;

TEST_CASE("hull2d drops interior and collinear points") {
    std::vector<Vec2> pts = {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}, {2, 1}};
    auto h = hull2d(pts);
    CHECK(h.size() == 4);
    CHECK(polygon_area(h) == doctest::Approx(4.0));
}

TEST_CASE("polygon moments of a triangle") {
    std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
    double area;
    Vec2 cen;
    polygon_moments(tri, area, cen);
    CHECK(area == doctest::Approx(0.5));
    CHECK(cen.x() == doctest::Approx(1.0 / 3.0));
    CHECK(cen.y() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("clip_polygon halves a square") {
    std::vector<Vec2> sq = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    auto c = clip_polygon(sq, Vec2(1, 0), 0.0);
    CHECK(polygon_area(c) == doctest::Approx(2.0));
}

TEST_CASE("halfplane intersection reproduces the square and prunes redundant planes") {
    std::vector<Vec2> ns = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 0}};
    std::vector<double> cs = {1, 1, 1, 1, 5};  // last is redundant
    auto poly = halfplane_intersection(ns, cs, Vec2(0, 0));
    CHECK(poly.size() == 4);
    CHECK(polygon_area(poly) == doctest::Approx(4.0));
    CHECK(polygon_area(poly) > 0);  // CCW orientation
}

TEST_CASE("halfplane intersection rejects exterior reference point") {
    std::vector<Vec2> ns = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<double> cs = {1, 1, 1, 1};
    CHECK_THROWS(halfplane_intersection(ns, cs, Vec2(3, 0)));
}

TEST_CASE("hull3d: cube volume and merged facets") {
    std::vector<Vec3> pts;
    for (int s = 0; s < 8; ++s)
        pts.push_back(Vec3(s & 1 ? 1 : -1, s & 2 ? 1 : -1, s & 4 ? 1 : -1));
    Hull3D h = hull3d(pts);
    CHECK(!h.degenerate);
    CHECK(h.volume == doctest::Approx(8.0));
    auto facets = h.merged_facets();
    CHECK(facets.size() == 6);
    for (const auto& [n, area] : facets) CHECK(area == doctest::Approx(4.0));
}

TEST_CASE("hull3d: standard simplex volume 1/6") {
    std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Hull3D h = hull3d(pts);
    CHECK(h.volume == doctest::Approx(1.0 / 6.0));
    CHECK(h.faces.size() == 4);
}

TEST_CASE("hull3d flags planar input as degenerate") {
    std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.3, 0.2, 0}};
    Hull3D h = hull3d(pts);
    CHECK(h.degenerate);
    CHECK(h.volume == 0.0);
}

TEST_CASE("hull3d on random sphere points approaches the ball volume from inside") {
    Rng rng(42);
    std::vector<Vec3> pts;
    for (int i = 0; i < 800; ++i) {
        Vec v = rng.unit_vec(3);
        pts.push_back(Vec3(v[0], v[1], v[2]));
    }
    Hull3D h = hull3d(pts);
    double ball = 4.0 * kPi / 3.0;
    CHECK(h.volume < ball);
    CHECK(h.volume > 0.9 * ball);
    // every input point is extreme for a sphere sample
    CHECK(h.faces.size() == 2 * pts.size() - 4);
}

TEST_CASE("halfspace_intersection_3d recovers cube vertices") {
    std::vector<Vec3> ns = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<double> cs(6, 1.0);
    auto verts = halfspace_intersection_3d(ns, cs, Vec3(0, 0, 0));
    CHECK(verts.size() == 8);
    for (const auto& v : verts) {
        CHECK(std::abs(std::abs(v.x()) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(v.y()) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(v.z()) - 1.0) < 1e-12);
    }
}
