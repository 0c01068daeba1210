#include <doctest.h>

#include <cmath>

#include "affsurf/body_ops.hpp"
#include "affsurf/rng.hpp"

using namespace affsurf;

namespace {
const SphereGrid& grid2() {
    static SphereGrid g = SphereGrid::circle(4096);
    return g;
}
}  // namespace

TEST_CASE("support: unit ball, cube vertex maximizer, ellipse closed form") {
    CHECK(support(make_ball(2), vec2(1, 0)) == doctest::Approx(1.0));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(support(make_cube(2), vec2(s, s)) == doctest::Approx(std::sqrt(2.0)));
    // ellipse semi-axes (2,1): h(u) = sqrt(4 cos^2 + sin^2); theta = pi/4 -> sqrt(5/2)
    ConvexBody ell = make_ellipsoid({2.0, 1.0});
    double th = kPi / 4.0;
    CHECK(support(ell, vec2(std::cos(th), std::sin(th))) ==
          doctest::Approx(std::sqrt(5.0 / 2.0)).epsilon(1e-12));
    // dense vertex-sampling oracle
    double best = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double phi = 2.0 * kPi * i / 20000.0;
        best = std::max(best, 2.0 * std::cos(phi) * std::cos(th) + std::sin(phi) * std::sin(th));
    }
    CHECK(support(ell, vec2(std::cos(th), std::sin(th))) == doctest::Approx(best).epsilon(1e-7));
}

TEST_CASE("support: generic scan path agrees with the closed form") {
    ConvexBody ell = make_ellipsoid({2.0, 1.0});
    SmoothBody generic = *ell.as_smooth();
    generic.support = nullptr;  // force the scan + refine path
    ConvexBody gbody(std::move(generic), "generic");
    for (double th : {0.3, 1.1, 2.7, 4.0}) {
        Vec u = vec2(std::cos(th), std::sin(th));
        CHECK(support(gbody, u) == doctest::Approx(support(ell, u)).epsilon(1e-9));
    }
}

TEST_CASE("polar: cube maps to cross-polytope, bipolar identity, origin errors") {
    ConvexBody cube = make_cube(3);
    ConvexBody cross = polar_polytope(cube);
    const VPolytope* v = cross.as_vpoly();
    REQUIRE(v != nullptr);
    CHECK(v->vertices().size() == 6);
    for (const auto& x : v->vertices()) CHECK(x.norm() == doctest::Approx(1.0));

    // random simplex containing 0: (P*)* = P up to vertex permutation
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Vec> verts;
        for (int i = 0; i < 3; ++i) {
            double a = 2.0 * kPi * (i + 0.2 + 0.5 * rng.uniform()) / 3.0;
            double r = 0.7 + rng.uniform();
            verts.push_back(vec2(r * std::cos(a), r * std::sin(a)));
        }
        ConvexBody p = make_vpolytope(verts);
        ConvexBody pp = polar_polytope(polar_polytope(p));
        const VPolytope* q = pp.as_vpoly();
        REQUIRE(q != nullptr);
        REQUIRE(q->vertices().size() == verts.size());
        for (const auto& a : p.as_vpoly()->vertices()) {
            double best = 1e300;
            for (const auto& b : q->vertices()) best = std::min(best, (a - b).norm());
            CHECK(best < 1e-9);
        }
    }

    // origin outside: translated square
    std::vector<Vec> far = {vec2(2, 2), vec2(3, 2), vec2(3, 3), vec2(2, 3)};
    CHECK_THROWS(polar_polytope(make_vpolytope(far)));
}

TEST_CASE("radial: ball, cube diagonal, ellipse vs bisection oracle") {
    CHECK(radial(make_ball(3), unit(vec3(0.3, -1.0, 0.5))) == doctest::Approx(1.0));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(radial(make_cube(2), vec2(s, s)) == doctest::Approx(std::sqrt(2.0)));
    ConvexBody ell = make_ellipsoid({2.0, 1.0});
    SmoothBody generic = *ell.as_smooth();
    generic.radial = nullptr;  // bisection oracle
    ConvexBody gbody(std::move(generic), "generic");
    for (double th : {0.2, 0.9, 2.2, 5.0}) {
        Vec xi = vec2(std::cos(th), std::sin(th));
        double expected = 1.0 / std::sqrt(std::pow(std::cos(th) / 2.0, 2) + std::pow(std::sin(th), 2));
        CHECK(radial(ell, xi) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(radial(gbody, xi) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("moments: cube exact, disk Monte Carlo, B_1.5 two independent estimators") {
    Moments mc = moments(make_cube(3));
    CHECK(mc.volume == doctest::Approx(8.0));
    CHECK(mc.centroid.norm() < 1e-12);
    CHECK(mc.method == "exact");

    Moments md = moments(make_ball(2), 200000, 11);
    CHECK(std::abs(md.volume - kPi) < 3.0 * md.stderr_volume);
    CHECK(md.method == "monte_carlo");

    ConvexBody b15 = make_bpn(2, 1.5);
    Moments quad = moments_quadrature(b15, grid2());
    Moments mcq = moments(b15, 400000, 12);
    CHECK(std::abs(quad.volume - mcq.volume) < 3.0 * mcq.stderr_volume);
    CHECK(quad.volume == doctest::Approx(2.7378536239189029).epsilon(1e-9));
}

TEST_CASE("body_distance: hausdorff and symmetric difference") {
    double d = body_distance(make_ball(2), make_ball(2, 2.0), DistanceMode::Hausdorff, grid2());
    CHECK(d == doctest::Approx(1.0));

    double se = 0.0;
    ConvexBody cube = make_cube(2);
    double ds = body_distance(cube, cube, DistanceMode::SymDiff, grid2(), 100000, 3, &se);
    CHECK(ds <= 3.0 * se + 1e-12);

    // unit square vs 1 x 2 box: symmetric difference 1
    ConvexBody a = make_vpolytope({vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)});
    ConvexBody b = make_vpolytope({vec2(0, 0), vec2(1, 0), vec2(1, 2), vec2(0, 2)});
    double dab = body_distance(a, b, DistanceMode::SymDiff, grid2(), 200000, 4, &se);
    CHECK(std::abs(dab - 1.0) < 3.0 * se);
}

TEST_CASE("hausdorff is a metric on a small family") {
    std::vector<ConvexBody> fam = {make_ball(2), make_cube(2),
                                   make_vpolytope({vec2(0, 0), vec2(1.5, 0), vec2(0.4, 1.2)})};
    for (const auto& a : fam)
        for (const auto& b : fam) {
            double dab = body_distance(a, b, DistanceMode::Hausdorff, grid2());
            double dba = body_distance(b, a, DistanceMode::Hausdorff, grid2());
            CHECK(dab == doctest::Approx(dba).epsilon(1e-12));
            for (const auto& c : fam) {
                double dac = body_distance(a, c, DistanceMode::Hausdorff, grid2());
                double dcb = body_distance(c, b, DistanceMode::Hausdorff, grid2());
                CHECK(dab <= dac + dcb + 1e-9);
            }
        }
}

TEST_CASE("minkowski sum: identity, square doubling, zonotope from segments") {
    ConvexBody sq = make_cube(2);
    ConvexBody zero = make_vpolytope({vec2(0, 0)});
    ConvexBody s1 = minkowski_sum(sq, zero);
    for (const auto& u : grid2().dirs)
        CHECK(support(s1, u) == doctest::Approx(support(sq, u)).epsilon(1e-12));

    ConvexBody s2 = minkowski_sum(sq, sq);
    CHECK(support(s2, vec2(1, 0)) == doctest::Approx(2.0));
    CHECK(moments(s2).volume == doctest::Approx(16.0));

    ConvexBody seg_x = make_vpolytope({vec2(0, 0), vec2(1, 0)});
    ConvexBody seg_y = make_vpolytope({vec2(0, 0), vec2(0, 1)});
    ConvexBody unitsq = minkowski_sum(seg_x, seg_y);
    CHECK(moments(unitsq).volume == doctest::Approx(1.0));

    // support subadditivity h_{P + Q} = h_P + h_Q on the grid
    ConvexBody tri = make_vpolytope({vec2(0, 0), vec2(1, 0), vec2(0.2, 0.9)});
    ConvexBody ms = minkowski_sum(sq, tri);
    for (std::size_t i = 0; i < grid2().size(); i += 37) {
        const Vec& u = grid2().dirs[i];
        CHECK(std::abs(support(ms, u) - support(sq, u) - support(tri, u)) < 1e-9);
    }
}

TEST_CASE("surface measure: cube, triangle, closedness on random simplices") {
    auto sm3 = surface_measure(make_cube(3));
    CHECK(sm3.atoms.size() == 6);
    for (const auto& [n, m] : sm3.atoms) CHECK(m == doctest::Approx(4.0));
    CHECK(sm3.total_mass() == doctest::Approx(24.0));

    auto smt = surface_measure(make_vpolytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)}));
    std::vector<double> masses;
    for (const auto& [n, m] : smt.atoms) masses.push_back(m);
    std::sort(masses.begin(), masses.end());
    CHECK(masses[0] == doctest::Approx(1.0));
    CHECK(masses[1] == doctest::Approx(1.0));
    CHECK(masses[2] == doctest::Approx(std::sqrt(2.0)));

    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec> verts;
        for (int i = 0; i < 4; ++i) verts.push_back(rng.normal_vec(3));
        ConvexBody simp = make_vpolytope(verts);
        Vec closed = Vec::Zero(3);
        for (const auto& [n, m] : surface_measure(simp).atoms) closed += m * n;
        CHECK(closed.norm() < 1e-9);
    }
}

TEST_CASE("mixed volume V1: diagonal equals volume, Steiner cross-check, monotonicity") {
    ConvexBody sq = make_cube(2);
    CHECK(mixed_volume_v1(sq, sq, grid2()) == doctest::Approx(4.0).epsilon(1e-9));

    ConvexBody disk = make_ball(2);
    double v1 = mixed_volume_v1(sq, disk, grid2());
    CHECK(v1 == doctest::Approx(4.0));  // perimeter 8 / n

    // finite-difference oracle on polytope pairs: (vol(K+eC)-vol(K))/(n e)
    ConvexBody tri = make_vpolytope({vec2(0, 0), vec2(1, 0), vec2(0.2, 0.9)});
    double v1_atoms = mixed_volume_v1(sq, tri, grid2());
    auto fd = [&](double eps) {
        std::vector<Vec> scaled;
        for (const auto& v : tri.as_vpoly()->vertices()) scaled.push_back(eps * v);
        ConvexBody sum = minkowski_sum(sq, make_vpolytope(scaled));
        return (moments(sum).volume - 4.0) / (2.0 * eps);
    };
    double f1 = fd(1e-3), f2 = fd(5e-4);
    double extrap = 2.0 * f2 - f1;
    CHECK(v1_atoms == doctest::Approx(extrap).epsilon(0.01));

    // V1(B, segment) grows with the segment length
    double prev = 0.0;
    for (double len : {0.5, 1.0, 2.0}) {
        ConvexBody seg = make_vpolytope({vec2(0, 0), vec2(len, 0)});
        double v = mixed_volume_v1(disk, seg, grid2());
        CHECK(v >= prev);
        CHECK(v == doctest::Approx(len).epsilon(1e-3));  // (1/2) len * int_{u1>0} u1 = len
        prev = v;
    }
}

TEST_CASE("projection body support: widths in 2d, shadows in 3d") {
    CHECK(projection_body_support(make_ball(2), vec2(0, 1)) == doctest::Approx(2.0));
    CHECK(projection_body_support(make_cube(2), vec2(1, 0)) == doctest::Approx(2.0));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(projection_body_support(make_cube(2), vec2(s, s)) == doctest::Approx(2.0 * std::sqrt(2.0)));

    // sphere shadow is a disk of area pi (Monte Carlo)
    double se = 0.0;
    double shadow = projection_body_support(make_ball(3), unit(vec3(1, 2, 3)), 40000, 5, &se);
    CHECK(std::abs(shadow - kPi) < 3.0 * se);

    // ellipsoid closed form: pi a b c |A^{-1} xi|
    ConvexBody ell = make_ellipsoid({1.5, 1.0, 0.75});
    Vec xi = unit(vec3(0.2, -1.0, 0.4));
    double expected =
        kPi * 1.5 * 1.0 * 0.75 *
        std::sqrt(std::pow(xi[0] / 1.5, 2) + std::pow(xi[1], 2) + std::pow(xi[2] / 0.75, 2));
    double est = projection_body_support(ell, xi, 60000, 6, &se);
    CHECK(std::abs(est - expected) < 3.0 * se);
}

TEST_CASE("steiner symmetrization: fixed point, volume preservation, rounding trend") {
    // ball is fixed
    auto r = steiner_symmetrize(make_ball(2), vec2(std::cos(0.4), std::sin(0.4)), 1024);
    CHECK(!r.coarse_warning);
    double dh = body_distance(r.body, make_ball(2), DistanceMode::Hausdorff, grid2());
    CHECK(dh < 2e-5);

    // triangle volume preserved exactly through the breakpoint construction
    ConvexBody tri = make_vpolytope({vec2(0, 0), vec2(2, 0), vec2(0, 2)});
    auto rt = steiner_symmetrize(tri, vec2(0, 1));
    CHECK(rt.volume_after == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(!rt.coarse_warning);

    // repeated symmetrization of a random quadrilateral approaches the
    // volume-matched disk (trend assertion)
    ConvexBody k = make_vpolytope({vec2(-1.2, -0.4), vec2(1.5, -0.8), vec2(1.1, 0.9), vec2(-0.7, 1.3)});
    double vol = moments(k).volume;
    double rad = std::sqrt(vol / kPi);
    ConvexBody target = make_ball(2, rad);
    double first = body_distance(k, target, DistanceMode::Hausdorff, grid2());
    double prev = first;
    int improved = 0;
    Rng rng(23);
    for (int round = 0; round < 50; ++round) {
        double th = kPi * round / 7.3 + 0.3;
        k = steiner_symmetrize(k, vec2(std::cos(th), std::sin(th))).body;
        double d = body_distance(k, target, DistanceMode::Hausdorff, grid2());
        if (d <= prev + 1e-9) ++improved;
        prev = d;
    }
    CHECK(improved >= 45);   // nonincreasing up to grid noise
    CHECK(prev < 0.2 * first);
}

TEST_CASE("sphere grid invariants") {
    for (const SphereGrid& g :
         {SphereGrid::circle(4096), SphereGrid::fibonacci(8192), SphereGrid::gauss_product(32)}) {
        g.validate();
        // closed under negation
        int miss = 0;
        for (std::size_t i = 0; i < g.size(); i += 97) {
            bool found = false;
            for (std::size_t j = 0; j < g.size(); ++j)
                if ((g.dirs[i] + g.dirs[j]).norm() < 1e-9) {
                    found = true;
                    break;
                }
            if (!found) ++miss;
        }
        CHECK(miss == 0);
    }
}

TEST_CASE("invalid bodies are rejected") {
    CHECK_THROWS(make_ellipsoid({1.0, -2.0}));
    CHECK_THROWS(make_bpn(2, 1.0));
    CHECK_THROWS(make_hpolytope({{vec2(1, 0), 1.0}, {vec2(-1, 0), -2.0}}, 2));  // empty
    // unbounded: only lower bounds
    CHECK_THROWS(make_hpolytope({{vec2(1, 0), 1.0}, {vec2(0, 1), 1.0}}, 2));
    CHECK_THROWS(StarBody(SphereGrid::circle(64), std::vector<double>(64, -1.0)));
}
