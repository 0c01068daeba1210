#include "affsurf/random_approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affsurf/affine_surface.hpp"

namespace affsurf {

std::vector<Vec> sample_interior(const ConvexBody& k, std::int64_t count, std::uint64_t seed,
                                 double* acceptance) {
    const int n = k.dim();
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        hi[i] = support(k, e);
        lo[i] = -support(k, Vec(-e));
    }
    Rng rng = Rng::stream(seed, 0x494e5445ULL);  // "INTE"
    std::vector<Vec> pts;
    pts.reserve(count);
    std::int64_t proposals = 0;
    Vec x(n);
    while (static_cast<std::int64_t>(pts.size()) < count) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        ++proposals;
        if (contains(k, x, 0.0)) pts.push_back(x);
        if (proposals > 1000 && static_cast<double>(pts.size()) / proposals < 1e-3)
            throw std::runtime_error("sample_interior: acceptance rate below 1e-3");
    }
    if (acceptance) *acceptance = static_cast<double>(count) / proposals;
    return pts;
}

void BoundaryDensity::normalize() {
    KahanSum s;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s.add(grid.weights[i] * jacobians[i] * values[i]);
    normalization = s.value();
    if (!(normalization > 0)) throw std::runtime_error("BoundaryDensity: unnormalizable");
    for (auto& v : values) v /= normalization;
    normalization = 1.0;
}

BoundaryDensity uniform_density(const ConvexBody& k, const SphereGrid& grid) {
    return density_from(k, grid, [](const Vec&) { return 1.0; });
}

BoundaryDensity density_from(const ConvexBody& k, const SphereGrid& grid,
                             const std::function<double(const Vec&)>& g) {
    BoundaryDensity f;
    f.grid = grid;
    f.values.resize(grid.size());
    f.jacobians.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
        double v = g(hit.x);
        if (v < 0) throw std::invalid_argument("density_from: negative density");
        f.values[i] = v;
        f.jacobians[i] = hit.jacobian;
    }
    f.normalize();
    return f;
}

BoundaryDensity asa_density(const ConvexBody& k, const SphereGrid& grid) {
    BoundaryDensity f;
    f.grid = grid;
    f.values.resize(grid.size());
    f.jacobians.resize(grid.size());
    KahanSum as_sum;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
        double v = std::pow(std::max(hit.kappa, 0.0), 1.0 / (k.dim() + 1));
        f.values[i] = v;
        f.jacobians[i] = hit.jacobian;
        as_sum.add(grid.weights[i] * hit.jacobian * v);
    }
    if (as_sum.value() <= 1e-12) throw std::runtime_error("asa_density: zero affine surface area");
    f.normalize();
    return f;
}

std::vector<Vec> sample_boundary(const ConvexBody& k, const BoundaryDensity& f, std::int64_t count,
                                 std::uint64_t seed) {
    const int n = k.dim();
    if (std::abs(f.normalization - 1.0) > 1e-9)
        throw std::invalid_argument("sample_boundary: density not normalized");
    Rng rng = Rng::stream(seed, 0x42445f46ULL);  // "BD_F"
    std::vector<Vec> pts;
    pts.reserve(count);
    const auto& grid = f.grid;
    if (n == 2) {
        // inverse CDF over the angle: cell masses w * J * f
        std::vector<double> cum = {0.0};
        for (std::size_t i = 0; i < grid.size(); ++i)
            cum.push_back(cum.back() + grid.weights[i] * f.jacobians[i] * f.values[i]);
        double total = cum.back();
        const double dth = 2.0 * kPi / grid.size();
        for (std::int64_t s = 0; s < count; ++s) {
            double u = rng.uniform() * total;
            std::size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() - 1;
            if (i >= grid.size()) i = grid.size() - 1;
            double frac = (u - cum[i]) / (cum[i + 1] - cum[i]);
            double th = (2.0 * kPi * (i + 0.5) / grid.size()) + (frac - 0.5) * dth;
            Vec xi = vec2(std::cos(th), std::sin(th));
            pts.push_back(radial(k, xi) * xi);
        }
        return pts;
    }
    // n = 3: rejection against w * J * f with a uniform grid-cell proposal
    double m_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        m_max = std::max(m_max, f.jacobians[i] * f.values[i]);
    m_max *= 1.0000001;
    while (static_cast<std::int64_t>(pts.size()) < count) {
        Vec xi = rng.unit_vec(n);
        BoundaryHit hit = boundary_hit(k, xi);
        double density_here = hit.jacobian;
        // interpolate f at the nearest grid direction (grids are fine enough
        // for the shipped rolling family where f is smooth)
        double best = -2.0;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double d = xi.dot(grid.dirs[i]);
            if (d > best) {
                best = d;
                best_i = i;
            }
        }
        density_here *= f.values[best_i];
        if (rng.uniform() * m_max <= density_here) pts.push_back(hit.x);
    }
    return pts;
}

double hull_volume(const std::vector<Vec>& points) {
    if (points.empty()) return 0.0;
    const int n = static_cast<int>(points.front().size());
    if (static_cast<int>(points.size()) < n + 1) return 0.0;
    if (n == 2) {
        std::vector<Vec2> p2;
        p2.reserve(points.size());
        for (const auto& p : points) p2.push_back(Vec2(p[0], p[1]));
        auto h = hull2d(p2);
        return std::abs(polygon_area(h));
    }
    if (n == 3) {
        std::vector<Vec3> p3;
        p3.reserve(points.size());
        for (const auto& p : points) p3.push_back(Vec3(p[0], p[1], p[2]));
        Hull3D h = hull3d(p3);
        return h.degenerate ? 0.0 : h.volume;
    }
    throw std::invalid_argument("hull_volume: n in {2,3}");
}

double ranpol1_constant(int n) {
    double vol_bn1 = ball_volume(n - 1);
    double num = (n + 3.0) * std::tgamma(n + 2.0);  // (n+1)!
    double den = (static_cast<double>(n) * n + n + 2.0) * (static_cast<double>(n) * n + 1.0) *
                 std::tgamma((static_cast<double>(n) * n + 1.0) / (n + 1.0));
    return 2.0 * std::pow(vol_bn1 / (n + 1.0), 2.0 / (n + 1.0)) * num / den;
}

double ranpol2_constant(int n) {
    if (n < 3)
        throw std::invalid_argument("ranpol2_constant: printed formula degenerates for n = 2");
    double s = sphere_area(n - 1);  // vol_{n-2} of the boundary of B_2^{n-1}
    return std::pow(n - 1.0, (n + 1.0) / (n - 1.0)) * std::tgamma(n + 1.0 + 2.0 / (n - 1.0)) /
           (2.0 * std::tgamma(n + 2.0) * std::pow(s, 2.0 / (n - 1.0)));
}

double ranpol2_reference(const ConvexBody& k, const BoundaryDensity& f) {
    const int n = k.dim();
    double c_n = ranpol2_constant(n);
    const auto& grid = f.grid;
    KahanSum s;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BoundaryHit hit = boundary_hit(k, grid.dirs[i]);
        double integrand = std::pow(std::max(hit.kappa, 0.0), 1.0 / (n - 1.0)) /
                           std::pow(f.values[i], 2.0 / (n - 1.0));
        s.add(grid.weights[i] * hit.jacobian * integrand);
    }
    return c_n * s.value();
}

namespace {

void fit_curve(DeficitCurve& curve, double beta) {
    // log-log slope by least squares
    const std::size_t m = curve.n_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::log(static_cast<double>(curve.n_values[i]));
        double y = std::log(curve.mean_deficit[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    curve.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    (void)beta;
}

}  // namespace

double ranpol1_replicate_deficit(const ConvexBody& k, double vol_k, std::int64_t n_points,
                                 std::uint64_t seed, int replicate) {
    // replicate-keyed stream: identical for any evaluation order
    auto pts = sample_interior(
        k, n_points, mix64(seed) ^ mix64(0x5250315full + n_points * 1315423911ull + replicate));
    return vol_k - hull_volume(pts);
}

DeficitCurve ranpol1_estimate(const ConvexBody& k, const std::vector<std::int64_t>& n_list,
                              int replicates, std::uint64_t seed) {
    const int n = k.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("ranpol1_estimate: n in {2,3}");
    double vol_k = volume(k);
    double c_n = ranpol1_constant(n);
    DeficitCurve curve;
    curve.n_values = n_list;
    curve.replicates = replicates;
    curve.seed = seed;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
        std::int64_t nn = n_list[j];
        KahanSum sum, sum2;
        for (int r = 0; r < replicates; ++r) {
            double d = ranpol1_replicate_deficit(k, vol_k, nn, seed, r);
            sum.add(d);
            sum2.add(d * d);
        }
        double mean = sum.value() / replicates;
        double var = std::max(0.0, sum2.value() / replicates - mean * mean);
        curve.mean_deficit.push_back(mean);
        curve.stderr_deficit.push_back(std::sqrt(var / replicates));
    }
    fit_curve(curve, 2.0 / (n + 1.0));
    auto normalized = [&](std::size_t i) {
        return c_n * curve.mean_deficit[i] /
               std::pow(vol_k / curve.n_values[i], 2.0 / (n + 1.0));
    };
    std::size_t last = n_list.size() - 1;
    curve.limit_raw = normalized(last);
    if (n_list.size() >= 2 && n_list[last] == 2 * n_list[last - 1]) {
        // Richardson with error ~ N^{-beta}, beta = 2/(n+1)
        double r = std::pow(2.0, -2.0 / (n + 1.0));
        curve.limit_extrapolated = (normalized(last) - r * normalized(last - 1)) / (1.0 - r);
    } else {
        curve.limit_extrapolated = curve.limit_raw;
    }
    curve.limit_stderr = c_n * curve.stderr_deficit[last] /
                         std::pow(vol_k / curve.n_values[last], 2.0 / (n + 1.0));
    return curve;
}

DeficitCurve ranpol2_estimate(const ConvexBody& k, const BoundaryDensity& f,
                              const std::vector<std::int64_t>& n_list, int replicates,
                              std::uint64_t seed) {
    const int n = k.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("ranpol2_estimate: n in {2,3}");
    double vol_k = volume(k);
    DeficitCurve curve;
    curve.n_values = n_list;
    curve.replicates = replicates;
    curve.seed = seed;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
        std::int64_t nn = n_list[j];
        KahanSum sum, sum2;
        for (int r = 0; r < replicates; ++r) {
            auto pts =
                sample_boundary(k, f, nn, mix64(seed) ^ mix64(0x52503266ull + nn * 2654435761ull + r));
            double d = vol_k - hull_volume(pts);
            sum.add(d);
            sum2.add(d * d);
        }
        double mean = sum.value() / replicates;
        double var = std::max(0.0, sum2.value() / replicates - mean * mean);
        curve.mean_deficit.push_back(mean);
        curve.stderr_deficit.push_back(std::sqrt(var / replicates));
    }
    fit_curve(curve, 2.0 / (n - 1.0));
    auto normalized = [&](std::size_t i) {
        return curve.mean_deficit[i] * std::pow(static_cast<double>(curve.n_values[i]), 2.0 / (n - 1.0));
    };
    std::size_t last = n_list.size() - 1;
    curve.limit_raw = normalized(last);
    if (n_list.size() >= 2 && n_list[last] == 2 * n_list[last - 1]) {
        double r = std::pow(2.0, -2.0 / (n + 1.0));
        curve.limit_extrapolated = (normalized(last) - r * normalized(last - 1)) / (1.0 - r);
    } else {
        curve.limit_extrapolated = curve.limit_raw;
    }
    curve.limit_stderr =
        curve.stderr_deficit[last] * std::pow(static_cast<double>(curve.n_values[last]), 2.0 / (n - 1.0));
    return curve;
}

std::vector<BestApproxRow> disk_best_approx(const std::vector<std::int64_t>& n_list) {
    std::vector<BestApproxRow> out;
    for (std::int64_t n : n_list) {
        if (n < 3) throw std::invalid_argument("disk_best_approx: need N >= 3");
        BestApproxRow row;
        row.n = n;
        row.deficit = kPi - 0.5 * n * std::sin(2.0 * kPi / n);
        row.del1_estimate = 2.0 * n * static_cast<double>(n) * row.deficit / std::pow(2.0 * kPi, 3);
        out.push_back(row);
    }
    return out;
}

}  // namespace affsurf
