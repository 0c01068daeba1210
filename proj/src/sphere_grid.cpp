#include "affsurf/sphere_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace affsurf {

SphereGrid SphereGrid::circle(int n_dirs) {
    if (n_dirs < 4 || n_dirs % 2 != 0) throw std::invalid_argument("circle grid: need even N >= 4");
    SphereGrid g;
    g.dim = 2;
    g.kind = "circle";
    g.param = n_dirs;
    g.dirs.reserve(n_dirs);
    g.weights.assign(n_dirs, 2.0 * kPi / n_dirs);
    for (int k = 0; k < n_dirs; ++k) {
        double th = 2.0 * kPi * (k + 0.5) / n_dirs;
        g.dirs.push_back(vec2(std::cos(th), std::sin(th)));
    }
    return g;
}

SphereGrid SphereGrid::fibonacci(int n_dirs) {
    if (n_dirs < 8 || n_dirs % 2 != 0) throw std::invalid_argument("fibonacci grid: need even N >= 8");
    SphereGrid g;
    g.dim = 3;
    g.kind = "fibonacci";
    g.param = n_dirs;
    int m = n_dirs / 2;
    const double golden = kPi * (std::sqrt(5.0) + 1.0);
    g.dirs.reserve(n_dirs);
    for (int i = 0; i < m; ++i) {
        double z = (i + 0.5) / m;  // upper half only, axis avoided
        double r = std::sqrt(1.0 - z * z);
        double phi = golden * i + 0.5;
        g.dirs.push_back(vec3(r * std::cos(phi), r * std::sin(phi), z));
    }
    for (int i = 0; i < m; ++i) g.dirs.push_back(-g.dirs[i]);
    g.weights.assign(n_dirs, 4.0 * kPi / n_dirs);
    return g;
}

namespace {

// Golub-Welsch is overkill at these sizes; Newton on Legendre polynomials.
void legendre_nodes(int m, std::vector<double>& x, std::vector<double>& w) {
    x.resize(m);
    w.resize(m);
    for (int i = 0; i < m; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = m * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= m; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = m * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

SphereGrid SphereGrid::gauss_product(int m) {
    if (m < 2) throw std::invalid_argument("gauss grid: need m >= 2");
    SphereGrid g;
    g.dim = 3;
    g.kind = "gauss";
    g.param = m;
    std::vector<double> xz, wz;
    legendre_nodes(m, xz, wz);
    int n_phi = 2 * m;
    double wphi = 2.0 * kPi / n_phi;
    for (int i = 0; i < m; ++i) {
        double ct = xz[i];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * kPi * (j + 0.5) / n_phi;
            g.dirs.push_back(vec3(st * std::cos(phi), st * std::sin(phi), ct));
            g.weights.push_back(wz[i] * wphi);
        }
    }
    return g;
}

SphereGrid SphereGrid::standard(int dim) {
    if (dim == 2) return circle(4096);
    if (dim == 3) return fibonacci(8192);
    throw std::invalid_argument("standard grid: only n in {2,3}");
}

SphereGrid SphereGrid::refined(double factor) const {
    int p = std::max(4, static_cast<int>(param * factor));
    if (p % 2 != 0) ++p;
    if (kind == "circle") return circle(p);
    if (kind == "fibonacci") return fibonacci(p);
    if (kind == "gauss") return gauss_product(std::max(2, static_cast<int>(param * factor)));
    throw std::logic_error("refined: unknown grid kind");
}

void SphereGrid::validate() const {
    double s = 0.0;
    for (double w : weights) {
        if (w <= 0.0) throw std::runtime_error("sphere grid: nonpositive weight");
        s += w;
    }
    if (std::abs(s - sphere_area(dim)) > 1e-9)
        throw std::runtime_error("sphere grid: weights do not sum to sphere area");
}

}  // namespace affsurf
