#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace affsurf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) accumulator. Grid sums use it so results do not
// depend on how the terms would be grouped.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

inline Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

inline Vec vec3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

inline double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// Rotate by +90 degrees.
inline Vec perp2(const Vec& v) { return vec2(-v[1], v[0]); }

inline Vec unit(const Vec& v) {
    double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("unit: zero vector");
    return v / n;
}

// vol_n(B_2^n)
inline double ball_volume(int n) {
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// vol_{n-1}(boundary of B_2^n) = n * vol_n(B_2^n)
inline double sphere_area(int n) { return n * ball_volume(n); }

// Adjugate (transposed cofactor matrix; equal to cof for symmetric input).
inline Mat adjugate(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 1) return Mat::Identity(1, 1);
    Mat adj(n, n);
    Mat minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int r = 0;
            for (int ii = 0; ii < n; ++ii) {
                if (ii == i) continue;
                int c = 0;
                for (int jj = 0; jj < n; ++jj) {
                    if (jj == j) continue;
                    minor(r, c) = a(ii, jj);
                    ++c;
                }
                ++r;
            }
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(j, i) = sign * minor.determinant();
        }
    }
    return adj;
}

// Golden-section minimizer for a unimodal function on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, int iters = 120) {
    const double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int k = 0; k < iters && (b - a) > 1e-15 * (std::abs(a) + std::abs(b) + 1.0); ++k) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
double golden_max(F&& f, double lo, double hi, int iters = 120) {
    return golden_min([&](double x) { return -f(x); }, lo, hi, iters);
}

}  // namespace affsurf
