#pragma once

#include <string>
#include <vector>

#include "affsurf/linalg.hpp"

namespace affsurf {

// Symmetric direction/weight set on S^{n-1}. Weights sum to the sphere area,
// the direction set is closed under negation, and no direction lies on a
// coordinate axis (half-step offsets), which keeps quadrature nodes off the
// exception sets of the shipped bodies.
class SphereGrid {
public:
    int dim = 0;
    std::vector<Vec> dirs;
    std::vector<double> weights;
    std::string kind;  // "circle" | "fibonacci" | "gauss"
    int param = 0;

    // n = 2: N equally spaced angles theta_k = 2 pi (k + 1/2) / N, N even.
    static SphereGrid circle(int n_dirs);

    // n = 3: Fibonacci spiral on the upper half plus antipodes, equal weights.
    static SphereGrid fibonacci(int n_dirs);

    // n = 3: Gauss-Legendre in cos(theta) x trapezoid in phi. Spectrally
    // accurate for smooth integrands; 2*m*m points.
    static SphereGrid gauss_product(int m);

    // Default family used across the library: circle(4096) for n = 2,
    // fibonacci(8192) for n = 3.
    static SphereGrid standard(int dim);

    // Same family at a different resolution (for refinement estimates).
    SphereGrid refined(double factor) const;

    std::size_t size() const { return dirs.size(); }
    void validate() const;
};

}  // namespace affsurf
