// quadrature.hpp -- Gauss-Legendre rules on [-1,1] and mapped intervals
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace emh {

struct QuadRule1D {
    std::vector<double> nodes;   // ascending in (-1,1)
    std::vector<double> weights; // sum to 2
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n. Good to machine
/// precision for the orders used here (n <= a few hundred).
inline QuadRule1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    QuadRule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < (n + 1) / 2; ++k) {
        // Chebyshev-like initial guess for the k-th root (descending order)
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        double pd = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pd = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pd;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pd * pd);
        rule.nodes[k] = -x; // ascending
        rule.weights[k] = w;
        rule.nodes[n - 1 - k] = x;
        rule.weights[n - 1 - k] = w;
    }
    return rule;
}

/// Same rule mapped to [a,b]; weights sum to b-a.
inline QuadRule1D gauss_legendre(int n, double a, double b) {
    QuadRule1D r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < n; ++k) {
        r.nodes[k] = mid + half * r.nodes[k];
        r.weights[k] *= half;
    }
    return r;
}

/// Integrate f over [a,b] with a fixed-order rule.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n) {
    const QuadRule1D r = gauss_legendre(n, a, b);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += r.weights[k] * f(r.nodes[k]);
    return acc;
}

} // namespace emh
