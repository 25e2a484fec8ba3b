// support.hpp -- shared helpers for the test suites: seeded random generators
//                and the independent quadrature / bisection oracles
#pragma once

#include <functional>
#include <random>

#include "emhuygens/emhuygens.hpp"

namespace emh::test {

inline std::mt19937 rng(uint32_t seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Vec3 random_vec(std::mt19937& g, double lo = -1.0, double hi = 1.0) {
    return {uniform(g, lo, hi), uniform(g, lo, hi), uniform(g, lo, hi)};
}

inline Vec3 random_unit(std::mt19937& g) {
    Vec3 v;
    do {
        v = random_vec(g);
    } while (norm(v) < 1e-3);
    return unit(v);
}

inline CVec3 random_cvec(std::mt19937& g, double lo = -1.0, double hi = 1.0) {
    return {{uniform(g, lo, hi), uniform(g, lo, hi)},
            {uniform(g, lo, hi), uniform(g, lo, hi)},
            {uniform(g, lo, hi), uniform(g, lo, hi)}};
}

inline PauliNum random_pauli(std::mt19937& g) {
    return {{uniform(g, -1, 1), uniform(g, -1, 1)}, random_cvec(g)};
}

/// adaptive Simpson quadrature oracle, independent of the library's rules
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 30) {
    auto simpson = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi, double whole,
                                                                 int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

/// pure-bisection retarded-time oracle
inline double bisection_retarded_time(const LevelSetSurface& S, const Vec3& x, double t, double u,
                                      double v, double tol = 1e-14) {
    auto g = [&](double tau) { return tau + dist(x, S.chart_point(u, v, tau)) - t; };
    double hi = t;
    double lo = t - dist(x, S.chart_point(u, v, t)) / (1.0 - S.max_speed()) - 1.0;
    for (int k = 0; k < 300 && (hi - lo) > tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// finite-difference power-balance residual dU/dt + div S at (x,t)
inline double poynting_residual_fd(const AnalyticField& f, const Vec3& x, double t, double h) {
    auto U = [&](const Vec3& y, double s) { return energy_momentum(f.value(y, s)).U; };
    auto S = [&](const Vec3& y, double s) { return energy_momentum(f.value(y, s)).S; };
    double resid = (U(x, t + h) - U(x, t - h)) / (2.0 * h);
    resid += (S(x + e1 * h, t).x - S(x - e1 * h, t).x) / (2.0 * h);
    resid += (S(x + e2 * h, t).y - S(x - e2 * h, t).y) / (2.0 * h);
    resid += (S(x + e3 * h, t).z - S(x - e3 * h, t).z) / (2.0 * h);
    return resid;
}

} // namespace emh::test
