// pauli.hpp -- complex Pauli-algebra arithmetic and the spacetime operators
//              D = d/dt + grad, Dbar = d/dt - grad acting on Pauli-valued fields
#pragma once

#include <array>
#include <stdexcept>

#include "emhuygens/vec.hpp"

namespace emh {

/// Element of the Pauli algebra of 3-space: a complex scalar plus a complex
/// 3-vector. The product fuses the dot and cross products of its vector parts.
struct PauliNum {
    Complex s{};
    CVec3 v{};

    constexpr PauliNum() = default;
    constexpr PauliNum(Complex scalar, CVec3 vector) : s(scalar), v(vector) {}

    static constexpr PauliNum scalar(Complex c) { return {c, CVec3{}}; }
    static constexpr PauliNum vector(CVec3 w) { return {Complex{}, w}; }
};

inline PauliNum operator+(const PauliNum& a, const PauliNum& b) { return {a.s + b.s, a.v + b.v}; }
inline PauliNum operator-(const PauliNum& a, const PauliNum& b) { return {a.s - b.s, a.v - b.v}; }
inline PauliNum operator-(const PauliNum& a) { return {-a.s, -a.v}; }
inline PauliNum operator*(const Complex& c, const PauliNum& a) { return {c * a.s, c * a.v}; }
inline PauliNum operator*(const PauliNum& a, const Complex& c) { return c * a; }

inline PauliNum scalar_part(const PauliNum& a) { return PauliNum::scalar(a.s); }
inline PauliNum vector_part(const PauliNum& a) { return PauliNum::vector(a.v); }

/// Pauli product:
///   (A0 + A)(B0 + B) = A0 B0 + A.B  +  A0 B + B0 A + i A x B
inline PauliNum mul(const PauliNum& a, const PauliNum& b) {
    const Complex i{0.0, 1.0};
    return {a.s * b.s + dot(a.v, b.v),
            a.s * b.v + b.s * a.v + i * cross(a.v, b.v)};
}

inline double norm(const PauliNum& a) {
    return std::sqrt(std::norm(a.s) + std::norm(a.v.x) + std::norm(a.v.y) + std::norm(a.v.z));
}

/// 2x2 complex matrix; the faithful representation of the algebra.
struct Matrix2c {
    Complex m11{}, m12{}, m21{}, m22{};
};

inline Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Matrix2c operator-(const Matrix2c& a, const Matrix2c& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

inline double norm(const Matrix2c& a) {
    return std::sqrt(std::norm(a.m11) + std::norm(a.m12) + std::norm(a.m21) + std::norm(a.m22));
}

/// A0 + A  ->  [[A0+A3, A1-iA2], [A1+iA2, A0-A3]] = A0 I + A . sigma.
/// Basis vectors map to the Pauli matrices; the Pauli product maps to the
/// matrix product. Used as a test oracle, not as the working representation.
inline Matrix2c to_matrix(const PauliNum& a) {
    const Complex i{0.0, 1.0};
    return {a.s + a.v.z, a.v.x - i * a.v.y,
            a.v.x + i * a.v.y, a.s - a.v.z};
}

/// Evaluation contract for fields the spacetime operators can act on: the
/// caller supplies analytic derivatives (value, time derivative, gradient of
/// the scalar part, divergence and curl of the vector part).
class DifferentiablePauliField {
public:
    virtual ~DifferentiablePauliField() = default;
    virtual PauliNum value(const Vec3& x, double t) const = 0;
    virtual PauliNum time_derivative(const Vec3& x, double t) const = 0;
    virtual CVec3 grad_scalar(const Vec3& x, double t) const = 0;
    virtual Complex div_vector(const Vec3& x, double t) const = 0;
    virtual CVec3 curl_vector(const Vec3& x, double t) const = 0;
};

/// D A = (A0' + div A) + (A' + grad A0 + i curl A)
inline PauliNum apply_D(const DifferentiablePauliField& f, const Vec3& x, double t) {
    const Complex i{0.0, 1.0};
    const PauliNum dt = f.time_derivative(x, t);
    return {dt.s + f.div_vector(x, t),
            dt.v + f.grad_scalar(x, t) + i * f.curl_vector(x, t)};
}

/// Dbar A = (A0' - div A) + (A' - grad A0 - i curl A)
inline PauliNum apply_Dbar(const DifferentiablePauliField& f, const Vec3& x, double t) {
    const Complex i{0.0, 1.0};
    const PauliNum dt = f.time_derivative(x, t);
    return {dt.s - f.div_vector(x, t),
            dt.v - f.grad_scalar(x, t) - i * f.curl_vector(x, t)};
}

/// Central-difference estimate of the scalar wave operator
/// (d/dt)^2 f - laplacian f. Oracle for the identity Dbar D = box.
template <typename F>
double fd_box(F&& f, const Vec3& x, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_box: step must be positive");
    const double h2 = h * h;
    double acc = (f(x, t + h) + f(x, t - h) - 2.0 * f(x, t)) / h2;
    const std::array<Vec3, 3> axes{e1, e2, e3};
    for (const Vec3& a : axes)
        acc -= (f(x + a * h, t) + f(x - a * h, t) - 2.0 * f(x, t)) / h2;
    return acc;
}

} // namespace emh
