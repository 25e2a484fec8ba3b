// vec.hpp -- fixed-size real and complex 3-vectors used throughout
#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace emh {

using Complex = std::complex<double>;

template <typename T>
struct V3 {
    T x{}, y{}, z{};

    constexpr V3() = default;
    constexpr V3(T xx, T yy, T zz) : x(xx), y(yy), z(zz) {}

    // real -> complex promotion
    template <typename U>
    constexpr V3(const V3<U>& o) : x(o.x), y(o.y), z(o.z) {}

    constexpr V3 operator-() const { return {-x, -y, -z}; }
    constexpr V3& operator+=(const V3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr V3& operator-=(const V3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr V3& operator*=(const T& s) { x *= s; y *= s; z *= s; return *this; }
};

using Vec3  = V3<double>;
using CVec3 = V3<Complex>;

template <typename U> inline constexpr bool is_v3_v = false;
template <typename U> inline constexpr bool is_v3_v<V3<U>> = true;

template <typename T> constexpr V3<T> operator+(V3<T> a, const V3<T>& b) { return a += b; }
template <typename T> constexpr V3<T> operator-(V3<T> a, const V3<T>& b) { return a -= b; }
template <typename T, typename S>
    requires(!is_v3_v<S>)
constexpr auto operator*(const V3<T>& a, const S& s) -> V3<decltype(a.x * s)> {
    return {a.x * s, a.y * s, a.z * s};
}
template <typename T, typename S>
    requires(!is_v3_v<S>)
constexpr auto operator*(const S& s, const V3<T>& a) -> V3<decltype(s * a.x)> {
    return {s * a.x, s * a.y, s * a.z};
}
template <typename T, typename S>
    requires(!is_v3_v<S>)
constexpr auto operator/(const V3<T>& a, const S& s) -> V3<decltype(a.x / s)> {
    return {a.x / s, a.y / s, a.z / s};
}

inline constexpr CVec3 operator+(const CVec3& a, const Vec3& b) { return a + CVec3(b); }
inline constexpr CVec3 operator+(const Vec3& a, const CVec3& b) { return CVec3(a) + b; }
inline constexpr CVec3 operator-(const CVec3& a, const Vec3& b) { return a - CVec3(b); }
inline constexpr CVec3 operator-(const Vec3& a, const CVec3& b) { return CVec3(a) - b; }

// unconjugated bilinear dot product; complex arguments stay bilinear
template <typename A, typename B>
constexpr auto dot(const V3<A>& a, const V3<B>& b) -> decltype(a.x * b.x) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename A, typename B>
constexpr auto cross(const V3<A>& a, const V3<B>& b) -> V3<decltype(a.x * b.x)> {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const CVec3& a) {
    return std::sqrt(std::norm(a.x) + std::norm(a.y) + std::norm(a.z));
}

inline CVec3 conj(const CVec3& a) { return {std::conj(a.x), std::conj(a.y), std::conj(a.z)}; }
inline Vec3 real(const CVec3& a) { return {a.x.real(), a.y.real(), a.z.real()}; }
inline Vec3 imag(const CVec3& a) { return {a.x.imag(), a.y.imag(), a.z.imag()}; }

inline Vec3 unit(const Vec3& a) { return a / norm(a); }

inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

template <typename T>
std::ostream& operator<<(std::ostream& os, const V3<T>& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

inline constexpr Vec3 e1{1.0, 0.0, 0.0};
inline constexpr Vec3 e2{0.0, 1.0, 0.0};
inline constexpr Vec3 e3{0.0, 0.0, 1.0};

} // namespace emh
