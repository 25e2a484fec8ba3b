// fields.hpp -- analytic causal electromagnetic fields F = E + iH with exact
//               time derivatives/antiderivatives, plus the energy-momentum and
//               Lorentz-invariant maps and a finite-difference Maxwell oracle
#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>

#include "emhuygens/pauli.hpp"
#include "emhuygens/signature.hpp"
#include "emhuygens/vec.hpp"

namespace emh {

/// Evaluatable electromagnetic field in natural Lorentz-Heaviside units
/// (c = 1), packed as the complex vector F = E + iH. Implementations supply
/// exact time derivatives and antiderivatives; spatial structure stays
/// analytic so no step-size parameters enter production evaluation paths.
class AnalyticField {
public:
    virtual ~AnalyticField() = default;

    virtual CVec3 value(const Vec3& x, double t) const = 0;
    virtual CVec3 time_derivative(const Vec3& x, double t) const = 0;
    virtual CVec3 time_antiderivative(const Vec3& x, double t) const = 0;

    /// point support of the source, if any
    virtual std::optional<Vec3> source_point() const { return std::nullopt; }

    /// window during which the source density can be nonzero; empty (start >
    /// stop) for globally sourceless fields
    virtual std::pair<double, double> source_active_window() const {
        return {1.0, 0.0};
    }

    /// earliest time at which the field can be nonzero at x
    virtual double causal_onset(const Vec3& x) const = 0;

    /// source density J = rho - J_vec as a Pauli number; zero wherever the
    /// field is sourceless (everywhere off a point source)
    virtual PauliNum source_density(const Vec3& x, double t) const {
        (void)x;
        (void)t;
        return {};
    }
};

using FieldPtr = std::shared_ptr<const AnalyticField>;

namespace detail {
inline constexpr double kSourceExclusion = 1e-9;
}

/// Identically zero field; the usual interior choice.
class ZeroField final : public AnalyticField {
public:
    CVec3 value(const Vec3&, double) const override { return {}; }
    CVec3 time_derivative(const Vec3&, double) const override { return {}; }
    CVec3 time_antiderivative(const Vec3&, double) const override { return {}; }
    double causal_onset(const Vec3&) const override {
        return std::numeric_limits<double>::infinity();
    }
};

/// Pulsed point dipole at x0 along the unit direction p, driven by a causal
/// signature. Realized from the vector potential A = p f'(t-r)/(4 pi r) with
/// the scalar potential fixed by the Lorenz gauge; closed forms:
///
///   E = (1/4pi) [ (3 rh (rh.p) - p)(f/r^3 + f'/r^2) + (rh (rh.p) - p) f''/r ]
///   H = (1/4pi) (p x rh)(f''/r + f'/r^2),        rh = (x-x0)/r, args t - r.
///
/// Time derivative / antiderivative shift the whole chain (f,f',f'') one
/// order up or down, so all three evaluators share one kernel.
class HertzianDipole final : public AnalyticField {
public:
    HertzianDipole(const Vec3& direction, std::shared_ptr<const Signature> sig, const Vec3& position)
        : p_(direction), sig_(std::move(sig)), x0_(position) {
        if (std::abs(norm(p_) - 1.0) > 1e-12)
            throw std::invalid_argument("hertzian_dipole: direction must be a unit vector");
    }

    CVec3 value(const Vec3& x, double t) const override { return eval_chain(x, t, 0); }
    CVec3 time_derivative(const Vec3& x, double t) const override { return eval_chain(x, t, 1); }
    CVec3 time_antiderivative(const Vec3& x, double t) const override { return eval_chain(x, t, -1); }

    std::optional<Vec3> source_point() const override { return x0_; }
    std::pair<double, double> source_active_window() const override {
        return {sig_->start(), sig_->end()};
    }
    double causal_onset(const Vec3& x) const override { return sig_->start() + dist(x, x0_); }

    PauliNum source_density(const Vec3& x, double t) const override {
        guard_singular(x);
        (void)t;
        return {}; // distributional at x0; identically zero off the source point
    }

    // 4-potential pieces, exposed for gauge and oracle checks
    Vec3 vector_potential(const Vec3& x, double t) const {
        guard_singular(x);
        const double r = dist(x, x0_);
        return p_ * (sig_->chain(t - r, 1) / (4.0 * kPi * r));
    }
    double scalar_potential(const Vec3& x, double t) const {
        guard_singular(x);
        const double r = dist(x, x0_);
        const Vec3 rh = (x - x0_) / r;
        const double u = t - r;
        return dot(p_, rh) * (sig_->chain(u, 1) / r + sig_->chain(u, 0) / (r * r)) / (4.0 * kPi);
    }
    double scalar_potential_dt(const Vec3& x, double t) const {
        guard_singular(x);
        const double r = dist(x, x0_);
        const Vec3 rh = (x - x0_) / r;
        const double u = t - r;
        return dot(p_, rh) * (sig_->chain(u, 2) / r + sig_->chain(u, 1) / (r * r)) / (4.0 * kPi);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    Vec3 p_;
    std::shared_ptr<const Signature> sig_;
    Vec3 x0_;

    void guard_singular(const Vec3& x) const {
        if (dist(x, x0_) < detail::kSourceExclusion)
            throw std::domain_error("hertzian_dipole: evaluation at the source point");
    }

    CVec3 eval_chain(const Vec3& x, double t, int shift) const {
        guard_singular(x);
        const double r = dist(x, x0_);
        const double u = t - r;
        if (u <= sig_->start()) return {};
        const double c0 = sig_->chain(u, shift);
        const double c1 = sig_->chain(u, shift + 1);
        const double c2 = sig_->chain(u, shift + 2);
        const Vec3 rh = (x - x0_) / r;
        const double pr = dot(p_, rh);
        const Vec3 trans = rh * (3.0 * pr) - p_;      // 3 rh (rh.p) - p
        const Vec3 rad = rh * pr - p_;                // rh (rh.p) - p
        const Vec3 E = (trans * (c0 / (r * r * r) + c1 / (r * r)) + rad * (c2 / r)) * (1.0 / (4.0 * kPi));
        const Vec3 H = cross(p_, rh) * ((c2 / r + c1 / (r * r)) / (4.0 * kPi));
        return CVec3(E) + Complex{0.0, 1.0} * CVec3(H);
    }
};

/// Plane pulse F(x,t) = (e + i k x e) f(t - k.x): globally sourceless, exact
/// null field. Useful for algebra and partition tests; not admissible as a
/// Huygens exterior field because its sources sit at spatial infinity rather
/// than inside the surface.
class PlaneWave final : public AnalyticField {
public:
    PlaneWave(const Vec3& k_dir, const Vec3& polarization, std::shared_ptr<const Signature> sig)
        : k_(k_dir), e_(polarization), sig_(std::move(sig)) {
        if (std::abs(norm(k_) - 1.0) > 1e-12 || std::abs(norm(e_) - 1.0) > 1e-12)
            throw std::invalid_argument("plane_wave: direction and polarization must be unit vectors");
        if (std::abs(dot(k_, e_)) > 1e-12)
            throw std::invalid_argument("plane_wave: polarization must be orthogonal to propagation");
    }

    CVec3 value(const Vec3& x, double t) const override { return shape() * Complex(sig_->chain(t - dot(k_, x), 0)); }
    CVec3 time_derivative(const Vec3& x, double t) const override {
        return shape() * Complex(sig_->chain(t - dot(k_, x), 1));
    }
    CVec3 time_antiderivative(const Vec3& x, double t) const override {
        return shape() * Complex(sig_->chain(t - dot(k_, x), -1));
    }
    double causal_onset(const Vec3& x) const override { return sig_->start() + dot(k_, x); }

private:
    Vec3 k_, e_;
    std::shared_ptr<const Signature> sig_;

    CVec3 shape() const { return CVec3(e_) + Complex{0.0, 1.0} * CVec3(cross(k_, e_)); }
};

inline FieldPtr zero_field() { return std::make_shared<ZeroField>(); }

inline FieldPtr hertzian_dipole(const Vec3& direction, std::shared_ptr<const Signature> sig,
                                const Vec3& position) {
    return std::make_shared<HertzianDipole>(direction, std::move(sig), position);
}

inline FieldPtr plane_wave(const Vec3& k_dir, const Vec3& polarization,
                           std::shared_ptr<const Signature> sig) {
    return std::make_shared<PlaneWave>(k_dir, polarization, std::move(sig));
}

/// Energy density and Poynting flux; the scalar/vector parts of F F*/2.
struct EnergyMomentum {
    double U{};
    Vec3 S{};
};

inline EnergyMomentum energy_momentum(const CVec3& F) {
    const Vec3 E = real(F), H = imag(F);
    return {0.5 * (dot(E, E) + dot(H, H)), cross(E, H)};
}

/// F.F = E^2 - H^2 + 2i E.H
inline Complex lorentz_invariant(const CVec3& F) { return dot(F, F); }

// ---------------------------------------------------------------------------
// finite-difference oracles (verification only; production paths are analytic)
// ---------------------------------------------------------------------------

/// Lift of F = E + iH into the DifferentiablePauliField contract with the
/// time derivative taken analytically from the field and spatial derivatives
/// by central differences of step h.
class FdLiftedField final : public DifferentiablePauliField {
public:
    FdLiftedField(const AnalyticField& f, double h) : f_(f), h_(h) {
        if (!(h > 0.0)) throw std::invalid_argument("FdLiftedField: step must be positive");
    }

    PauliNum value(const Vec3& x, double t) const override {
        return PauliNum::vector(f_.value(x, t));
    }
    PauliNum time_derivative(const Vec3& x, double t) const override {
        return PauliNum::vector(f_.time_derivative(x, t));
    }
    CVec3 grad_scalar(const Vec3&, double) const override { return {}; }
    Complex div_vector(const Vec3& x, double t) const override {
        Complex acc{};
        const std::array<Vec3, 3> axes{e1, e2, e3};
        const CVec3 dx = (f_.value(x + axes[0] * h_, t) - f_.value(x - axes[0] * h_, t)) / (2.0 * h_);
        const CVec3 dy = (f_.value(x + axes[1] * h_, t) - f_.value(x - axes[1] * h_, t)) / (2.0 * h_);
        const CVec3 dz = (f_.value(x + axes[2] * h_, t) - f_.value(x - axes[2] * h_, t)) / (2.0 * h_);
        acc = dx.x + dy.y + dz.z;
        return acc;
    }
    CVec3 curl_vector(const Vec3& x, double t) const override {
        const CVec3 dx = (f_.value(x + e1 * h_, t) - f_.value(x - e1 * h_, t)) / (2.0 * h_);
        const CVec3 dy = (f_.value(x + e2 * h_, t) - f_.value(x - e2 * h_, t)) / (2.0 * h_);
        const CVec3 dz = (f_.value(x + e3 * h_, t) - f_.value(x - e3 * h_, t)) / (2.0 * h_);
        return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
    }

private:
    const AnalyticField& f_;
    double h_;
};

/// || D F + J || at (x,t) with spatial derivatives by step-h differences.
/// Vanishes (to O(h^2)) wherever the field solves Maxwell's equations.
inline double maxwell_residual(const AnalyticField& f, const Vec3& x, double t, double h) {
    FdLiftedField lifted(f, h);
    const PauliNum r = apply_D(lifted, x, t) + f.source_density(x, t);
    return norm(r);
}

} // namespace emh
