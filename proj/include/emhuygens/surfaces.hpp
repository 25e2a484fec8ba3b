// surfaces.hpp -- level-set description of closed surfaces (static or moving),
//                 spherical quadrature node generation, and the retarded-time
//                 solver for moving surfaces
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "emhuygens/quadrature.hpp"
#include "emhuygens/vec.hpp"

namespace emh {

/// Center trajectory c(t) with velocity and acceleration. Subluminal:
/// max_speed() < 1 is required everywhere downstream.
class Trajectory {
public:
    virtual ~Trajectory() = default;
    virtual Vec3 position(double t) const = 0;
    virtual Vec3 velocity(double t) const = 0;
    virtual Vec3 acceleration(double t) const = 0;
    virtual double max_speed() const = 0;
    virtual bool is_static() const { return false; }
};

using TrajectoryPtr = std::shared_ptr<const Trajectory>;

class StaticTrajectory final : public Trajectory {
public:
    explicit StaticTrajectory(const Vec3& c) : c_(c) {}
    Vec3 position(double) const override { return c_; }
    Vec3 velocity(double) const override { return {}; }
    Vec3 acceleration(double) const override { return {}; }
    double max_speed() const override { return 0.0; }
    bool is_static() const override { return true; }

private:
    Vec3 c_;
};

class UniformTrajectory final : public Trajectory {
public:
    UniformTrajectory(const Vec3& c0, const Vec3& v, double t_ref = 0.0)
        : c0_(c0), v_(v), t_ref_(t_ref) {}
    Vec3 position(double t) const override { return c0_ + v_ * (t - t_ref_); }
    Vec3 velocity(double) const override { return v_; }
    Vec3 acceleration(double) const override { return {}; }
    double max_speed() const override { return norm(v_); }

private:
    Vec3 c0_, v_;
    double t_ref_;
};

/// Center moving on a circle of given radius in the plane spanned by two
/// orthonormal axes, angular rate omega, speed = radius * omega.
class CircularTrajectory final : public Trajectory {
public:
    CircularTrajectory(const Vec3& center, double orbit_radius, double omega, double phase = 0.0,
                       const Vec3& axis_u = e1, const Vec3& axis_v = e2)
        : c_(center), rho_(orbit_radius), om_(omega), ph_(phase), u_(axis_u), v_(axis_v) {
        if (rho_ < 0.0) throw std::invalid_argument("circular trajectory: negative radius");
    }
    Vec3 position(double t) const override {
        const double a = om_ * t + ph_;
        return c_ + u_ * (rho_ * std::cos(a)) + v_ * (rho_ * std::sin(a));
    }
    Vec3 velocity(double t) const override {
        const double a = om_ * t + ph_;
        return u_ * (-rho_ * om_ * std::sin(a)) + v_ * (rho_ * om_ * std::cos(a));
    }
    Vec3 acceleration(double t) const override {
        const double a = om_ * t + ph_;
        return u_ * (-rho_ * om_ * om_ * std::cos(a)) + v_ * (-rho_ * om_ * om_ * std::sin(a));
    }
    double max_speed() const override { return std::abs(rho_ * om_); }

private:
    Vec3 c_;
    double rho_, om_, ph_;
    Vec3 u_, v_;
};

/// Closed surface S_t = { x : lambda(x,t) = 0 } described by a signed level
/// set (positive outside, negative inside, |grad lambda| = 1 on S) together
/// with a parametric chart s(u,v,t) and its area Jacobian. Charts are assumed
/// rigid in time: normals and area Jacobians at fixed (u,v) do not rotate or
/// stretch (true for the built-in translating spheres).
class LevelSetSurface {
public:
    virtual ~LevelSetSurface() = default;

    virtual double lambda(const Vec3& x, double t) const = 0;
    virtual Vec3 grad_lambda(const Vec3& x, double t) const = 0;
    virtual double lambda_dot(const Vec3& x, double t) const = 0;

    virtual Vec3 chart_point(double u, double v, double t) const = 0;
    virtual Vec3 chart_velocity(double u, double v, double t) const = 0;
    virtual Vec3 chart_acceleration(double u, double v, double t) const = 0;
    virtual Vec3 chart_normal(double u, double v, double t) const = 0;
    virtual double area_jacobian(double u, double v, double t) const = 0;

    virtual double max_speed() const = 0;
    virtual bool is_static() const = 0;
    /// geometric scale (sphere radius) used for exclusion-zone checks
    virtual double characteristic_length() const = 0;
    /// static concentric-sphere descriptor when applicable: (center, radius)
    virtual std::optional<std::pair<Vec3, double>> as_static_sphere() const { return std::nullopt; }
};

using SurfacePtr = std::shared_ptr<const LevelSetSurface>;

/// Sphere of fixed radius R about a (possibly moving) center: the level set is
/// the signed distance lambda(x,t) = |x - c(t)| - R. Chart parameters are
/// u = cos(theta) in [-1,1] and v = phi in [0,2pi); the area Jacobian in these
/// coordinates is the constant R^2.
class SphereSurface final : public LevelSetSurface {
public:
    SphereSurface(TrajectoryPtr center, double radius) : traj_(std::move(center)), R_(radius) {
        if (!(R_ > 0.0)) throw std::invalid_argument("sphere_surface: radius must be positive");
        if (!(traj_->max_speed() < 1.0))
            throw std::invalid_argument("sphere_surface: superluminal center trajectory");
    }

    double lambda(const Vec3& x, double t) const override {
        return dist(x, traj_->position(t)) - R_;
    }
    Vec3 grad_lambda(const Vec3& x, double t) const override {
        return unit(x - traj_->position(t));
    }
    double lambda_dot(const Vec3& x, double t) const override {
        return -dot(unit(x - traj_->position(t)), traj_->velocity(t));
    }

    Vec3 chart_point(double u, double v, double t) const override {
        return traj_->position(t) + radial(u, v) * R_;
    }
    Vec3 chart_velocity(double, double, double t) const override { return traj_->velocity(t); }
    Vec3 chart_acceleration(double, double, double t) const override {
        return traj_->acceleration(t);
    }
    Vec3 chart_normal(double u, double v, double) const override { return radial(u, v); }
    double area_jacobian(double, double, double) const override { return R_ * R_; }

    double max_speed() const override { return traj_->max_speed(); }
    bool is_static() const override { return traj_->is_static(); }
    double characteristic_length() const override { return R_; }
    std::optional<std::pair<Vec3, double>> as_static_sphere() const override {
        if (traj_->is_static()) return std::make_pair(traj_->position(0.0), R_);
        return std::nullopt;
    }

    double radius() const { return R_; }
    const Trajectory& trajectory() const { return *traj_; }

private:
    TrajectoryPtr traj_;
    double R_;

    static Vec3 radial(double u, double v) {
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        return {s * std::cos(v), s * std::sin(v), u};
    }
};

inline SurfacePtr sphere_surface(TrajectoryPtr center, double radius) {
    return std::make_shared<SphereSurface>(std::move(center), radius);
}

struct QuadOrder {
    int n_theta{32};
    int n_phi{64};
};

/// One surface quadrature node at a fixed time.
struct QuadNode {
    double u{}, v{};     // chart parameters (cos theta, phi)
    double chart_weight{}; // du dv weight, without the area Jacobian
    Vec3 point;
    Vec3 normal;
    double weight{};     // full area measure weight (sums to the surface area)
    double lambda_dot{};
    Vec3 velocity;
};

/// Gauss-Legendre x trapezoid product rule on the chart; weights sum to the
/// surface area.
inline std::vector<QuadNode> quad_nodes(const LevelSetSurface& S, double t, const QuadOrder& order) {
    if (order.n_theta < 2 || order.n_phi < 4)
        throw std::invalid_argument("quad_nodes: need n_theta >= 2 and n_phi >= 4");
    const QuadRule1D mu = gauss_legendre(order.n_theta);
    const double two_pi = 2.0 * 3.14159265358979323846;
    const double wphi = two_pi / order.n_phi;
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<size_t>(order.n_theta) * order.n_phi);
    for (int i = 0; i < order.n_theta; ++i) {
        for (int j = 0; j < order.n_phi; ++j) {
            QuadNode q;
            q.u = mu.nodes[i];
            q.v = wphi * j;
            q.chart_weight = mu.weights[i] * wphi;
            q.point = S.chart_point(q.u, q.v, t);
            q.normal = S.chart_normal(q.u, q.v, t);
            q.weight = q.chart_weight * S.area_jacobian(q.u, q.v, t);
            q.velocity = S.chart_velocity(q.u, q.v, t);
            q.lambda_dot = -dot(q.normal, q.velocity);
            nodes.push_back(q);
        }
    }
    return nodes;
}

/// Quadrature node data evaluated at the retarded time of a target event.
struct RetardedNode {
    QuadNode node;   // chart data at t_star
    double t_star{};
    double r{};      // |x - s(u,v,t_star)|
    double kappa{};  // 1 - rhat . s_dot(t_star), in (0,2) for subluminal motion
};

/// Solve t* = t - |x - s(u,v,t*)| by Newton iteration (derivative kappa > 0,
/// so the root is unique for subluminal surfaces), falling back to bisection
/// on a guaranteed bracket if Newton stalls. Tolerance 1e-13 on the residual.
inline RetardedNode retarded_time(const LevelSetSurface& S, const Vec3& x, double t, double u,
                                  double v) {
    const double tol = 1e-13;
    const int max_iter = 50;
    const double vmax = S.max_speed();

    auto residual = [&](double tau) { return tau + dist(x, S.chart_point(u, v, tau)) - t; };

    double tau = t - dist(x, S.chart_point(u, v, t));
    bool converged = false;
    for (int k = 0; k < max_iter; ++k) {
        const Vec3 p = S.chart_point(u, v, tau);
        const double r = dist(x, p);
        const double g = tau + r - t;
        if (std::abs(g) < tol) {
            converged = true;
            break;
        }
        const Vec3 rh = (x - p) / r;
        const double kappa = 1.0 - dot(rh, S.chart_velocity(u, v, tau));
        tau -= g / kappa;
    }

    if (!converged && std::abs(residual(tau)) >= tol) {
        // bracket: g(t) >= 0, and g < 0 once t - tau exceeds D/(1-vmax)
        double hi = t;
        double lo = t - dist(x, S.chart_point(u, v, t)) / std::max(1e-12, 1.0 - vmax) - 1.0;
        if (residual(lo) > 0.0)
            throw std::runtime_error("retarded_time: failed to bracket the retarded root");
        for (int k = 0; k < 200 && (hi - lo) > tol * 0.5; ++k) {
            const double mid = 0.5 * (lo + hi);
            (residual(mid) < 0.0 ? lo : hi) = mid;
        }
        tau = 0.5 * (lo + hi);
        if (std::abs(residual(tau)) > 1e-10)
            throw std::runtime_error("retarded_time: solver failed to converge");
    }

    RetardedNode out;
    out.t_star = tau;
    out.node.u = u;
    out.node.v = v;
    out.node.point = S.chart_point(u, v, tau);
    out.node.normal = S.chart_normal(u, v, tau);
    out.node.velocity = S.chart_velocity(u, v, tau);
    out.node.lambda_dot = -dot(out.node.normal, out.node.velocity);
    out.r = dist(x, out.node.point);
    const Vec3 rh = (x - out.node.point) / out.r;
    out.kappa = 1.0 - dot(rh, out.node.velocity);
    return out;
}

} // namespace emh
