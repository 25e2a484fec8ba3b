// huygens.hpp -- equivalent surface sources from jump fields, retarded surface
//                potentials, Stratton-Chu / Kottler-Franz reconstruction for
//                static and moving surfaces, and the diagnostic residuals
#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "emhuygens/fields.hpp"
#include "emhuygens/surfaces.hpp"

namespace emh {

// ---------------------------------------------------------------------------
// scene
// ---------------------------------------------------------------------------

/// Exterior field F (sources inside S), interior field F' (sources outside S
/// or none), and the surface that separates them. Construction verifies that
/// the declared source supports respect the geometry over the windows in
/// which the sources are active.
struct HuygensScene {
    FieldPtr exterior;
    FieldPtr interior;
    SurfacePtr surface;
    QuadOrder order;

    HuygensScene(FieldPtr ext, FieldPtr intr, SurfacePtr surf, QuadOrder ord = {})
        : exterior(std::move(ext)), interior(std::move(intr)), surface(std::move(surf)), order(ord) {
        validate();
    }

private:
    void validate() const {
        if (!exterior || !interior || !surface)
            throw std::invalid_argument("huygens scene: null component");
        check_source(*exterior, /*must_be_inside=*/true);
        // aliased interior (F' = F) has zero jump; the geometry is irrelevant
        if (interior != exterior) check_source(*interior, /*must_be_inside=*/false);
    }

    void check_source(const AnalyticField& f, bool must_be_inside) const {
        const auto p = f.source_point();
        if (!p) return; // globally sourceless
        const auto [a, b] = f.source_active_window();
        if (a > b) return;
        const int samples = 128;
        for (int k = 0; k <= samples; ++k) {
            const double t = a + (b - a) * k / samples;
            const double lam = surface->lambda(*p, t);
            if (must_be_inside && !(lam < 0.0))
                throw std::invalid_argument(
                    "huygens scene: exterior-field source leaves the interior of S");
            if (!must_be_inside && !(lam > 0.0))
                throw std::invalid_argument(
                    "huygens scene: interior-field source enters the interior of S");
        }
    }
};

// ---------------------------------------------------------------------------
// surface densities
// ---------------------------------------------------------------------------

/// Per-node equivalent surface sources from the jump field: electric/magnetic
/// surface charge and current, plus the drag term contributed by boundary
/// motion. The complex assemblies are
///   sigma_e + i sigma_m         = n . F^j
///   K_e + i K_m                 = -i n x F^j
///   drag                        = -lambda_dot F^j  (zero for static surfaces)
struct SurfaceDensitySample {
    double sigma_e{}, sigma_m{};
    Vec3 K_e, K_m;
    CVec3 drag;
    QuadNode node;

    Complex sigma() const { return {sigma_e, sigma_m}; }
    CVec3 current() const { return CVec3(K_e) + Complex{0.0, 1.0} * CVec3(K_m) + drag; }
};

inline SurfaceDensitySample make_density_sample(const QuadNode& node, const CVec3& jump) {
    const Vec3 Ej = real(jump), Hj = imag(jump);
    SurfaceDensitySample s;
    s.node = node;
    s.sigma_e = dot(node.normal, Ej);
    s.sigma_m = dot(node.normal, Hj);
    s.K_e = cross(node.normal, Hj);
    s.K_m = -cross(node.normal, Ej);
    s.drag = jump * Complex(-node.lambda_dot);
    return s;
}

/// F^j = F(x,t) - F'(x,t) for x on the surface.
inline CVec3 jump_field(const HuygensScene& scene, const Vec3& x, double t) {
    const double L = scene.surface->characteristic_length();
    if (std::abs(scene.surface->lambda(x, t)) > 1e-9 * L)
        throw std::domain_error("jump_field: point is not on the surface");
    return scene.exterior->value(x, t) - scene.interior->value(x, t);
}

inline SurfaceDensitySample surface_densities(const HuygensScene& scene, const QuadNode& node,
                                              double t) {
    return make_density_sample(node, jump_field(scene, node.point, t));
}

/// Split the drag current -lambda_dot F^j into its tangential and normal
/// parts via  -ld F = ld n x (n x F) - ld n (n . F).
inline std::pair<CVec3, CVec3> drag_decomposition(const SurfaceDensitySample& s) {
    const Vec3& n = s.node.normal;
    const Complex ld{s.node.lambda_dot};
    const CVec3 jump = (s.node.lambda_dot != 0.0) ? s.drag / Complex(-s.node.lambda_dot) : CVec3{};
    const CVec3 tangential = ld * cross(n, cross(n, jump));
    const CVec3 normal = (-ld * dot(n, jump)) * CVec3(n);
    return {tangential, normal};
}

/// (n . H^j,  lambda_dot H^j + n x E^j): both vanish exactly when the surface
/// sources are physically realizable (no magnetic sources on S).
inline std::pair<double, Vec3> boundary_residual(const HuygensScene& scene, const QuadNode& node,
                                                 double t) {
    const CVec3 jump = jump_field(scene, node.point, t);
    const Vec3 Ej = real(jump), Hj = imag(jump);
    return {dot(node.normal, Hj), Hj * node.lambda_dot + cross(node.normal, Ej)};
}

/// Q(t) = surface integral of (sigma_e + i sigma_m) at time t.
inline Complex total_charge(const HuygensScene& scene, double t) {
    Complex q{};
    for (const QuadNode& node : quad_nodes(*scene.surface, t, scene.order))
        q += node.weight * dot(node.normal, jump_field(scene, node.point, t));
    return q;
}

/// chi F + chi' F': the piecewise field every reconstruction is judged against.
inline CVec3 glued_reference(const HuygensScene& scene, const Vec3& x, double t) {
    const double lam = scene.surface->lambda(x, t);
    if (std::abs(lam) <= 1e-12 * scene.surface->characteristic_length())
        throw std::domain_error("glued_reference: point lies on the surface");
    return lam > 0.0 ? scene.exterior->value(x, t) : scene.interior->value(x, t);
}

// ---------------------------------------------------------------------------
// retarded surface potentials
// ---------------------------------------------------------------------------

/// Retarded complex potentials of the surface sources and every derivative
/// needed to assemble fields from them. Real parts are the electric
/// potentials, imaginary parts the (virtual) magnetic ones. The Kottler-Franz
/// pieces are available for static surfaces only.
struct PotentialValue {
    Complex phi{};
    CVec3 A;
    CVec3 dt_A;
    CVec3 grad_phi;
    CVec3 curl_A;
    std::optional<CVec3> idt_A;          // time-antiderivative of A
    std::optional<CVec3> curlcurl_idt_A; // curl curl of the above
};

/// Densities of one retarded node, with the material (along-worldline) time
/// derivatives needed for kernel differentiation. G is the time-antiderivative
/// of the current payload (Kottler-Franz; static surfaces).
struct RetardedDensity {
    Complex sigma{};
    CVec3 K;
    Complex sigma_dot{};
    CVec3 K_dot;
    CVec3 G;
};

/// node data handed to a density callback: retarded node plus the chart
/// acceleration at the retarded time
using DensityFn =
    std::function<RetardedDensity(const RetardedNode&, const Vec3& chart_accel)>;

namespace detail {

/// directional derivative (w . grad)F by a central difference whose
/// displacement is 1e-6 of the reference length; exact zero when w = 0
template <typename EvalFn>
CVec3 directional_derivative(EvalFn&& eval, const Vec3& x, double t, const Vec3& w,
                             double ref_length) {
    const double speed = norm(w);
    if (speed == 0.0) return {};
    const double h = 1e-6 * ref_length / speed;
    return (eval(x + w * h, t) - eval(x - w * h, t)) / (2.0 * h);
}

inline constexpr double kEvalExclusion = 1e-6; // times characteristic length

} // namespace detail

/// Quadrature assembly of the retarded surface potentials. A single code path
/// serves static and moving surfaces: for each chart node the retarded time is
/// solved, and x- and t-derivatives of collapsed kernels are expanded with
///   dt*/dt = 1/kappa,   dt*/dx = -rhat/kappa,
/// which reduces every derivative to the value and the material rate of the
/// node payload. All motion-dependent factors vanish identically when the
/// chart velocity is zero, so a zero-velocity trajectory reproduces the static
/// path bit for bit.
inline PotentialValue evaluate_potentials(const LevelSetSurface& S, const DensityFn& density,
                                          const Vec3& x, double t, const QuadOrder& order,
                                          bool want_kf) {
    const double L = S.characteristic_length();
    if (std::abs(S.lambda(x, t)) < detail::kEvalExclusion * L)
        throw std::domain_error("potentials: evaluation point too close to the surface");
    if (want_kf && !S.is_static())
        throw std::domain_error("potentials: Kottler-Franz terms require a static surface");

    const QuadRule1D mu = gauss_legendre(order.n_theta);
    const double two_pi = 2.0 * 3.14159265358979323846;
    const double wphi = two_pi / order.n_phi;

    PotentialValue acc;
    CVec3 idt_A{}, curlcurl{};

    for (int iu = 0; iu < order.n_theta; ++iu) {
        for (int jv = 0; jv < order.n_phi; ++jv) {
            const double u = mu.nodes[iu];
            const double v = wphi * jv;
            RetardedNode rn = retarded_time(S, x, t, u, v);
            rn.node.chart_weight = mu.weights[iu] * wphi;
            rn.node.weight = rn.node.chart_weight * S.area_jacobian(u, v, rn.t_star);

            const Vec3 accel = S.chart_acceleration(u, v, rn.t_star);
            const RetardedDensity d = density(rn, accel);

            const double w = rn.node.weight;
            const double r = rn.r;
            const Vec3 rh = (x - rn.node.point) / r;
            const Vec3& vel = rn.node.velocity;
            const double kappa = rn.kappa;

            // worldline rates of the kernel factors at fixed target
            const double r_dot = -dot(rh, vel);
            const Vec3 rh_dot = (rh * dot(rh, vel) - vel) / r;
            const double kappa_dot =
                (dot(vel, vel) - dot(rh, vel) * dot(rh, vel)) / r - dot(rh, accel);
            const double q = 1.0 / (r * kappa);
            const double q_dot = -(r_dot * kappa + r * kappa_dot) * q * q;

            acc.phi += w * d.sigma * q;
            acc.A += w * q * d.K;

            // dt [g q] / kappa
            acc.dt_A += (w / kappa) * (q * d.K_dot + q_dot * d.K);

            // -( dt[g rhat q] ) / kappa - g rhat q / r
            acc.grad_phi +=
                (-w / kappa) * ((d.sigma_dot * CVec3(rh) + d.sigma * CVec3(rh_dot)) * q +
                                d.sigma * q_dot * CVec3(rh)) -
                (w * d.sigma * q / r) * CVec3(rh);

            // -( dt[rhat x K q] ) / kappa - (rhat x K) q / r
            acc.curl_A += (-w / kappa) * ((cross(rh_dot, d.K) + cross(rh, d.K_dot)) * q +
                                          cross(rh, d.K) * q_dot) -
                          (w * q / r) * cross(rh, d.K);

            if (want_kf) {
                // static surface: q = 1/r exactly
                idt_A += (w * q) * d.G;
                const double r2 = r * r, r3 = r2 * r;
                curlcurl += w * ((3.0 * dot(rh, d.G)) * CVec3(rh) - d.G) / r3 +
                            w * ((3.0 * dot(rh, d.K)) * CVec3(rh) - d.K) / r2 +
                            w * ((dot(rh, d.K_dot)) * CVec3(rh) - d.K_dot) / r;
            }
        }
    }

    const double c = 1.0 / (4.0 * 3.14159265358979323846);
    acc.phi *= c;
    acc.A *= Complex(c);
    acc.dt_A *= Complex(c);
    acc.grad_phi *= Complex(c);
    acc.curl_A *= Complex(c);
    if (want_kf) {
        acc.idt_A = Complex(c) * idt_A;
        acc.curlcurl_idt_A = Complex(c) * curlcurl;
    }
    return acc;
}

/// Density callback for a Huygens scene: jump-field sources on S, with the
/// drag current when the surface moves. The material rate of the jump along a
/// moving chart point adds the convective term (v . grad)F^j to the analytic
/// time derivative.
inline DensityFn scene_density(const HuygensScene& scene, bool want_kf) {
    const AnalyticField& ext = *scene.exterior;
    const AnalyticField& intr = *scene.interior;
    const double L = scene.surface->characteristic_length();
    return [&ext, &intr, L, want_kf](const RetardedNode& rn, const Vec3& accel) {
        const Vec3& p = rn.node.point;
        const double tau = rn.t_star;
        const Vec3& n = rn.node.normal;
        const Complex i{0.0, 1.0};

        const CVec3 jump = ext.value(p, tau) - intr.value(p, tau);
        CVec3 jump_rate = ext.time_derivative(p, tau) - intr.time_derivative(p, tau);
        jump_rate += detail::directional_derivative(
            [&](const Vec3& y, double s) { return ext.value(y, s) - intr.value(y, s); }, p, tau,
            rn.node.velocity, L);

        const double ld = rn.node.lambda_dot;
        const double ld_dot = -dot(n, accel);

        RetardedDensity d;
        d.sigma = dot(n, jump);
        d.sigma_dot = dot(n, jump_rate);
        d.K = -i * cross(n, jump) - Complex(ld) * jump;
        d.K_dot = -i * cross(n, jump_rate) - Complex(ld_dot) * jump - Complex(ld) * jump_rate;
        if (want_kf)
            d.G = -i * cross(n, ext.time_antiderivative(p, tau) - intr.time_antiderivative(p, tau));
        return d;
    };
}

/// All retarded potentials of the scene's surface sources at (x,t). The
/// antiderivative (Kottler-Franz) terms cost an extra panel quadrature per
/// node; pass want_kf = false to skip them when only Stratton-Chu is needed.
inline PotentialValue potentials(const HuygensScene& scene, const Vec3& x, double t,
                                 bool want_kf) {
    return evaluate_potentials(*scene.surface, scene_density(scene, want_kf), x, t, scene.order,
                               want_kf);
}

inline PotentialValue potentials(const HuygensScene& scene, const Vec3& x, double t) {
    return potentials(scene, x, t, scene.surface->is_static());
}

// ---------------------------------------------------------------------------
// reconstructions
// ---------------------------------------------------------------------------

inline CVec3 stratton_chu_from(const PotentialValue& pv) {
    const Complex i{0.0, 1.0};
    return -pv.grad_phi - pv.dt_A + i * pv.curl_A;
}

inline CVec3 kottler_franz_from(const PotentialValue& pv) {
    if (!pv.curlcurl_idt_A)
        throw std::domain_error("kottler_franz: potentials carry no antiderivative terms");
    const Complex i{0.0, 1.0};
    return *pv.curlcurl_idt_A + i * pv.curl_A;
}

/// E = -grad phi_e - dt A_e - curl A_m,  H = -grad phi_m - dt A_m + curl A_e,
/// assembled in complex form as F = -grad Phi - dt A + i curl A.
inline CVec3 stratton_chu(const HuygensScene& scene, const Vec3& x, double t) {
    return stratton_chu_from(potentials(scene, x, t, false));
}

/// Electric-potential part only: E = -grad phi_e - dt A_e, H = curl A_e.
/// Coincides with stratton_chu exactly when the boundary residual vanishes.
inline CVec3 stratton_chu_electric_only(const HuygensScene& scene, const Vec3& x, double t) {
    const PotentialValue pv = potentials(scene, x, t, false);
    const Vec3 E = -real(pv.grad_phi) - real(pv.dt_A);
    const Vec3 H = real(pv.curl_A);
    return CVec3(E) + Complex{0.0, 1.0} * CVec3(H);
}

/// F = curl curl dt^-1 A + i curl A, valid off the surface. Static surfaces
/// only: the node-wise antiderivative payload assumes a fixed node distance.
inline CVec3 kottler_franz(const HuygensScene& scene, const Vec3& x, double t) {
    if (!scene.surface->is_static())
        throw std::domain_error("kottler_franz: moving surfaces are not supported");
    return kottler_franz_from(potentials(scene, x, t));
}

} // namespace emh
