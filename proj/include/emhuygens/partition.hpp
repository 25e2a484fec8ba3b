// partition.hpp -- multi-cell spacetime partitions: combined fields, cellular
//                  surface sources, quadratic local partitions, and the weak
//                  Poynting balance check
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "emhuygens/huygens.hpp"

namespace emh {

// ---------------------------------------------------------------------------
// test functions
// ---------------------------------------------------------------------------

/// Separable C^2 bump with exact compact support:
///   phi(x,t) = (1 - |x-c|^2/rho^2)^3 * (1 - ((t-tc)/th)^2)^3
/// on the ball |x-c| < rho times the interval |t-tc| < th, zero outside.
struct TestFunction4D {
    Vec3 center;
    double radius{};
    double t_center{};
    double t_halfwidth{};

    TestFunction4D(const Vec3& c, double rho, double tc, double th)
        : center(c), radius(rho), t_center(tc), t_halfwidth(th) {
        if (!(rho > 0.0) || !(th > 0.0))
            throw std::invalid_argument("test function: support extents must be positive");
    }

    double spatial(const Vec3& x) const {
        const Vec3 d = x - center;
        const double u = dot(d, d) / (radius * radius);
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        return w * w * w;
    }
    double temporal(double t) const {
        const double s = (t - t_center) / t_halfwidth;
        const double u = s * s;
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        return w * w * w;
    }

    double value(const Vec3& x, double t) const { return spatial(x) * temporal(t); }

    double dt(const Vec3& x, double t) const {
        const double s = (t - t_center) / t_halfwidth;
        const double u = s * s;
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        return spatial(x) * 3.0 * w * w * (-2.0 * s / t_halfwidth);
    }

    Vec3 grad(const Vec3& x, double t) const {
        const Vec3 d = x - center;
        const double u = dot(d, d) / (radius * radius);
        if (u >= 1.0) return {};
        const double w = 1.0 - u;
        return d * (temporal(t) * 3.0 * w * w * (-2.0 / (radius * radius)));
    }

    double t_lo() const { return t_center - t_halfwidth; }
    double t_hi() const { return t_center + t_halfwidth; }
};

// ---------------------------------------------------------------------------
// cell partitions
// ---------------------------------------------------------------------------

/// Nested level sets lambda_0 < lambda_1 < ... (inner to outer) cutting space
/// into cells E_0 (innermost), ..., E_M (exterior), with one field per cell,
/// sourceless on a neighborhood of its cell's closure.
struct CellPartition {
    std::vector<SurfacePtr> interfaces; // inner to outer
    std::vector<FieldPtr> fields;       // size interfaces.size()+1, cell 0 innermost

    /// A single cell with no interfaces is allowed (trivial partition).
    CellPartition(std::vector<SurfacePtr> ifaces, std::vector<FieldPtr> cell_fields,
                  std::vector<double> validation_times = {0.0})
        : interfaces(std::move(ifaces)), fields(std::move(cell_fields)) {
        if (fields.empty() || fields.size() != interfaces.size() + 1)
            throw std::invalid_argument("cell partition: need one field per cell");
        validate(validation_times);
    }

    size_t cell_count() const { return fields.size(); }

    /// index of the cell containing x at time t; throws on an interface
    size_t cell_index(const Vec3& x, double t) const {
        size_t outside = 0;
        for (const auto& s : interfaces) {
            const double lam = s->lambda(x, t);
            if (std::abs(lam) <= 1e-12 * s->characteristic_length())
                throw std::domain_error("cell partition: point lies on an interface");
            if (lam > 0.0) ++outside;
        }
        return outside;
    }

    /// characteristic function of cell k, evaluated by sign tests
    double chi(size_t k, const Vec3& x, double t) const { return cell_index(x, t) == k ? 1.0 : 0.0; }

private:
    void validate(const std::vector<double>& times) const {
        for (const auto& t : times) {
            // nesting: chart samples of interface k must lie strictly inside k+1
            for (size_t k = 0; k + 1 < interfaces.size(); ++k) {
                for (int a = -2; a <= 2; ++a) {
                    for (int b = 0; b < 4; ++b) {
                        const Vec3 p =
                            interfaces[k]->chart_point(a / 2.5, b * 1.5707963267948966, t);
                        if (!(interfaces[k + 1]->lambda(p, t) < 0.0))
                            throw std::invalid_argument("cell partition: interfaces not nested");
                    }
                }
            }
            // sources must stay clear of their own cell's closure
            for (size_t k = 0; k < fields.size(); ++k) {
                const auto p = fields[k]->source_point();
                if (!p) continue;
                if (interfaces.empty())
                    throw std::invalid_argument(
                        "cell partition: a single-cell field must be sourceless");
                const double margin = 1e-6 * interfaces.front()->characteristic_length();
                double clearance = 0.0; // distance from p to closure of cell k
                if (k > 0) clearance = std::max(clearance, -interfaces[k - 1]->lambda(*p, t));
                if (k < interfaces.size())
                    clearance = std::max(clearance, interfaces[k]->lambda(*p, t));
                if (!(clearance > margin))
                    throw std::invalid_argument(
                        "cell partition: field source touches the closure of its own cell");
            }
        }
    }
};

/// F(x,t) of the unique cell containing (x,t).
inline CVec3 combined_field(const CellPartition& P, const Vec3& x, double t) {
    return P.fields[P.cell_index(x, t)]->value(x, t);
}

/// Jump across interface k: outer cell field minus inner cell field.
inline CVec3 interface_jump(const CellPartition& P, size_t k, const Vec3& x, double t) {
    if (k >= P.interfaces.size()) throw std::invalid_argument("interface_jump: bad index");
    return P.fields[k + 1]->value(x, t) - P.fields[k]->value(x, t);
}

/// Pairwise jump F_a - F_b between any two cell fields (antisymmetric).
inline CVec3 cell_jump(const CellPartition& P, size_t a, size_t b, const Vec3& x, double t) {
    if (a >= P.fields.size() || b >= P.fields.size())
        throw std::invalid_argument("cell_jump: bad index");
    return P.fields[a]->value(x, t) - P.fields[b]->value(x, t);
}

/// Equivalent surface sources carried by interface k, from its jump field.
inline SurfaceDensitySample partition_source_sample(const CellPartition& P, size_t k,
                                                    const QuadNode& node, double t) {
    if (k >= P.interfaces.size())
        throw std::invalid_argument("partition_source_sample: bad index");
    return make_density_sample(node, interface_jump(P, k, node.point, t));
}

/// lhs = invariant of the chi-weighted sum, rhs = invariant of the active
/// cell's field; the projection property makes them equal off interfaces.
inline std::pair<Complex, Complex> quadratic_partition_check(const CellPartition& P, const Vec3& x,
                                                             double t) {
    CVec3 sum{};
    for (size_t k = 0; k < P.cell_count(); ++k) sum += Complex(P.chi(k, x, t)) * P.fields[k]->value(x, t);
    const CVec3 active = P.fields[P.cell_index(x, t)]->value(x, t);
    return {lorentz_invariant(sum), lorentz_invariant(active)};
}

// ---------------------------------------------------------------------------
// weak Poynting balance
// ---------------------------------------------------------------------------

struct BalanceQuadSpec {
    int n_r{24};        // radial points per cell segment
    int n_mu{32};       // polar points
    int n_phi{48};      // azimuthal points
    int n_t{20};        // time points
    QuadOrder surface{48, 96};
};

struct BalanceReport {
    double lhs{};      // -|integral of (U dphi/dt + S . grad phi)|  over cells
    double rhs{};      // sum of interface jump integrals
    double residual{}; // |lhs-rhs| / max(|lhs|,|rhs|,floor)
    double scale{};    // gross magnitude used for the floor
};

namespace detail {

inline void orthonormal_frame(const Vec3& a, Vec3& b1, Vec3& b2) {
    const Vec3 trial = std::abs(a.x) < 0.9 ? e1 : e2;
    b1 = unit(cross(a, trial));
    b2 = cross(a, b1);
}

} // namespace detail

/// Weak form of the generalized Poynting identity: the power density of the
/// combined field, paired with a compactly supported test function, equals
/// the single-counted interface integrals of the energy and flux jumps,
///   -int (U phi_t + S . grad phi) = sum_k int_t oint phi (ld U^j + n . S^j).
/// Volume integration is tensor Gauss-Legendre in spherical shells about the
/// common sphere center, split radially at every interface so the integrand
/// is smooth on each subdomain; requires static concentric spherical
/// interfaces. The residual floor is 1e-3 of the gross integrand magnitude.
inline BalanceReport weak_poynting_balance(const CellPartition& P, const TestFunction4D& phi,
                                           const BalanceQuadSpec& spec = {}) {
    if (spec.n_r < 2 || spec.n_mu < 2 || spec.n_phi < 4 || spec.n_t < 2)
        throw std::invalid_argument("weak_poynting_balance: degenerate quadrature spec");

    // support must avoid all true sources
    for (const auto& f : P.fields) {
        if (const auto p = f->source_point()) {
            if (dist(*p, phi.center) <= phi.radius)
                throw std::invalid_argument(
                    "weak_poynting_balance: test-function support overlaps a field source");
        }
    }

    // static concentric spheres only; a single-cell partition integrates in
    // coordinates centered on the test-function support
    std::vector<double> radii;
    Vec3 center = phi.center;
    for (size_t k = 0; k < P.interfaces.size(); ++k) {
        const auto desc = P.interfaces[k]->as_static_sphere();
        if (!desc)
            throw std::invalid_argument(
                "weak_poynting_balance: interfaces must be static spheres");
        if (k == 0)
            center = desc->first;
        else if (dist(center, desc->first) > 1e-12 * desc->second)
            throw std::invalid_argument("weak_poynting_balance: spheres must be concentric");
        radii.push_back(desc->second);
    }

    const double two_pi = 2.0 * 3.14159265358979323846;

    // --- volume side ---
    const Vec3 offset = phi.center - center;
    const double d = norm(offset);
    double r_lo, r_hi, mu_lo;
    Vec3 axis;
    if (d <= phi.radius + 1e-14) {
        axis = e3;
        r_lo = 0.0;
        r_hi = d + phi.radius;
        mu_lo = -1.0;
    } else {
        axis = offset / d;
        r_lo = d - phi.radius;
        r_hi = d + phi.radius;
        const double ratio = phi.radius / d;
        mu_lo = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    }
    Vec3 b1, b2;
    detail::orthonormal_frame(axis, b1, b2);

    std::vector<double> breaks{r_lo};
    for (double R : radii)
        if (R > r_lo + 1e-14 && R < r_hi - 1e-14) breaks.push_back(R);
    breaks.push_back(r_hi);

    const QuadRule1D mu_rule = gauss_legendre(spec.n_mu, mu_lo, 1.0);
    const QuadRule1D t_rule = gauss_legendre(spec.n_t, phi.t_lo(), phi.t_hi());
    const double wphi = two_pi / spec.n_phi;

    double lhs = 0.0, gross = 0.0;
    for (size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
        const QuadRule1D r_rule = gauss_legendre(spec.n_r, breaks[seg], breaks[seg + 1]);
        // classify the cell once per segment
        const double r_mid = 0.5 * (breaks[seg] + breaks[seg + 1]);
        size_t cell = 0;
        for (double R : radii)
            if (r_mid > R) ++cell;
        const AnalyticField& f = *P.fields[cell];

        for (int ir = 0; ir < spec.n_r; ++ir) {
            const double r = r_rule.nodes[ir];
            for (int im = 0; im < spec.n_mu; ++im) {
                const double mu = mu_rule.nodes[im];
                const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                for (int ip = 0; ip < spec.n_phi; ++ip) {
                    const double az = wphi * ip;
                    const Vec3 x = center + axis * (r * mu) +
                                   b1 * (r * s * std::cos(az)) + b2 * (r * s * std::sin(az));
                    const double wx = r_rule.weights[ir] * mu_rule.weights[im] * wphi * r * r;
                    for (int it = 0; it < spec.n_t; ++it) {
                        const double t = t_rule.nodes[it];
                        const double pt = phi.dt(x, t);
                        const Vec3 gp = phi.grad(x, t);
                        if (pt == 0.0 && gp.x == 0.0 && gp.y == 0.0 && gp.z == 0.0) continue;
                        const EnergyMomentum em = energy_momentum(f.value(x, t));
                        const double val = em.U * pt + dot(em.S, gp);
                        const double w = wx * t_rule.weights[it];
                        lhs -= w * val;
                        gross += w * (std::abs(em.U * pt) + std::abs(dot(em.S, gp)));
                    }
                }
            }
        }
    }

    // --- interface side ---
    double rhs = 0.0, gross_surf = 0.0;
    for (size_t k = 0; k < P.interfaces.size(); ++k) {
        const auto nodes = quad_nodes(*P.interfaces[k], 0.0, spec.surface);
        const AnalyticField& inner = *P.fields[k];
        const AnalyticField& outer = *P.fields[k + 1];
        for (const QuadNode& node : nodes) {
            for (int it = 0; it < spec.n_t; ++it) {
                const double t = t_rule.nodes[it];
                const double p = phi.value(node.point, t);
                if (p == 0.0) continue;
                const EnergyMomentum em_o = energy_momentum(outer.value(node.point, t));
                const EnergyMomentum em_i = energy_momentum(inner.value(node.point, t));
                const double ujump = em_o.U - em_i.U;
                const Vec3 sjump = em_o.S - em_i.S;
                const double val = node.lambda_dot * ujump + dot(node.normal, sjump);
                const double w = node.weight * t_rule.weights[it];
                rhs += w * p * val;
                gross_surf += w * std::abs(p) * (em_o.U + em_i.U + norm(em_o.S) + norm(em_i.S));
            }
        }
    }

    BalanceReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.scale = std::max(gross, gross_surf);
    const double floor = 1e-3 * std::max(rep.scale, 1e-300);
    rep.residual = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), floor});
    return rep;
}

} // namespace emh
