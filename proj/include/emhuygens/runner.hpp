// runner.hpp -- experiment orchestration behind the CLI subcommands: grid
//               reconstruction, convergence sweeps, charge histories, the
//               Poynting balance report, and the invariant self-test
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emhuygens/parallel.hpp"
#include "emhuygens/scenario.hpp"
#include "emhuygens/version.hpp"

namespace emh {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_header(const Scenario& s, const std::string& columns) {
    std::ostringstream os;
    os << "# emhuygens " << kVersion << "\n";
    os << "# scenario: " << s.canonical().dump() << "\n";
    os << "# columns: " << columns << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

struct ReconstructRow {
    Vec3 x;
    double t{};
    CVec3 ref, sc, kf;
};

struct ReconstructResult {
    std::vector<ReconstructRow> rows;
    bool has_sc{}, has_kf{};
    double ref_scale{}; // max |F_ref| over the grid; denominator of rel errors
    double max_sc_err{}, max_kf_err{};

    std::string to_csv(const Scenario& s) const {
        std::string cols = "x,y,z,t,ref_Ex,ref_Ey,ref_Ez,ref_Hx,ref_Hy,ref_Hz";
        if (has_sc) cols += ",sc_Ex,sc_Ey,sc_Ez,sc_Hx,sc_Hy,sc_Hz,sc_abs_err,sc_rel_err";
        if (has_kf) cols += ",kf_Ex,kf_Ey,kf_Ez,kf_Hx,kf_Hy,kf_Hz,kf_abs_err,kf_rel_err";
        std::ostringstream os;
        os << csv_header(s, cols);
        os << "# ref_scale: " << fmt17(ref_scale) << "\n";
        auto put6 = [&](const CVec3& F) {
            const Vec3 E = real(F), H = imag(F);
            os << "," << fmt17(E.x) << "," << fmt17(E.y) << "," << fmt17(E.z) << "," << fmt17(H.x)
               << "," << fmt17(H.y) << "," << fmt17(H.z);
        };
        const double denom = ref_scale > 0.0 ? ref_scale : 1.0;
        for (const ReconstructRow& r : rows) {
            os << fmt17(r.x.x) << "," << fmt17(r.x.y) << "," << fmt17(r.x.z) << "," << fmt17(r.t);
            put6(r.ref);
            if (has_sc) {
                put6(r.sc);
                const double err = norm(r.sc - r.ref);
                os << "," << fmt17(err) << "," << fmt17(err / denom);
            }
            if (has_kf) {
                put6(r.kf);
                const double err = norm(r.kf - r.ref);
                os << "," << fmt17(err) << "," << fmt17(err / denom);
            }
            os << "\n";
        }
        return os.str();
    }
};

inline ReconstructResult run_reconstruct(const Scenario& s, int threads = 1) {
    const HuygensScene scene = s.build_scene();
    const bool want_sc = s.method == "sc" || s.method == "both";
    const bool want_kf = s.method == "kf" || s.method == "both";
    if (want_kf && !scene.surface->is_static())
        throw ConfigError("method: Kottler-Franz requires a static surface");

    const std::vector<Vec3> pts = s.grid.points();
    std::vector<ReconstructRow> rows(pts.size() * s.grid.times.size());

    parallel_for(rows.size(), threads, [&](size_t idx) {
        const size_t ip = idx / s.grid.times.size();
        const size_t it = idx % s.grid.times.size();
        ReconstructRow& row = rows[idx];
        row.x = pts[ip];
        row.t = s.grid.times[it];
        row.ref = glued_reference(scene, row.x, row.t);
        const PotentialValue pv = potentials(scene, row.x, row.t, want_kf);
        if (want_sc) row.sc = stratton_chu_from(pv);
        if (want_kf) row.kf = kottler_franz_from(pv);
    });

    ReconstructResult res;
    res.rows = std::move(rows);
    res.has_sc = want_sc;
    res.has_kf = want_kf;
    for (const ReconstructRow& r : res.rows) res.ref_scale = std::max(res.ref_scale, norm(r.ref));
    for (const ReconstructRow& r : res.rows) {
        if (want_sc) res.max_sc_err = std::max(res.max_sc_err, norm(r.sc - r.ref));
        if (want_kf) res.max_kf_err = std::max(res.max_kf_err, norm(r.kf - r.ref));
    }
    return res;
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

struct ConvergenceRow {
    QuadOrder order;
    double max_interior_err{};
    double max_exterior_err{};
    double seconds{};
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;

    /// timings go into trailing comments, keeping data rows byte-deterministic
    std::string to_csv(const Scenario& s) const {
        std::ostringstream os;
        os << csv_header(s, "n_theta,n_phi,max_interior_err,max_exterior_err");
        for (const ConvergenceRow& r : rows)
            os << r.order.n_theta << "," << r.order.n_phi << "," << fmt17(r.max_interior_err)
               << "," << fmt17(r.max_exterior_err) << "\n";
        for (const ConvergenceRow& r : rows)
            os << "# timing: order=(" << r.order.n_theta << "," << r.order.n_phi
               << ") seconds=" << r.seconds << "\n";
        return os.str();
    }
};

inline ConvergenceResult run_convergence(const Scenario& s, const std::vector<int>& theta_orders,
                                         int threads = 1) {
    if (theta_orders.empty()) throw ConfigError("convergence: empty order list");
    ConvergenceResult res;
    for (int n : theta_orders) {
        if (n < 2) throw ConfigError("convergence: orders must be >= 2");
        Scenario sc = s;
        sc.quadrature = QuadOrder{n, 2 * n};
        const auto t0 = std::chrono::steady_clock::now();
        const ReconstructResult rec = run_reconstruct(sc, threads);
        const auto t1 = std::chrono::steady_clock::now();
        ConvergenceRow row;
        row.order = sc.quadrature;
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        const HuygensScene scene = sc.build_scene();
        for (const ReconstructRow& r : rec.rows) {
            const double lam = scene.surface->lambda(r.x, r.t);
            const CVec3 rec_field = rec.has_sc ? r.sc : r.kf;
            const double err = norm(rec_field - r.ref);
            if (lam < 0.0)
                row.max_interior_err = std::max(row.max_interior_err, err);
            else
                row.max_exterior_err = std::max(row.max_exterior_err, err);
        }
        res.rows.push_back(row);
    }
    return res;
}

// ---------------------------------------------------------------------------
// poynting
// ---------------------------------------------------------------------------

struct PoyntingResult {
    BalanceReport report;

    std::string to_csv(const Scenario& s) const {
        std::ostringstream os;
        os << csv_header(s, "lhs,rhs,residual,scale");
        os << fmt17(report.lhs) << "," << fmt17(report.rhs) << "," << fmt17(report.residual) << ","
           << fmt17(report.scale) << "\n";
        return os.str();
    }
};

inline PoyntingResult run_poynting(const Scenario& s) {
    if (!s.poynting) throw ConfigError("poynting: scenario has no poynting section");
    const HuygensScene scene = s.build_scene();
    CellPartition partition({scene.surface}, {scene.interior, scene.exterior},
                            {s.poynting->tf_t_center});
    PoyntingResult res;
    res.report = weak_poynting_balance(partition, s.poynting->test_function(), s.poynting->quad);
    return res;
}

// ---------------------------------------------------------------------------
// charge
// ---------------------------------------------------------------------------

struct ChargeRow {
    double t{};
    Complex Q{};
    double dQdt{}; // central difference of Re Q over the sample times
};

struct ChargeResult {
    std::vector<ChargeRow> rows;
    double sigma_scale{}; // max |sigma_e| * area, the natural charge scale

    std::string to_csv(const Scenario& s) const {
        std::ostringstream os;
        os << csv_header(s, "t,re_Q,im_Q,dQdt");
        os << "# charge_scale: " << fmt17(sigma_scale) << "\n";
        for (const ChargeRow& r : rows)
            os << fmt17(r.t) << "," << fmt17(r.Q.real()) << "," << fmt17(r.Q.imag()) << ","
               << fmt17(r.dQdt) << "\n";
        return os.str();
    }
};

inline ChargeResult run_charge(const Scenario& s, int threads = 1) {
    const HuygensScene scene = s.build_scene();
    const std::vector<double> times = s.resolve_charge_times();
    ChargeResult res;
    res.rows.resize(times.size());

    std::vector<double> sigma_max(times.size(), 0.0);
    parallel_for(times.size(), threads, [&](size_t k) {
        const double t = times[k];
        res.rows[k].t = t;
        Complex q{};
        double area = 0.0, smax = 0.0;
        for (const QuadNode& node : quad_nodes(*scene.surface, t, scene.order)) {
            const Complex sig = dot(node.normal, jump_field(scene, node.point, t));
            q += node.weight * sig;
            area += node.weight;
            smax = std::max(smax, std::abs(sig.real()));
        }
        res.rows[k].Q = q;
        sigma_max[k] = smax * area;
    });
    for (double sm : sigma_max) res.sigma_scale = std::max(res.sigma_scale, sm);

    for (size_t k = 0; k < res.rows.size(); ++k) {
        const size_t lo = k == 0 ? 0 : k - 1;
        const size_t hi = k + 1 == res.rows.size() ? k : k + 1;
        if (hi == lo) continue;
        res.rows[k].dQdt =
            (res.rows[hi].Q.real() - res.rows[lo].Q.real()) / (times[hi] - times[lo]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct SelfTestLine {
    std::string name;
    double measured{};
    double tolerance{};
    bool pass{};
};

struct SelfTestResult {
    std::vector<SelfTestLine> lines;
    bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    std::string to_text() const {
        std::ostringstream os;
        os << "# emhuygens " << kVersion << " selftest\n";
        for (const auto& l : lines)
            os << (l.pass ? "PASS" : "FAIL") << " " << l.name << " measured=" << l.measured
               << " tol=" << l.tolerance << "\n";
        os << (all_pass() ? "OK" : "FAILED") << "\n";
        return os.str();
    }
};

inline SelfTestResult run_selftest() {
    SelfTestResult res;
    auto record = [&](const std::string& name, double measured, double tol) {
        res.lines.push_back({name, measured, tol, measured <= tol});
    };

    // algebra homomorphism against the 2x2 matrix representation
    {
        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        auto rnd = [&] {
            return PauliNum{{dist(rng), dist(rng)},
                            {{dist(rng), dist(rng)}, {dist(rng), dist(rng)}, {dist(rng), dist(rng)}}};
        };
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            const PauliNum a = rnd(), b = rnd();
            const double err = norm(to_matrix(mul(a, b)) - to_matrix(a) * to_matrix(b));
            worst = std::max(worst, err / (norm(a) * norm(b)));
        }
        record("pauli_matrix_homomorphism", worst, 1e-12);
    }

    // Dbar D = box: the finite-difference wave operator converges at order 2
    {
        auto g = [](const Vec3& x, double t) {
            return std::sin(1.3 * x.x + 0.7 * x.y - 0.4 * x.z) * std::cos(1.1 * t);
        };
        const Vec3 x{0.3, -0.2, 0.5};
        const double t = 0.7;
        const double k2 = 1.3 * 1.3 + 0.7 * 0.7 + 0.4 * 0.4;
        const double exact = (k2 - 1.1 * 1.1) * g(x, t);
        const double e1v = std::abs(fd_box(g, x, t, 0.02) - exact);
        const double e2v = std::abs(fd_box(g, x, t, 0.01) - exact);
        record("wave_operator_ratio_minus_4", std::abs(e1v / e2v - 4.0), 0.5);
    }

    // spherical quadrature: weights sum to the sphere area
    {
        const auto surf = sphere_surface(std::make_shared<StaticTrajectory>(Vec3{}), 1.0);
        double area = 0.0;
        for (const QuadNode& n : quad_nodes(*surf, 0.0, {32, 64})) area += n.weight;
        record("sphere_area_error", std::abs(area - 4.0 * 3.14159265358979323846), 1e-10);
    }

    // signed-distance gradient is unit on the surface
    {
        const auto surf = sphere_surface(
            std::make_shared<UniformTrajectory>(Vec3{0.1, 0, 0}, Vec3{0.2, 0, 0.1}), 1.5);
        double worst = 0.0;
        for (const QuadNode& n : quad_nodes(*surf, 0.4, {8, 16}))
            worst = std::max(worst, std::abs(norm(surf->grad_lambda(n.point, 0.4)) - 1.0));
        record("grad_lambda_unit", worst, 1e-12);
    }

    // retarded-time solver residual on a moving sphere
    {
        const auto surf = sphere_surface(
            std::make_shared<UniformTrajectory>(Vec3{}, Vec3{0.3, 0, 0}), 1.0);
        double worst = 0.0;
        for (double u : {-0.7, 0.0, 0.6}) {
            for (double v : {0.3, 2.0, 4.4}) {
                const RetardedNode rn = retarded_time(*surf, Vec3{2.5, 0.4, -0.3}, 1.2, u, v);
                worst = std::max(worst, std::abs(rn.t_star + rn.r - 1.2));
            }
        }
        record("retarded_residual", worst, 1e-12);
    }

    // Maxwell residual of the built-in dipole (finite-difference oracle)
    {
        const auto dip = hertzian_dipole(e3, hann_pulse(0.0, 3.0, 4.0), Vec3{0, 0, 0.3});
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            Vec3 dir{dist(rng), dist(rng), dist(rng)};
            dir = unit(dir);
            const Vec3 x = Vec3{0, 0, 0.3} + dir * 1.4;
            const double t = 1.4 + 1.5;
            const double resid = maxwell_residual(*dip, x, t, 1e-4);
            const double scale = norm(dip->value(x, t));
            worst = std::max(worst, resid / scale);
        }
        record("dipole_maxwell_residual", worst, 1e-6);
    }

    return res;
}

} // namespace emh
