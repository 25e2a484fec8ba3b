// scenario.hpp -- JSON scenario files: strict parsing (unknown keys are hard
//                 errors), validation against the scene geometry, and a
//                 canonical echo form that reparses to an equivalent scenario
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "emhuygens/huygens.hpp"
#include "emhuygens/partition.hpp"

namespace emh {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace cfg {

inline void check_keys(const json& j, const std::string& path,
                       const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(path + ": unknown key '" + it.key() + "'");
    }
}

inline const json& require(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + ": missing key '" + key + "'");
    return *it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

inline int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return j.get<int>();
}

inline std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path + ": expected a string");
    return j.get<std::string>();
}

inline Vec3 vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(path + ": expected [x, y, z]");
    return {number(j[0], path), number(j[1], path), number(j[2], path)};
}

inline json dump_vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

} // namespace cfg

struct PulseSpec {
    double t0{}, width{}, carrier{};

    static PulseSpec parse(const json& j, const std::string& path) {
        cfg::check_keys(j, path, {"t0", "width", "carrier"});
        PulseSpec p;
        p.t0 = cfg::number(cfg::require(j, path, "t0"), path + ".t0");
        p.width = cfg::number(cfg::require(j, path, "width"), path + ".width");
        p.carrier = cfg::number(cfg::require(j, path, "carrier"), path + ".carrier");
        if (!(p.width > 0.0)) throw ConfigError(path + ".width: must be positive");
        if (p.carrier < 0.0) throw ConfigError(path + ".carrier: must be >= 0");
        return p;
    }
    json canonical() const { return {{"t0", t0}, {"width", width}, {"carrier", carrier}}; }
    std::shared_ptr<const Signature> build() const { return hann_pulse(t0, width, carrier); }
};

struct FieldSpec {
    std::string kind; // dipole | zero | plane-wave | same-as-exterior
    Vec3 direction{0, 0, 1};
    Vec3 position{};
    Vec3 k_direction{1, 0, 0};
    Vec3 polarization{0, 0, 1};
    std::optional<PulseSpec> pulse;

    static FieldSpec parse(const json& j, const std::string& path, bool is_interior) {
        FieldSpec f;
        f.kind = cfg::text(cfg::require(j, path, "kind"), path + ".kind");
        if (f.kind == "dipole") {
            cfg::check_keys(j, path, {"kind", "direction", "position", "pulse"});
            f.direction = cfg::vec3(cfg::require(j, path, "direction"), path + ".direction");
            f.position = cfg::vec3(cfg::require(j, path, "position"), path + ".position");
            f.pulse = PulseSpec::parse(cfg::require(j, path, "pulse"), path + ".pulse");
        } else if (f.kind == "zero") {
            cfg::check_keys(j, path, {"kind"});
        } else if (f.kind == "plane-wave" && is_interior) {
            cfg::check_keys(j, path, {"kind", "k_direction", "polarization", "pulse"});
            f.k_direction = cfg::vec3(cfg::require(j, path, "k_direction"), path + ".k_direction");
            f.polarization =
                cfg::vec3(cfg::require(j, path, "polarization"), path + ".polarization");
            f.pulse = PulseSpec::parse(cfg::require(j, path, "pulse"), path + ".pulse");
        } else if (f.kind == "same-as-exterior" && is_interior) {
            cfg::check_keys(j, path, {"kind"});
        } else {
            throw ConfigError(path + ".kind: unsupported field kind '" + f.kind + "'");
        }
        return f;
    }

    json canonical() const {
        json j{{"kind", kind}};
        if (kind == "dipole") {
            j["direction"] = cfg::dump_vec3(direction);
            j["position"] = cfg::dump_vec3(position);
            j["pulse"] = pulse->canonical();
        } else if (kind == "plane-wave") {
            j["k_direction"] = cfg::dump_vec3(k_direction);
            j["polarization"] = cfg::dump_vec3(polarization);
            j["pulse"] = pulse->canonical();
        }
        return j;
    }

    FieldPtr build(const FieldPtr& exterior_field) const {
        if (kind == "dipole") return hertzian_dipole(unit(direction), pulse->build(), position);
        if (kind == "zero") return zero_field();
        if (kind == "plane-wave")
            return plane_wave(unit(k_direction), unit(polarization), pulse->build());
        if (kind == "same-as-exterior") {
            if (!exterior_field) throw ConfigError("interior: no exterior field to alias");
            return exterior_field;
        }
        throw ConfigError("field: unsupported kind '" + kind + "'");
    }
};

struct TrajectorySpec {
    std::string kind{"static"}; // static | uniform | circular
    Vec3 center{};
    Vec3 velocity{};
    double t_ref{};
    double orbit_radius{}, angular_speed{}, phase{};

    static TrajectorySpec parse(const json& j, const std::string& path) {
        TrajectorySpec t;
        t.kind = cfg::text(cfg::require(j, path, "kind"), path + ".kind");
        if (t.kind == "static") {
            cfg::check_keys(j, path, {"kind", "center"});
            t.center = cfg::vec3(cfg::require(j, path, "center"), path + ".center");
        } else if (t.kind == "uniform") {
            cfg::check_keys(j, path, {"kind", "center", "velocity", "t_ref"});
            t.center = cfg::vec3(cfg::require(j, path, "center"), path + ".center");
            t.velocity = cfg::vec3(cfg::require(j, path, "velocity"), path + ".velocity");
            if (j.contains("t_ref")) t.t_ref = cfg::number(j["t_ref"], path + ".t_ref");
            if (!(norm(t.velocity) < 1.0)) throw ConfigError(path + ": speed must be < 1");
        } else if (t.kind == "circular") {
            cfg::check_keys(j, path, {"kind", "center", "orbit_radius", "angular_speed", "phase"});
            t.center = cfg::vec3(cfg::require(j, path, "center"), path + ".center");
            t.orbit_radius =
                cfg::number(cfg::require(j, path, "orbit_radius"), path + ".orbit_radius");
            t.angular_speed =
                cfg::number(cfg::require(j, path, "angular_speed"), path + ".angular_speed");
            if (j.contains("phase")) t.phase = cfg::number(j["phase"], path + ".phase");
            if (!(std::abs(t.orbit_radius * t.angular_speed) < 1.0))
                throw ConfigError(path + ": orbital speed must be < 1");
        } else {
            throw ConfigError(path + ".kind: unsupported trajectory '" + t.kind + "'");
        }
        return t;
    }

    json canonical() const {
        json j{{"kind", kind}, {"center", cfg::dump_vec3(center)}};
        if (kind == "uniform") {
            j["velocity"] = cfg::dump_vec3(velocity);
            j["t_ref"] = t_ref;
        } else if (kind == "circular") {
            j["orbit_radius"] = orbit_radius;
            j["angular_speed"] = angular_speed;
            j["phase"] = phase;
        }
        return j;
    }

    TrajectoryPtr build() const {
        if (kind == "static") return std::make_shared<StaticTrajectory>(center);
        if (kind == "uniform") return std::make_shared<UniformTrajectory>(center, velocity, t_ref);
        return std::make_shared<CircularTrajectory>(center, orbit_radius, angular_speed, phase);
    }
};

struct SurfaceSpec {
    double radius{1.0};
    TrajectorySpec trajectory;

    static SurfaceSpec parse(const json& j, const std::string& path) {
        cfg::check_keys(j, path, {"radius", "trajectory"});
        SurfaceSpec s;
        s.radius = cfg::number(cfg::require(j, path, "radius"), path + ".radius");
        if (!(s.radius > 0.0)) throw ConfigError(path + ".radius: must be positive");
        s.trajectory = TrajectorySpec::parse(cfg::require(j, path, "trajectory"), path + ".trajectory");
        return s;
    }
    json canonical() const { return {{"radius", radius}, {"trajectory", trajectory.canonical()}}; }
    SurfacePtr build() const { return sphere_surface(trajectory.build(), radius); }
};

inline std::vector<double> parse_times(const json& j, const std::string& path) {
    std::vector<double> times;
    if (j.is_array()) {
        for (size_t k = 0; k < j.size(); ++k) times.push_back(cfg::number(j[k], path));
        if (times.empty()) throw ConfigError(path + ": needs at least one time");
        return times;
    }
    cfg::check_keys(j, path, {"start", "stop", "count"});
    const double start = cfg::number(cfg::require(j, path, "start"), path + ".start");
    const double stop = cfg::number(cfg::require(j, path, "stop"), path + ".stop");
    const int count = cfg::integer(cfg::require(j, path, "count"), path + ".count");
    if (count < 1) throw ConfigError(path + ".count: must be >= 1");
    for (int k = 0; k < count; ++k)
        times.push_back(count == 1 ? start : start + (stop - start) * k / (count - 1));
    return times;
}

struct GridSpec {
    std::string plane{"xz"}; // xy | xz | yz
    double offset{};
    double u_min{-2}, u_max{2}, v_min{-2}, v_max{2};
    int nu{5}, nv{5};
    std::vector<double> times{1.0};

    static GridSpec parse(const json& j, const std::string& path) {
        cfg::check_keys(j, path, {"plane", "offset", "extent", "resolution", "times"});
        GridSpec g;
        g.plane = cfg::text(cfg::require(j, path, "plane"), path + ".plane");
        if (g.plane != "xy" && g.plane != "xz" && g.plane != "yz")
            throw ConfigError(path + ".plane: must be xy, xz, or yz");
        g.offset = cfg::number(cfg::require(j, path, "offset"), path + ".offset");
        const json& ext = cfg::require(j, path, "extent");
        if (!ext.is_array() || ext.size() != 2 || !ext[0].is_array() || ext[0].size() != 2 ||
            !ext[1].is_array() || ext[1].size() != 2)
            throw ConfigError(path + ".extent: expected [[umin,umax],[vmin,vmax]]");
        g.u_min = cfg::number(ext[0][0], path + ".extent");
        g.u_max = cfg::number(ext[0][1], path + ".extent");
        g.v_min = cfg::number(ext[1][0], path + ".extent");
        g.v_max = cfg::number(ext[1][1], path + ".extent");
        const json& res = cfg::require(j, path, "resolution");
        if (!res.is_array() || res.size() != 2)
            throw ConfigError(path + ".resolution: expected [nu, nv]");
        g.nu = cfg::integer(res[0], path + ".resolution");
        g.nv = cfg::integer(res[1], path + ".resolution");
        if (g.nu < 1 || g.nv < 1) throw ConfigError(path + ".resolution: must be >= 1");
        g.times = parse_times(cfg::require(j, path, "times"), path + ".times");
        return g;
    }

    json canonical() const {
        return {{"plane", plane},
                {"offset", offset},
                {"extent", json::array({json::array({u_min, u_max}), json::array({v_min, v_max})})},
                {"resolution", json::array({nu, nv})},
                {"times", times}};
    }

    std::vector<Vec3> points() const {
        std::vector<Vec3> pts;
        pts.reserve(static_cast<size_t>(nu) * nv);
        for (int iu = 0; iu < nu; ++iu) {
            const double a = nu == 1 ? u_min : u_min + (u_max - u_min) * iu / (nu - 1);
            for (int iv = 0; iv < nv; ++iv) {
                const double b = nv == 1 ? v_min : v_min + (v_max - v_min) * iv / (nv - 1);
                if (plane == "xy") pts.push_back({a, b, offset});
                else if (plane == "xz") pts.push_back({a, offset, b});
                else pts.push_back({offset, a, b});
            }
        }
        return pts;
    }
};

struct PoyntingSpec {
    Vec3 tf_center{};
    double tf_radius{0.5};
    double tf_t_center{};
    double tf_t_halfwidth{0.5};
    BalanceQuadSpec quad;

    static PoyntingSpec parse(const json& j, const std::string& path) {
        cfg::check_keys(j, path, {"test_function", "volume_quadrature", "surface_quadrature"});
        PoyntingSpec p;
        const json& tf = cfg::require(j, path, "test_function");
        cfg::check_keys(tf, path + ".test_function", {"center", "radius", "t_center", "t_halfwidth"});
        p.tf_center = cfg::vec3(cfg::require(tf, path, "center"), path + ".test_function.center");
        p.tf_radius = cfg::number(cfg::require(tf, path, "radius"), path + ".test_function.radius");
        p.tf_t_center =
            cfg::number(cfg::require(tf, path, "t_center"), path + ".test_function.t_center");
        p.tf_t_halfwidth = cfg::number(cfg::require(tf, path, "t_halfwidth"),
                                       path + ".test_function.t_halfwidth");
        if (j.contains("volume_quadrature")) {
            const json& q = j["volume_quadrature"];
            cfg::check_keys(q, path + ".volume_quadrature", {"n_r", "n_mu", "n_phi", "n_t"});
            if (q.contains("n_r")) p.quad.n_r = cfg::integer(q["n_r"], path + ".n_r");
            if (q.contains("n_mu")) p.quad.n_mu = cfg::integer(q["n_mu"], path + ".n_mu");
            if (q.contains("n_phi")) p.quad.n_phi = cfg::integer(q["n_phi"], path + ".n_phi");
            if (q.contains("n_t")) p.quad.n_t = cfg::integer(q["n_t"], path + ".n_t");
        }
        if (j.contains("surface_quadrature")) {
            const json& q = j["surface_quadrature"];
            cfg::check_keys(q, path + ".surface_quadrature", {"n_theta", "n_phi"});
            if (q.contains("n_theta"))
                p.quad.surface.n_theta = cfg::integer(q["n_theta"], path + ".n_theta");
            if (q.contains("n_phi"))
                p.quad.surface.n_phi = cfg::integer(q["n_phi"], path + ".n_phi");
        }
        return p;
    }

    json canonical() const {
        return {{"test_function",
                 {{"center", cfg::dump_vec3(tf_center)},
                  {"radius", tf_radius},
                  {"t_center", tf_t_center},
                  {"t_halfwidth", tf_t_halfwidth}}},
                {"volume_quadrature",
                 {{"n_r", quad.n_r}, {"n_mu", quad.n_mu}, {"n_phi", quad.n_phi}, {"n_t", quad.n_t}}},
                {"surface_quadrature",
                 {{"n_theta", quad.surface.n_theta}, {"n_phi", quad.surface.n_phi}}}};
    }

    TestFunction4D test_function() const {
        return TestFunction4D(tf_center, tf_radius, tf_t_center, tf_t_halfwidth);
    }
};

struct CheckSpec {
    std::optional<double> max_rel_error;
    std::optional<double> max_residual;
    std::optional<double> max_charge_rel;
    std::optional<double> max_dqdt_rel;

    static CheckSpec parse(const json& j, const std::string& path) {
        cfg::check_keys(j, path, {"max_rel_error", "max_residual", "max_charge_rel", "max_dqdt_rel"});
        CheckSpec c;
        if (j.contains("max_rel_error"))
            c.max_rel_error = cfg::number(j["max_rel_error"], path + ".max_rel_error");
        if (j.contains("max_residual"))
            c.max_residual = cfg::number(j["max_residual"], path + ".max_residual");
        if (j.contains("max_charge_rel"))
            c.max_charge_rel = cfg::number(j["max_charge_rel"], path + ".max_charge_rel");
        if (j.contains("max_dqdt_rel"))
            c.max_dqdt_rel = cfg::number(j["max_dqdt_rel"], path + ".max_dqdt_rel");
        return c;
    }

    json canonical() const {
        json j = json::object();
        if (max_rel_error) j["max_rel_error"] = *max_rel_error;
        if (max_residual) j["max_residual"] = *max_residual;
        if (max_charge_rel) j["max_charge_rel"] = *max_charge_rel;
        if (max_dqdt_rel) j["max_dqdt_rel"] = *max_dqdt_rel;
        return j;
    }
};

/// A full experiment description, parsed strictly from one JSON document.
struct Scenario {
    FieldSpec exterior;
    FieldSpec interior;
    SurfaceSpec surface;
    QuadOrder quadrature{32, 64};
    GridSpec grid;
    std::string method{"sc"}; // sc | kf | both
    std::optional<PoyntingSpec> poynting;
    std::optional<std::vector<double>> charge_times;
    CheckSpec check;

    static Scenario parse(const json& j) {
        cfg::check_keys(j, "scenario",
                        {"exterior", "interior", "surface", "quadrature", "grid", "method",
                         "poynting", "charge", "check"});
        Scenario s;
        s.exterior = FieldSpec::parse(cfg::require(j, "scenario", "exterior"), "exterior", false);
        s.interior = FieldSpec::parse(cfg::require(j, "scenario", "interior"), "interior", true);
        s.surface = SurfaceSpec::parse(cfg::require(j, "scenario", "surface"), "surface");
        if (j.contains("quadrature")) {
            const json& q = j["quadrature"];
            cfg::check_keys(q, "quadrature", {"n_theta", "n_phi"});
            s.quadrature.n_theta =
                cfg::integer(cfg::require(q, "quadrature", "n_theta"), "quadrature.n_theta");
            s.quadrature.n_phi =
                cfg::integer(cfg::require(q, "quadrature", "n_phi"), "quadrature.n_phi");
            if (s.quadrature.n_theta < 2 || s.quadrature.n_phi < 4)
                throw ConfigError("quadrature: need n_theta >= 2 and n_phi >= 4");
        }
        s.grid = GridSpec::parse(cfg::require(j, "scenario", "grid"), "grid");
        if (j.contains("method")) {
            s.method = cfg::text(j["method"], "method");
            if (s.method != "sc" && s.method != "kf" && s.method != "both")
                throw ConfigError("method: must be sc, kf, or both");
        }
        if (j.contains("poynting")) s.poynting = PoyntingSpec::parse(j["poynting"], "poynting");
        if (j.contains("charge")) {
            cfg::check_keys(j["charge"], "charge", {"times"});
            s.charge_times = parse_times(cfg::require(j["charge"], "charge", "times"), "charge.times");
        }
        if (j.contains("check")) s.check = CheckSpec::parse(j["check"], "check");
        return s;
    }

    static Scenario parse_text(const std::string& text) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("JSON parse error: ") + e.what());
        }
        return parse(j);
    }

    json canonical() const {
        json j{{"exterior", exterior.canonical()},
               {"interior", interior.canonical()},
               {"surface", surface.canonical()},
               {"quadrature", {{"n_theta", quadrature.n_theta}, {"n_phi", quadrature.n_phi}}},
               {"grid", grid.canonical()},
               {"method", method}};
        if (poynting) j["poynting"] = poynting->canonical();
        if (charge_times) j["charge"] = {{"times", *charge_times}};
        const json c = check.canonical();
        if (!c.empty()) j["check"] = c;
        return j;
    }

    /// Build the scene and verify every grid (point, time) pair respects the
    /// hard evaluation exclusion zone around the surface.
    HuygensScene build_scene() const {
        FieldPtr ext = exterior.build(nullptr);
        FieldPtr intr = interior.build(ext);
        SurfacePtr surf = surface.build();
        HuygensScene scene(ext, intr, surf, quadrature);
        const double L = surf->characteristic_length();
        for (const Vec3& p : grid.points()) {
            for (double t : grid.times) {
                if (std::abs(surf->lambda(p, t)) < detail::kEvalExclusion * L)
                    throw ConfigError("grid: point inside the evaluation exclusion zone of S");
            }
        }
        return scene;
    }

    std::vector<double> resolve_charge_times() const {
        return charge_times ? *charge_times : grid.times;
    }
};

} // namespace emh
