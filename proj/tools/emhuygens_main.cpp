// emhuygens_main.cpp -- scenario-driven command line front end
//
// exit codes: 0 success, 1 configuration error, 2 numerical failure,
//             3 acceptance-threshold violation in --check mode

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "emhuygens/emhuygens.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw emh::ConfigError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw emh::ConfigError("cannot open output file: " + out_path);
    out << text;
}

std::vector<int> parse_orders(const std::string& list) {
    std::vector<int> orders;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            orders.push_back(std::stoi(item));
        } catch (...) {
            throw emh::ConfigError("--orders: cannot parse '" + item + "'");
        }
    }
    if (orders.empty()) throw emh::ConfigError("--orders: empty list");
    return orders;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"emhuygens: equivalent surface sources and field reconstruction"};
    app.require_subcommand(1);

    int threads = 1;
    bool check = false;
    app.add_option("--threads", threads, "worker threads for grid evaluation");
    app.add_flag("--check", check, "verify scenario thresholds; exit 3 on violation");

    std::string scenario_path, out_path, orders_list = "8,16,32";

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "reconstruct the glued field on the scenario grid");
    reconstruct->add_option("scenario", scenario_path, "scenario JSON file")->required();
    reconstruct->add_option("-o,--output", out_path, "output CSV (default stdout)");
    CLI::App* convergence =
        app.add_subcommand("convergence", "reconstruction error vs quadrature order");
    convergence->add_option("scenario", scenario_path, "scenario JSON file")->required();
    convergence->add_option("--orders", orders_list, "comma-separated n_theta list (n_phi = 2 n_theta)");
    convergence->add_option("-o,--output", out_path, "output CSV (default stdout)");
    CLI::App* poynting = app.add_subcommand("poynting", "weak Poynting balance report");
    poynting->add_option("scenario", scenario_path, "scenario JSON file")->required();
    poynting->add_option("-o,--output", out_path, "output CSV (default stdout)");
    CLI::App* charge = app.add_subcommand("charge", "surface charge history");
    charge->add_option("scenario", scenario_path, "scenario JSON file")->required();
    charge->add_option("-o,--output", out_path, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (selftest->parsed()) {
            const emh::SelfTestResult res = emh::run_selftest();
            emit(res.to_text(), out_path);
            return res.all_pass() ? 0 : 2;
        }

        const emh::Scenario s = emh::Scenario::parse_text(slurp(scenario_path));

        if (reconstruct->parsed()) {
            const emh::ReconstructResult res = emh::run_reconstruct(s, threads);
            emit(res.to_csv(s), out_path);
            if (check) {
                if (!s.check.max_rel_error)
                    throw emh::ConfigError("--check: scenario has no check.max_rel_error");
                const double denom = res.ref_scale > 0.0 ? res.ref_scale : 1.0;
                const double worst = std::max(res.max_sc_err, res.max_kf_err) / denom;
                if (worst > *s.check.max_rel_error)
                    throw emh::CheckError("reconstruction error " + emh::fmt17(worst) +
                                          " exceeds max_rel_error");
            }
        } else if (convergence->parsed()) {
            const emh::ConvergenceResult res =
                emh::run_convergence(s, parse_orders(orders_list), threads);
            emit(res.to_csv(s), out_path);
            if (check) {
                for (size_t k = 1; k < res.rows.size(); ++k) {
                    if (res.rows[k].max_exterior_err > res.rows[k - 1].max_exterior_err ||
                        res.rows[k].max_interior_err > res.rows[k - 1].max_interior_err)
                        throw emh::CheckError("convergence: error did not decrease with order");
                }
            }
        } else if (poynting->parsed()) {
            const emh::PoyntingResult res = emh::run_poynting(s);
            emit(res.to_csv(s), out_path);
            if (check) {
                if (!s.check.max_residual)
                    throw emh::ConfigError("--check: scenario has no check.max_residual");
                if (res.report.residual > *s.check.max_residual)
                    throw emh::CheckError("poynting residual exceeds max_residual");
            }
        } else if (charge->parsed()) {
            const emh::ChargeResult res = emh::run_charge(s, threads);
            emit(res.to_csv(s), out_path);
            if (check) {
                if (!s.check.max_charge_rel || !s.check.max_dqdt_rel)
                    throw emh::ConfigError("--check: scenario needs check.max_charge_rel and check.max_dqdt_rel");
                const double scale = res.sigma_scale > 0.0 ? res.sigma_scale : 1.0;
                for (const emh::ChargeRow& r : res.rows) {
                    if (std::abs(r.Q.real()) / scale > *s.check.max_charge_rel)
                        throw emh::CheckError("charge: |Re Q| exceeds max_charge_rel");
                    if (std::abs(r.dQdt) / scale > *s.check.max_dqdt_rel)
                        throw emh::CheckError("charge: |dQ/dt| exceeds max_dqdt_rel");
                }
            }
        }
        return 0;
    } catch (const emh::CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 3;
    } catch (const emh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
