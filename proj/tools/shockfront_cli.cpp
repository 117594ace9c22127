// Command-line driver: solve, riemann, distance, convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "shockfront/json_io.hpp"

namespace {

using namespace shockfront;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

int cmd_solve(const std::string& config_path, const std::string& times_arg,
              const std::string& out_path) {
    const json cfg = read_json_file(config_path);
    const Flux base = flux_from_json(cfg.at("flux"));

    StudyConfig dcfg;  // reuse the initial-data descriptors of the study schema
    dcfg.initial_kind = cfg.at("initial").at("type").get<std::string>();
    if (dcfg.initial_kind == "staircase") dcfg.staircase_steps = cfg["initial"].value("steps", 4);
    if (dcfg.initial_kind == "samples") {
        dcfg.custom_initial =
            PiecewiseConstantFn(cfg["initial"].at("breakpoints").get<std::vector<double>>(),
                                cfg["initial"].at("values").get<std::vector<double>>());
    }
    const InitialData data = make_initial(dcfg);

    double dx = 0.0;
    if (cfg.contains("dx")) {
        dx = cfg["dx"].get<double>();
    } else if (cfg.contains("k")) {
        dx = std::ldexp(1.0, -cfg["k"].get<int>());
    } else {
        throw std::invalid_argument("solve config: need 'dx' or 'k'");
    }
    const double lambda = cfg.value("lambda", 1.0);
    const bool snap = cfg.value("snap", true);
    const double delta = lambda * dx;

    std::vector<double> times;
    for (const auto& t : split_list(times_arg)) times.push_back(std::stod(t));
    if (times.empty()) throw std::invalid_argument("solve: need at least one time");

    PiecewiseConstantFn u0 = project_to_grid(data, dx);
    double snap_shift = 0.0;
    if (snap) {
        auto sr = snap_to_lattice(u0, delta);
        u0 = std::move(sr.fn);
        snap_shift = sr.max_shift;
    }
    Flux flux = base;
    if (!base.is_piecewise_linear()) flux = interpolate_flux(base, delta, data.sup_norm);

    const double t_max = *std::max_element(times.begin(), times.end());
    const auto run = run_front_tracking(u0, flux, t_max);

    json snaps = json::array();
    for (double t : times) snaps.push_back(json{{"t", t}, {"fn", to_json(snapshot(run, t))}});
    const json out{{"snapshots", snaps},
                   {"events", json{{"count", run.events().size()},
                                   {"final_fronts", run.final_front_count()}}},
                   {"snap_max_shift", snap_shift}};
    write_text(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_riemann(const std::string& flux_path, double ul, double ur) {
    const Flux flux = flux_from_json(read_json_file(flux_path));
    const RiemannFan fan = solve_riemann(flux, ul, ur);
    std::cout << to_json(fan).dump(2) << "\n";
    return 0;
}

int cmd_distance(const std::string& a_path, const std::string& b_path, const std::string& ps) {
    const PiecewiseConstantFn a = pc_from_json(read_json_file(a_path));
    const PiecewiseConstantFn b = pc_from_json(read_json_file(b_path));
    std::vector<double> plist;
    for (const auto& p : split_list(ps)) {
        if (p == "inf") continue;  // winf is always reported
        plist.push_back(std::stod(p));
    }
    const DistanceReport rep = distance_report(a, b, plist);
    std::cout << to_json(rep).dump(2) << "\n";
    return 0;
}

int cmd_convergence(const std::string& config_path, const std::string& format,
                    const std::string& out_path) {
    StudyConfig cfg;
    try {
        cfg = study_config_from_json(read_json_file(config_path));
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 3;
    }
    StudyResult res;
    try {
        res = run_study(cfg);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 3;
    }
    if (format == "json") {
        write_text(out_path, to_json(res).dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& table : res.tables) {
            os << "# t=" << format_float(table.time) << " reference=" << table.reference_mode;
            if (table.outside_hypotheses) os << " (outside W1 theorem hypotheses: Lip+ unbounded)";
            os << "\n";
            emit_csv(table, os);
        }
        write_text(out_path, os.str());
    }
    return res.any_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"front tracking for scalar conservation laws with exact Wasserstein metrics"};
    app.require_subcommand(1);

    std::string config_path, out_path, times_arg = "1.0";
    auto* solve = app.add_subcommand("solve", "run front tracking and emit snapshots");
    solve->add_option("--config", config_path, "solver config JSON")->required();
    solve->add_option("--times", times_arg, "comma-separated output times");
    solve->add_option("--output", out_path, "output path (stdout if omitted)");

    std::string flux_path;
    double ul = 0.0, ur = 0.0;
    auto* riemann = app.add_subcommand("riemann", "print a single Riemann fan");
    riemann->add_option("--flux", flux_path, "flux descriptor JSON")->required();
    riemann->add_option("--ul", ul, "left state")->required();
    riemann->add_option("--ur", ur, "right state")->required();

    std::string a_path, b_path, ps = "1,2,inf";
    auto* distance = app.add_subcommand("distance", "distances between two step functions");
    distance->add_option("--a", a_path, "first function JSON")->required();
    distance->add_option("--b", b_path, "second function JSON")->required();
    distance->add_option("--p", ps, "comma-separated p values ('inf' allowed)");

    std::string format = "csv";
    auto* convergence = app.add_subcommand("convergence", "run a refinement study");
    convergence->add_option("--config", config_path, "study config JSON")->required();
    convergence->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    convergence->add_option("--out", out_path, "output path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path, times_arg, out_path);
        if (riemann->parsed()) return cmd_riemann(flux_path, ul, ur);
        if (distance->parsed()) return cmd_distance(a_path, b_path, ps);
        if (convergence->parsed()) return cmd_convergence(config_path, format, out_path);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
