#include "shockfront/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <memory>
#include <ostream>
#include <semaphore>
#include <stdexcept>
#include <thread>

#include "shockfront/solver.hpp"

namespace shockfront {

InitialData make_initial(const StudyConfig& cfg) {
    if (cfg.initial_kind == "wedge") return wedge_data();
    if (cfg.initial_kind == "decreasing_step") return decreasing_step_data();
    if (cfg.initial_kind == "staircase") return staircase_data(cfg.staircase_steps);
    if (cfg.initial_kind == "samples") return samples_data(cfg.custom_initial);
    throw std::invalid_argument("config: unknown initial data kind '" + cfg.initial_kind + "'");
}

Flux make_base_flux(const StudyConfig& cfg) {
    if (cfg.flux_type == "burgers") return Flux::burgers();
    if (cfg.flux_type == "power") return Flux::power(cfg.power_exponent);
    if (cfg.flux_type == "pl") return Flux::piecewise_linear(cfg.custom_flux_nodes);
    throw std::invalid_argument("config: unknown flux type '" + cfg.flux_type + "'");
}

bool analytic_reference_available(const StudyConfig& cfg) {
    return cfg.flux_type == "burgers" &&
           (cfg.initial_kind == "wedge" || cfg.initial_kind == "decreasing_step");
}

AnalyticProfile analytic_reference(const StudyConfig& cfg, double t) {
    if (cfg.initial_kind == "wedge") return wedge_profile(t);
    if (cfg.initial_kind == "decreasing_step") return decreasing_step_profile(t);
    throw std::invalid_argument("config: no analytic reference for '" + cfg.initial_kind + "'");
}

int thread_budget() {
    if (const char* env = std::getenv("SHOCKFRONT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

std::vector<double> eoc_sequence(const std::vector<double>& errors) {
    std::vector<double> out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const bool ok = std::isfinite(errors[i]) && std::isfinite(errors[i + 1]) &&
                        errors[i] > 1e-14 && errors[i + 1] > 1e-14;
        out.push_back(ok ? std::log2(errors[i] / errors[i + 1]) : nan);
    }
    return out;
}

double least_squares_slope(const std::vector<double>& dx, const std::vector<double>& errors,
                           std::size_t last_n) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (std::isfinite(errors[i]) && errors[i] > 1e-14) {
            xs.push_back(std::log(dx[i]));
            ys.push_back(std::log(errors[i]));
        }
    }
    if (xs.size() > last_n) {
        xs.erase(xs.begin(), xs.end() - static_cast<std::ptrdiff_t>(last_n));
        ys.erase(ys.begin(), ys.end() - static_cast<std::ptrdiff_t>(last_n));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double w1_rate_constant(double t, double tv0, double lambda, double sup_f2, double c_of_t,
                        double k_of_t, double lip_plus_c) {
    return c_of_t * (tv0 + t * lambda * lambda * k_of_t * sup_f2) + k_of_t * lip_plus_c / 8.0;
}

namespace {

std::vector<std::string> metric_columns(const StudyConfig& cfg) {
    std::vector<std::string> cols{"l1", "w1"};
    for (double p : cfg.p_list) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "wp_%g", p);
        cols.emplace_back(buf);
    }
    cols.emplace_back("winf");
    return cols;
}

void validate(const StudyConfig& cfg) {
    if (!(cfg.k_min < cfg.k_max)) throw std::invalid_argument("config: need k_min < k_max");
    if (cfg.times.empty()) throw std::invalid_argument("config: need at least one time");
    for (double t : cfg.times) {
        if (!(t > 0.0)) throw std::invalid_argument("config: times must be positive");
    }
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("config: lambda must be positive");
    for (double p : cfg.p_list) {
        if (!(p >= 1.0)) throw std::invalid_argument("config: p values must be >= 1");
    }
    if (cfg.reference != "auto" && cfg.reference != "analytic" && cfg.reference != "fine") {
        throw std::invalid_argument("config: reference must be auto, analytic or fine");
    }
    if (cfg.reference == "analytic" && !analytic_reference_available(cfg)) {
        throw std::invalid_argument("config: analytic reference not available for this study");
    }
}

struct LevelOutcome {
    bool failed = false;
    std::string note;
    // err[time index][column index]
    std::vector<std::vector<double>> err;
};

struct LevelSetup {
    PiecewiseConstantFn u_run;
    Flux flux;
};

LevelSetup prepare_level(const StudyConfig& cfg, const InitialData& data, const Flux& base,
                         int k) {
    LevelSetup ls{.u_run = {}, .flux = base};
    const double dx = std::ldexp(1.0, -k);
    const double delta = cfg.lambda * dx;
    PiecewiseConstantFn u0 = project_to_grid(data, dx);
    if (cfg.snap) u0 = snap_to_lattice(u0, delta).fn;
    ls.u_run = std::move(u0);
    if (!base.is_piecewise_linear()) ls.flux = interpolate_flux(base, delta, data.sup_norm);
    return ls;
}

}  // namespace

StudyResult run_study(const StudyConfig& cfg) {
    validate(cfg);
    const InitialData data = make_initial(cfg);
    const Flux base = make_base_flux(cfg);
    const auto cols = metric_columns(cfg);
    const bool use_analytic =
        cfg.reference == "analytic" || (cfg.reference == "auto" && analytic_reference_available(cfg));
    const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());

    // Fine front-tracking reference (three levels below the finest measured).
    std::vector<PiecewiseConstantFn> ref_snapshots;
    if (!use_analytic) {
        const auto setup = prepare_level(cfg, data, base, cfg.k_max + 3);
        const RunOptions opts{.event_cap = cfg.event_cap, .max_seconds = kInf};
        const auto ref_run = run_front_tracking(setup.u_run, setup.flux, t_max, opts);
        for (double t : cfg.times) ref_snapshots.push_back(snapshot(ref_run, t));
    }

    const int n_levels = cfg.k_max - cfg.k_min + 1;
    std::vector<LevelOutcome> outcomes(static_cast<std::size_t>(n_levels));
    std::counting_semaphore<64> slots(std::min(64, thread_budget()));

    auto run_level = [&](int idx) {
        LevelOutcome out;
        const int k = cfg.k_min + idx;
        try {
            const auto setup = prepare_level(cfg, data, base, k);
            const RunOptions opts{.event_cap = cfg.event_cap, .max_seconds = kInf};
            const auto run = run_front_tracking(setup.u_run, setup.flux, t_max, opts);
            for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
                const auto s = snapshot(run, cfg.times[ti]);
                std::vector<double> errs;
                if (use_analytic) {
                    const auto ref = analytic_reference(cfg, cfg.times[ti]);
                    errs.push_back(l1_vs_profile(s, ref));
                    errs.push_back(w1_vs_profile(s, ref));
                    for (double p : cfg.p_list) errs.push_back(wp_vs_profile(s, ref, p));
                    errs.push_back(winf_vs_profile(s, ref));
                } else {
                    const auto& ref = ref_snapshots[ti];
                    errs.push_back(l1_distance(s, ref));
                    errs.push_back(w1(s, ref));
                    for (double p : cfg.p_list) errs.push_back(wp(s, ref, p));
                    errs.push_back(winf(s, ref));
                }
                out.err.push_back(std::move(errs));
            }
        } catch (const std::exception& ex) {
            out.failed = true;
            out.note = ex.what();
            out.err.assign(cfg.times.size(),
                           std::vector<double>(cols.size(), std::numeric_limits<double>::quiet_NaN()));
        }
        outcomes[static_cast<std::size_t>(idx)] = std::move(out);
    };

    {
        std::vector<std::future<void>> futs;
        futs.reserve(static_cast<std::size_t>(n_levels));
        for (int idx = 0; idx < n_levels; ++idx) {
            futs.push_back(std::async(std::launch::async, [&, idx] {
                slots.acquire();
                run_level(idx);
                slots.release();
            }));
        }
        for (auto& f : futs) f.get();
    }

    StudyResult res;
    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        EocTable table;
        table.time = cfg.times[ti];
        table.columns = cols;
        table.initial_kind = cfg.initial_kind;
        table.reference_mode = use_analytic ? "analytic" : "fine";
        table.outside_hypotheses = std::isinf(data.lip_plus);
        for (int idx = 0; idx < n_levels; ++idx) {
            const auto& out = outcomes[static_cast<std::size_t>(idx)];
            EocRow row;
            row.k = cfg.k_min + idx;
            row.dx = std::ldexp(1.0, -row.k);
            row.failed = out.failed;
            row.note = out.note;
            row.err = out.err[ti];
            res.any_failed = res.any_failed || out.failed;
            table.rows.push_back(std::move(row));
        }
        std::vector<double> dxs;
        for (const auto& r : table.rows) dxs.push_back(r.dx);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::vector<double> errs;
            for (const auto& r : table.rows) errs.push_back(r.err[c]);
            const auto eoc = eoc_sequence(errs);
            if (table.eoc.empty()) table.eoc.resize(eoc.size());
            for (std::size_t i = 0; i < eoc.size(); ++i) {
                if (table.eoc[i].size() < cols.size()) table.eoc[i].resize(cols.size());
                table.eoc[i][c] = eoc[i];
            }
            table.ls_slope.push_back(least_squares_slope(dxs, errs, 4));
        }
        res.tables.push_back(std::move(table));
    }
    return res;
}

void emit_csv(const EocTable& table, std::ostream& os) {
    os << "k,dx";
    for (const auto& c : table.columns) os << ',' << c;
    for (const auto& c : table.columns) os << ",eoc_" << c;
    os << '\n';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        os << r.k << ',' << format_float(r.dx);
        for (double e : r.err) os << ',' << (std::isfinite(e) ? format_float(e) : "");
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const bool have = i < table.eoc.size() && std::isfinite(table.eoc[i][c]);
            os << ',' << (have ? format_float(table.eoc[i][c]) : "");
        }
        os << '\n';
    }
    if (!table.rows.empty()) {
        os << "slope,";
        for (double s : table.ls_slope) os << ',' << (std::isfinite(s) ? format_float(s) : "");
        for (std::size_t c = 0; c < table.columns.size(); ++c) os << ',';
        os << '\n';
    }
}

}  // namespace shockfront
