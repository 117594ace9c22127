#include "shockfront/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace shockfront {

namespace {

json num_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double num_from(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

}  // namespace

json to_json(const PiecewiseConstantFn& fn) {
    return json{{"kind", "pc"}, {"breakpoints", fn.breakpoints()}, {"values", fn.values()}};
}

json to_json(const PiecewiseLinearFn& fn) {
    return json{{"kind", "pl"},
                {"breakpoints", fn.x},
                {"values", fn.y},
                {"ext_slopes", json::array({fn.slope_left, fn.slope_right})}};
}

PiecewiseConstantFn pc_from_json(const json& j) {
    if (j.value("kind", "pc") != "pc") throw std::invalid_argument("expected kind 'pc'");
    return PiecewiseConstantFn(j.at("breakpoints").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
}

PiecewiseLinearFn pl_from_json(const json& j) {
    if (j.value("kind", "pl") != "pl") throw std::invalid_argument("expected kind 'pl'");
    PiecewiseLinearFn fn;
    fn.x = j.at("breakpoints").get<std::vector<double>>();
    fn.y = j.at("values").get<std::vector<double>>();
    if (fn.x.size() != fn.y.size() || fn.x.empty()) {
        throw std::invalid_argument("pl function: breakpoints/values size mismatch");
    }
    if (j.contains("ext_slopes")) {
        fn.slope_left = j["ext_slopes"].at(0).get<double>();
        fn.slope_right = j["ext_slopes"].at(1).get<double>();
    }
    return fn;
}

Flux flux_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "burgers") return Flux::burgers();
    if (type == "power") return Flux::power(j.at("exponent").get<int>());
    if (type == "pl") {
        PiecewiseLinearFn nodes;
        for (const auto& pair : j.at("nodes")) {
            nodes.x.push_back(pair.at(0).get<double>());
            nodes.y.push_back(pair.at(1).get<double>());
        }
        return Flux::piecewise_linear(std::move(nodes));
    }
    throw std::invalid_argument("flux: unknown type '" + type + "'");
}

json to_json(const RiemannFan& fan) {
    return json{{"states", fan.states}, {"speeds", fan.speeds}};
}

json to_json(const DistanceReport& report) {
    json j{{"l1", report.l1},
           {"masses_equal", report.masses_equal},
           {"nonnegative", report.nonnegative}};
    if (report.masses_equal) {
        j["w1"] = report.w1;
        j["primitive_sup"] = report.primitive_sup;
    }
    if (report.masses_equal && report.nonnegative) {
        j["winf"] = report.winf;
        json wj = json::object();
        for (const auto& [p, v] : report.wp) wj[format_float(p)] = v;
        j["wp"] = wj;
    }
    return j;
}

StudyConfig study_config_from_json(const json& j) {
    StudyConfig cfg;
    if (j.contains("flux")) {
        const auto& f = j["flux"];
        cfg.flux_type = f.at("type").get<std::string>();
        if (cfg.flux_type == "power") cfg.power_exponent = f.at("exponent").get<int>();
        if (cfg.flux_type == "pl") {
            for (const auto& pair : f.at("nodes")) {
                cfg.custom_flux_nodes.x.push_back(pair.at(0).get<double>());
                cfg.custom_flux_nodes.y.push_back(pair.at(1).get<double>());
            }
        }
    }
    if (j.contains("initial")) {
        const auto& d = j["initial"];
        cfg.initial_kind = d.at("type").get<std::string>();
        if (cfg.initial_kind == "staircase") cfg.staircase_steps = d.value("steps", 4);
        if (cfg.initial_kind == "samples") {
            cfg.custom_initial = PiecewiseConstantFn(d.at("breakpoints").get<std::vector<double>>(),
                                                     d.at("values").get<std::vector<double>>());
        }
    }
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.k_min = j.value("k_min", cfg.k_min);
    cfg.k_max = j.value("k_max", cfg.k_max);
    if (j.contains("times")) cfg.times = j["times"].get<std::vector<double>>();
    if (j.contains("p_list")) cfg.p_list = j["p_list"].get<std::vector<double>>();
    cfg.reference = j.value("reference", cfg.reference);
    cfg.snap = j.value("snap", cfg.snap);
    cfg.event_cap = j.value("event_cap", cfg.event_cap);
    return cfg;
}

json to_json(const EocTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        json err = json::array();
        for (double e : r.err) err.push_back(num_or_null(e));
        rows.push_back(json{
            {"k", r.k}, {"dx", r.dx}, {"failed", r.failed}, {"note", r.note}, {"err", err}});
    }
    json eoc = json::array();
    for (const auto& row : table.eoc) {
        json er = json::array();
        for (double e : row) er.push_back(num_or_null(e));
        eoc.push_back(er);
    }
    json slopes = json::array();
    for (double s : table.ls_slope) slopes.push_back(num_or_null(s));
    return json{{"time", table.time},
                {"columns", table.columns},
                {"rows", rows},
                {"eoc", eoc},
                {"ls_slope", slopes},
                {"outside_hypotheses", table.outside_hypotheses},
                {"initial", table.initial_kind},
                {"reference", table.reference_mode}};
}

EocTable eoc_table_from_json(const json& j) {
    EocTable t;
    t.time = j.at("time").get<double>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& rj : j.at("rows")) {
        EocRow r;
        r.k = rj.at("k").get<int>();
        r.dx = rj.at("dx").get<double>();
        r.failed = rj.at("failed").get<bool>();
        r.note = rj.at("note").get<std::string>();
        for (const auto& e : rj.at("err")) r.err.push_back(num_from(e));
        t.rows.push_back(std::move(r));
    }
    for (const auto& row : j.at("eoc")) {
        std::vector<double> er;
        for (const auto& e : row) er.push_back(num_from(e));
        t.eoc.push_back(std::move(er));
    }
    for (const auto& s : j.at("ls_slope")) t.ls_slope.push_back(num_from(s));
    t.outside_hypotheses = j.at("outside_hypotheses").get<bool>();
    t.initial_kind = j.at("initial").get<std::string>();
    t.reference_mode = j.at("reference").get<std::string>();
    return t;
}

json to_json(const StudyResult& result) {
    json tables = json::array();
    for (const auto& t : result.tables) tables.push_back(to_json(t));
    return json{{"tables", tables}, {"any_failed", result.any_failed}};
}

namespace {

bool close_or_both_nan(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

}  // namespace

bool eoc_table_equal(const EocTable& a, const EocTable& b) {
    if (a.time != b.time || a.columns != b.columns || a.rows.size() != b.rows.size() ||
        a.eoc.size() != b.eoc.size() || a.ls_slope.size() != b.ls_slope.size() ||
        a.outside_hypotheses != b.outside_hypotheses || a.initial_kind != b.initial_kind ||
        a.reference_mode != b.reference_mode) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& ra = a.rows[i];
        const auto& rb = b.rows[i];
        if (ra.k != rb.k || ra.dx != rb.dx || ra.failed != rb.failed || ra.note != rb.note ||
            ra.err.size() != rb.err.size()) {
            return false;
        }
        for (std::size_t c = 0; c < ra.err.size(); ++c) {
            if (!close_or_both_nan(ra.err[c], rb.err[c])) return false;
        }
    }
    for (std::size_t i = 0; i < a.eoc.size(); ++i) {
        if (a.eoc[i].size() != b.eoc[i].size()) return false;
        for (std::size_t c = 0; c < a.eoc[i].size(); ++c) {
            if (!close_or_both_nan(a.eoc[i][c], b.eoc[i][c])) return false;
        }
    }
    for (std::size_t i = 0; i < a.ls_slope.size(); ++i) {
        if (!close_or_both_nan(a.ls_slope[i], b.ls_slope[i])) return false;
    }
    return true;
}

}  // namespace shockfront
