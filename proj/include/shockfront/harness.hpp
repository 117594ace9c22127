#pragma once

// Convergence studies: grid refinement, reference solutions, EOC tables and
// file emission.

#include <iosfwd>
#include <string>
#include <vector>

#include "shockfront/analytic.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/initial_data.hpp"
#include "shockfront/metrics.hpp"

namespace shockfront {

struct StudyConfig {
    std::string flux_type = "burgers";  // burgers | power | pl
    int power_exponent = 4;
    PiecewiseLinearFn custom_flux_nodes;  // flux_type == "pl"
    std::string initial_kind = "wedge";   // wedge | decreasing_step | staircase | samples
    int staircase_steps = 4;
    PiecewiseConstantFn custom_initial;  // initial_kind == "samples"
    double lambda = 1.0;                 // delta / dx
    int k_min = 4;
    int k_max = 9;  // dx = 2^-k
    std::vector<double> times = {0.5, 2.0};
    std::vector<double> p_list = {2.0, 4.0};
    std::string reference = "auto";  // auto | analytic | fine
    bool snap = true;
    long long event_cap = 10'000'000;
};

struct EocRow {
    int k = 0;
    double dx = 0.0;
    bool failed = false;
    std::string note;
    std::vector<double> err;  // aligned with EocTable::columns
};

struct EocTable {
    double time = 0.0;
    std::vector<std::string> columns;      // l1, w1, wp_<p>..., winf
    std::vector<EocRow> rows;              // sorted by k
    std::vector<std::vector<double>> eoc;  // eoc[i][c] = log2(e_i / e_{i+1}); NaN markers
    std::vector<double> ls_slope;          // per column, over the last <= 4 valid levels
    bool outside_hypotheses = false;       // Lip+ unbounded data: W1 theorem not applicable
    std::string initial_kind;
    std::string reference_mode;
};

struct StudyResult {
    std::vector<EocTable> tables;  // one per evaluation time
    bool any_failed = false;
};

InitialData make_initial(const StudyConfig& cfg);
Flux make_base_flux(const StudyConfig& cfg);
bool analytic_reference_available(const StudyConfig& cfg);
AnalyticProfile analytic_reference(const StudyConfig& cfg, double t);

// Runs every refinement level (in parallel, capped by SHOCKFRONT_THREADS),
// measures errors against the reference, and fills the EOC columns. A level
// whose solver run fails is marked failed without aborting the study.
StudyResult run_study(const StudyConfig& cfg);

// EOC_k = log2(e_k / e_{k+1}); non-positive or tiny entries yield NaN.
std::vector<double> eoc_sequence(const std::vector<double>& errors);

// Least-squares slope of log(err) against log(dx) over the last n valid rows.
double least_squares_slope(const std::vector<double>& dx, const std::vector<double>& errors,
                           std::size_t last_n);

void emit_csv(const EocTable& table, std::ostream& os);
std::string format_float(double v);  // 17 significant digits, round-trip exact

// Explicit constant of the second-order W1 bound:
// tilde_C(t) = C(t) (TV(u0) + t lambda^2 K(t) sup f'') + K(t) C / 8.
double w1_rate_constant(double t, double tv0, double lambda, double sup_f2, double c_of_t,
                        double k_of_t, double lip_plus_c);

int thread_budget();

}  // namespace shockfront
