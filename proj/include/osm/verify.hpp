#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osm/morrey.hpp"
#include "osm/operators.hpp"

namespace osm {

/// Which boundedness statement a source/target pair instantiates; selects the
/// hypothesis set validated on construction.
enum class TheoremTag { weak11, strong_frac, rl_bound };

/// Source and target space parameters with the theorem-specific constraints
/// checked up front. Violations raise a parameter_error naming the hypothesis.
struct SpacePair {
    TheoremTag tag;
    double alpha = 0.0;
    double p = 1.0, q = 1.0;
    double beta = 0.0;   // source lambda
    double lambda = 0.0; // target lambda (strong_frac / weak11)
    double mu = 0.0;     // target lambda (rl_bound)
    double sigma = 0.0;  // 1/p - 1/q

    SpacePair(TheoremTag tag_, double alpha_, double p_, double q_, double beta_,
              double target_exponent);

    MorreyParams source_params(std::optional<double> T) const;
    MorreyParams target_params(std::optional<double> T) const;
    bool weak_target() const;
};

enum class OperatorId { maximal_plus, weyl_plus, rl_int, singular_paper };

OperatorId parse_operator(const std::string& name);
std::string operator_name(OperatorId id);

struct RatioRow {
    std::string fn_id;
    double scale = 0.0; // T or horizon of the row
    double source_norm = 0.0;
    double target_norm = 0.0;
    double ratio = 0.0;
    bool skipped = false; // degenerate 0/0 rows
};

struct RatioReport {
    std::vector<RatioRow> rows;
    double max_ratio = 0.0;
    std::optional<double> fitted_slope;
};

struct ExperimentOptions {
    int n = 2048;
    double T = 1.0;
    int sweep_levels = 10;
    Exec exec = Exec::par;
};

/// Per test function: source norm of f, target norm (strong or weak per the
/// theorem) of the operator image, and their ratio.
RatioReport boundedness_experiment(OperatorId op, const SpacePair& pair,
                                   const std::vector<std::string>& family, const WeightSpec& w,
                                   const ExperimentOptions& opts = {});

/// Least-squares slope of log(ratio) against log(T) with the template rescaled
/// to (0,T) per row; needs >= 4 distinct T values.
RatioReport scaling_experiment(OperatorId op, const SpacePair& pair,
                               const std::string& f_template, const std::vector<double>& T_values,
                               const WeightSpec& w, const ExperimentOptions& opts = {});

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CompactnessReport {
    double uniform_bound = 0.0;
    std::vector<std::pair<double, double>> equicontinuity_curve; // (shift, sup modulus)
    std::vector<std::pair<double, double>> tail_curve;           // (R, sup tail norm)
};

/// Frechet-Kolmogorov diagnostics for a family on a common grid: uniform
/// bound, shift modulus curve and tail curve, each max-reduced over members.
CompactnessReport compactness_diagnostics(const std::vector<SampledFunction>& G,
                                          const MorreyParams& params, const WeightSpec& w,
                                          const std::vector<double>& shift_set,
                                          const std::vector<double>& R_set,
                                          const ExperimentOptions& opts = {});

/// Applies the Riemann-Liouville operator to a ball of registry functions with
/// source norm M and fits the log-log slope of the target-norm shift modulus.
/// Requires the window (1+1/p)/2 < alpha < 1 and at least two shifts.
double equicontinuity_exponent(double alpha, double p, double q, double mu, const WeightSpec& w,
                               double ball_radius, const std::vector<double>& shift_set,
                               const ExperimentOptions& opts = {});

enum class ProbeVerdict { converging, diverging, inconclusive };

const char* verdict_name(ProbeVerdict v);

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    std::vector<double> norm_sequence;
};

/// Local Morrey norm of coef * t^e across refinement_levels grid doublings
/// (node 0 sampled at half-step from the singularity). Cauchy within 10% =>
/// converging; growth >= 20% each refinement => diverging.
ProbeReport morrey_membership_probe(double coef, double exponent, const MorreyParams& params,
                                    const WeightSpec& w, int refinement_levels,
                                    const ExperimentOptions& opts = {});

/// Test-function registry (smooth, rough and singular shapes from the proofs).
std::vector<std::string> registry_ids();
SampledFunction make_registry_function(const std::string& id, const Grid1D& grid);

} // namespace osm
