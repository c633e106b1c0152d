#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dfgof/types.hpp"

namespace dfgof {

// A one-parameter family of discrete distributions on m cells: an evaluator
// for the cell probabilities p(theta) and one for their theta-derivatives.
struct ParametricFamily {
    std::string name;
    std::size_t m = 0;
    std::size_t kappa = 1;
    double theta_min = -1e308;
    double theta_max = 1e308;
    std::function<Vec(double)> probs;
    std::function<Vec(double)> dprobs;

    bool in_domain(double theta) const { return theta > theta_min && theta < theta_max; }
};

// p_i(theta) = i^{-theta} / sum_j j^{-theta}; theta = 0 is uniform, theta = 1
// the truncated Zipf law. Derivatives are analytic.
ParametricFamily power_law_family(std::size_t m);

// Wraps a probability evaluator with central-difference derivatives,
// step h = 1e-6 * max(1, |theta|).
std::function<Vec(double)> finite_difference_dprobs(std::function<Vec(double)> probs);

// Checks the family contracts at the probe points: probabilities positive and
// summing to 1, derivative columns summing to 0 and matching finite
// differences to 1e-6 relative.
void validate_family(const ParametricFamily& family, const Vec& probe_thetas);

struct FitResult {
    double theta_hat = 0.0;
    double score_residual = 0.0;
    int iterations = 0;
    double fisher_at_hat = 0.0;
    bool converged = false;
};

struct MleOptions {
    double epsilon_score = 1e-10;
    int max_newton_steps = 100;
    double bracket_lo = -20.0;
    double bracket_hi = 20.0;
};

// Log-likelihood score sum_i nu_i dp_i(theta) / p_i(theta).
double score(const SampleCounts& sample, const ParametricFamily& family, double theta);

double log_likelihood(const SampleCounts& sample, const ParametricFamily& family, double theta);

// Exact multinomial MLE: Newton iteration on the score equation with a
// bisection fallback over [bracket_lo, bracket_hi].
FitResult mle_fit(const SampleCounts& sample, const ParametricFamily& family,
                  std::optional<double> init = std::nullopt, const MleOptions& options = {});

// Gamma = sum_i dp_i^2 / p_i (kappa = 1).
double fisher_information(const ParametricFamily& family, double theta);

// qhat_i = Gamma^{-1/2} dp_i / sqrt(p_i); unit length and orthogonal to sqrt(p).
UnitVector normalized_scores(const ParametricFamily& family, double theta);

}  // namespace dfgof
