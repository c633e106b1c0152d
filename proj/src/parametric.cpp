#include "dfgof/parametric.hpp"

#include <algorithm>
#include <cmath>

#include "dfgof/errors.hpp"

namespace dfgof {

namespace {

void check_theta(const ParametricFamily& family, double theta) {
    if (!family.in_domain(theta))
        throw DomainError("theta = " + std::to_string(theta) + " outside the domain of " +
                          family.name);
}

struct ScoreEval {
    Vec p;
    Vec dp;
    double value;
};

ScoreEval eval_score(const SampleCounts& sample, const ParametricFamily& family, double theta) {
    ScoreEval e{family.probs(theta), family.dprobs(theta), 0.0};
    for (std::size_t i = 0; i < e.p.size(); ++i) {
        if (!(e.p[i] > 0.0)) throw DomainError("p_i(theta) not positive inside mle_fit");
        e.value += double(sample.counts()[i]) * e.dp[i] / e.p[i];
    }
    return e;
}

}  // namespace

ParametricFamily power_law_family(std::size_t m) {
    if (m < 2) throw DomainError("power-law family needs m >= 2");

    Vec log_i(m);
    for (std::size_t i = 0; i < m; ++i) log_i[i] = std::log(double(i + 1));

    auto probs = [m, log_i](double theta) {
        // p_i = exp(-theta log i) normalized; shift exponents for stability.
        Vec p(m);
        double emax = -1e308;
        for (std::size_t i = 0; i < m; ++i) emax = std::max(emax, -theta * log_i[i]);
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] = std::exp(-theta * log_i[i] - emax);
            sum += p[i];
        }
        for (double& v : p) v /= sum;
        return p;
    };

    auto dprobs = [m, log_i, probs](double theta) {
        const Vec p = probs(theta);
        double s1 = 0.0;  // sum_j p_j log j
        for (std::size_t i = 0; i < m; ++i) s1 += p[i] * log_i[i];
        Vec dp(m);
        for (std::size_t i = 0; i < m; ++i) dp[i] = p[i] * (s1 - log_i[i]);
        return dp;
    };

    ParametricFamily family;
    family.name = "power_law";
    family.m = m;
    family.probs = std::move(probs);
    family.dprobs = std::move(dprobs);
    return family;
}

std::function<Vec(double)> finite_difference_dprobs(std::function<Vec(double)> probs) {
    return [probs](double theta) {
        const double h = 1e-6 * std::max(1.0, std::fabs(theta));
        const Vec lo = probs(theta - h);
        const Vec hi = probs(theta + h);
        Vec dp(lo.size());
        for (std::size_t i = 0; i < dp.size(); ++i) dp[i] = (hi[i] - lo[i]) / (2.0 * h);
        return dp;
    };
}

void validate_family(const ParametricFamily& family, const Vec& probe_thetas) {
    const auto fd = finite_difference_dprobs(family.probs);
    for (double theta : probe_thetas) {
        check_theta(family, theta);
        const Vec p = family.probs(theta);
        const Vec dp = family.dprobs(theta);
        if (p.size() != family.m || dp.size() != family.m)
            throw DomainError("family evaluator dimension mismatch");
        double psum = 0.0, dsum = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!(p[i] > 0.0)) throw DomainError("family probability not positive");
            psum += p[i];
            dsum += dp[i];
        }
        if (std::fabs(psum - 1.0) > 1e-10) throw DomainError("family probabilities do not sum to 1");
        if (std::fabs(dsum) > 1e-8) throw DomainError("family derivatives do not sum to 0");
        const Vec dfd = fd(theta);
        for (std::size_t i = 0; i < dp.size(); ++i) {
            // 1e-6 relative with a floor that absorbs finite-difference noise.
            if (std::fabs(dp[i] - dfd[i]) > 1e-6 * std::max(1e-3, std::fabs(dfd[i])))
                throw DomainError("analytic derivative disagrees with finite differences");
        }
    }
}

double score(const SampleCounts& sample, const ParametricFamily& family, double theta) {
    if (sample.dim() != family.m) throw DimensionMismatch("sample/family dimension mismatch");
    check_theta(family, theta);
    return eval_score(sample, family, theta).value;
}

double log_likelihood(const SampleCounts& sample, const ParametricFamily& family, double theta) {
    check_theta(family, theta);
    const Vec p = family.probs(theta);
    double ll = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (sample.counts()[i] > 0) ll += double(sample.counts()[i]) * std::log(p[i]);
    return ll;
}

FitResult mle_fit(const SampleCounts& sample, const ParametricFamily& family,
                  std::optional<double> init, const MleOptions& options) {
    if (sample.dim() != family.m) throw DimensionMismatch("sample/family dimension mismatch");
    if (family.kappa != 1) throw DomainError("mle_fit supports kappa = 1 only");

    const double theta0 = init.value_or(0.0);
    check_theta(family, theta0);

    auto s = [&](double theta) { return score(sample, family, theta); };

    double theta = theta0;
    double best_theta = theta;
    double best_abs = std::fabs(s(theta));
    int iterations = 0;

    // Newton with a finite-difference slope of the score.
    for (; iterations < options.max_newton_steps && best_abs > options.epsilon_score;
         ++iterations) {
        const double value = s(theta);
        if (std::fabs(value) < best_abs) {
            best_abs = std::fabs(value);
            best_theta = theta;
        }
        if (best_abs <= options.epsilon_score) break;
        const double h = 1e-6 * std::max(1.0, std::fabs(theta));
        const double slope = (s(theta + h) - s(theta - h)) / (2.0 * h);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        double next = theta - value / slope;
        if (!std::isfinite(next)) break;
        next = std::clamp(next, options.bracket_lo, options.bracket_hi);
        if (next == theta) break;
        theta = next;
    }

    if (best_abs > options.epsilon_score) {
        // Bisection fallback over the scanned bracket.
        double lo = options.bracket_lo, hi = options.bracket_hi;
        double slo = s(lo), shi = s(hi);
        if (slo == 0.0) {
            best_theta = lo;
            best_abs = 0.0;
        } else if (shi == 0.0) {
            best_theta = hi;
            best_abs = 0.0;
        } else if (slo * shi > 0.0) {
            throw DomainError("score has no sign change in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        } else {
            for (int k = 0; k < 200 && best_abs > options.epsilon_score; ++k) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double smid = s(mid);
                ++iterations;
                if (std::fabs(smid) < best_abs) {
                    best_abs = std::fabs(smid);
                    best_theta = mid;
                }
                if ((smid > 0.0) == (slo > 0.0)) {
                    lo = mid;
                    slo = smid;
                } else {
                    hi = mid;
                    shi = smid;
                }
            }
        }
    }

    FitResult result;
    result.theta_hat = best_theta;
    result.score_residual = s(best_theta);
    result.iterations = iterations;
    result.fisher_at_hat = fisher_information(family, best_theta);
    result.converged = std::fabs(result.score_residual) <= options.epsilon_score;
    if (!result.converged)
        throw NoConvergence("mle_fit stalled at theta = " + std::to_string(best_theta) +
                            " with score residual " + std::to_string(result.score_residual));
    return result;
}

double fisher_information(const ParametricFamily& family, double theta) {
    check_theta(family, theta);
    const Vec p = family.probs(theta);
    const Vec dp = family.dprobs(theta);
    double gamma = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) throw DomainError("p_i(theta) not positive");
        gamma += dp[i] * dp[i] / p[i];
    }
    return gamma;
}

UnitVector normalized_scores(const ParametricFamily& family, double theta) {
    const double gamma = fisher_information(family, theta);
    if (gamma <= 1e-14) throw DegenerateScore("Fisher information vanishes at this theta");
    const Vec p = family.probs(theta);
    const Vec dp = family.dprobs(theta);
    Vec qhat(p.size());
    Vec sqrtp(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        sqrtp[i] = std::sqrt(p[i]);
        qhat[i] = dp[i] / (sqrtp[i] * std::sqrt(gamma));
    }
    // Scrub the rounding-level component along sqrt(p) and renormalize.
    axpy(-dot(qhat, sqrtp), sqrtp, qhat);
    return UnitVector(normalized(qhat));
}

}  // namespace dfgof
