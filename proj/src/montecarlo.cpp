#include "dfgof/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dfgof/errors.hpp"
#include "dfgof/rng.hpp"
#include "dfgof/special.hpp"
#include "dfgof/transforms.hpp"

namespace dfgof {

namespace {

// Runs body(i) for i in [0, count) across `threads` workers, statically
// chunked; each index owns its output slot, so the schedule cannot matter.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, const Body& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::size_t(t) * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (std::thread& w : workers) w.join();
}

double statistic_of(StatName stat, const Vec& v) {
    switch (stat) {
        case StatName::ks_z:
        case StatName::ks_y: return ks_of(v);
        case StatName::cvm_z: return cvm_of(v);
        case StatName::pearson_chi2: return chi2_of(v);
    }
    throw DomainError("unknown statistic");
}

}  // namespace

SampleCounts sample_multinomial(const DiscreteModel& model, std::uint64_t n,
                                std::mt19937_64& rng) {
    if (n < 1) throw DomainError("sample size must be >= 1");
    const std::size_t m = model.dim();
    std::vector<std::uint64_t> counts(m, 0);
    std::uint64_t remaining = n;
    double mass_left = 1.0;
    for (std::size_t i = 0; i + 1 < m && remaining > 0; ++i) {
        const double p = std::clamp(model.probs()[i] / mass_left, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> binom(remaining, p);
        counts[i] = binom(rng);
        remaining -= counts[i];
        mass_left -= model.probs()[i];
    }
    counts[m - 1] = remaining;
    return SampleCounts(std::move(counts));
}

DiscreteModel make_random_spacings_model(std::size_t m, std::uint64_t seed) {
    if (m < 2) throw DomainError("need m >= 2");
    std::mt19937_64 rng(mix64(seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec points(m - 1);
    for (double& x : points) x = unif(rng);
    std::sort(points.begin(), points.end());
    Vec probs(m);
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        probs[i] = points[i] - prev;
        prev = points[i];
    }
    probs[m - 1] = 1.0 - prev;
    for (double p : probs)
        if (p < 1e-12) throw DegenerateModel("spacing collapsed below 1e-12; pick another seed");
    return DiscreteModel(std::move(probs));
}

DiscreteModel make_beta_increments_model(double a, double b, std::size_t m) {
    if (m < 2) throw DomainError("need m >= 2");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta parameters must be positive");
    Vec probs(m);
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double f = beta_cdf(a, b, double(i + 1) / double(m));
        probs[i] = f - prev;
        prev = f;
    }
    probs[m - 1] = 1.0 - prev;
    for (double p : probs)
        if (p < 1e-12) throw DegenerateModel("beta increment below 1e-12");
    return DiscreteModel(std::move(probs));
}

EmpiricalCdf::EmpiricalCdf(Vec values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw DomainError("empty sample for an empirical CDF");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return double(it - sorted_.begin()) / double(sorted_.size());
}

double cdf_sup_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    double sup = 0.0;
    for (const EmpiricalCdf* side : {&a, &b})
        for (double x : side->sorted()) sup = std::max(sup, std::fabs(a(x) - b(x)));
    return sup;
}

StudyResult run_null_study(const StudyConfig& config) {
    if (config.B < 100) throw DomainError("studies need B >= 100");
    if (config.models.empty()) throw DomainError("no models configured");
    const std::size_t m = config.models.front().dim();
    for (const DiscreteModel& model : config.models)
        if (model.dim() != m) throw DimensionMismatch("study models must share one m");

    const AnchorPair anchor = AnchorPair::from_preset(config.anchor, m);

    StudyResult result;
    result.values.assign(config.models.size(), Vec(config.B, 0.0));
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const DiscreteModel& model = config.models[mi];
        Vec& out = result.values[mi];
        parallel_for(config.B, config.threads, [&](std::size_t i) {
            auto rng = replicate_rng(config.seed, std::uint64_t(mi) * config.B + i);
            const SampleCounts sample = sample_multinomial(model, config.n, rng);
            ComponentVector v = components_y(sample, model);
            if (config.stat != StatName::ks_y) v = transform_simple(v, model, anchor);
            out[i] = statistic_of(config.stat, v.values);
        });
    }
    for (const Vec& v : result.values) result.cdfs.emplace_back(v);
    return result;
}

namespace {

double covariance_deviation(std::size_t m, std::size_t B, const std::vector<Vec>& zs,
                            const Vec& r, const Vec* rhat) {
    std::vector<Vec> cov(m, Vec(m, 0.0));
    for (const Vec& z : zs)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) cov[i][j] += z[i] * z[j];
    double dev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double target = (i == j ? 1.0 : 0.0) - r[i] * r[j];
            if (rhat) target -= (*rhat)[i] * (*rhat)[j];
            dev = std::max(dev, std::fabs(cov[i][j] / double(B) - target));
        }
    }
    return dev;
}

}  // namespace

double covariance_check(const DiscreteModel& model, const AnchorPair& anchor, std::uint64_t n,
                        std::size_t B, std::uint64_t seed, unsigned threads) {
    std::vector<Vec> zs(B);
    parallel_for(B, threads, [&](std::size_t i) {
        auto rng = replicate_rng(seed, i);
        const SampleCounts sample = sample_multinomial(model, n, rng);
        zs[i] = transform_simple(components_y(sample, model), model, anchor).values;
    });
    return covariance_deviation(model.dim(), B, zs, anchor.r().coords(), nullptr);
}

double covariance_check_parametric(const ParametricFamily& family, double theta0,
                                   const AnchorPair& anchor, std::uint64_t n, std::size_t B,
                                   std::uint64_t seed, unsigned threads) {
    if (!anchor.rhat()) throw DomainError("parametric covariance check needs rhat");
    const DiscreteModel truth(family.probs(theta0));
    std::vector<Vec> zs(B);
    parallel_for(B, threads, [&](std::size_t i) {
        auto rng = replicate_rng(seed, i);
        const SampleCounts sample = sample_multinomial(truth, n, rng);
        const FitResult fit = mle_fit(sample, family, theta0);
        const GeometryBundle bundle = parametric_bundle(family, fit.theta_hat, anchor);
        const ComponentVector yhat = components_y_hat(sample, family, fit.theta_hat);
        zs[i] = transform_parametric(yhat, bundle).values;
    });
    return covariance_deviation(family.m, B, zs, anchor.r().coords(),
                                &anchor.rhat()->coords());
}

bool small_cell_warning(const DiscreteModel& model, std::uint64_t n) {
    for (double p : model.probs())
        if (double(n) * p < 10.0) return true;
    return false;
}

}  // namespace dfgof
