#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dfgof/parametric.hpp"
#include "dfgof/statistics.hpp"
#include "dfgof/types.hpp"

namespace dfgof {

// Multinomial draw by sequential conditional binomials, O(m) per sample.
SampleCounts sample_multinomial(const DiscreteModel& model, std::uint64_t n,
                                std::mt19937_64& rng);

// m spacings of m-1 sorted uniforms, frozen by the seed.
DiscreteModel make_random_spacings_model(std::size_t m, std::uint64_t seed);

// Increments F(i/m) - F((i-1)/m) of the Beta(a, b) CDF.
DiscreteModel make_beta_increments_model(double a, double b, std::size_t m);

class EmpiricalCdf {
public:
    explicit EmpiricalCdf(Vec values);  // sorts

    double operator()(double x) const;  // right-continuous step function
    const Vec& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    Vec sorted_;
};

// sup over the pooled support of |F_a - F_b|.
double cdf_sup_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

struct StudyConfig {
    std::vector<DiscreteModel> models;
    std::uint64_t n = 200;
    std::size_t B = 10000;
    StatName stat = StatName::ks_z;
    AnchorPreset anchor = AnchorPreset::diagonal;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct StudyResult {
    std::vector<Vec> values;  // per model, in replicate order
    std::vector<EmpiricalCdf> cdfs;
};

// sample -> components -> (transform) -> statistic, B replicates per model.
// Replicate streams are derived from (seed, model, replicate), so results are
// bit-identical at any thread count.
StudyResult run_null_study(const StudyConfig& config);

// Max absolute entrywise deviation of the empirical covariance of simulated Z
// vectors from the projection I - r r^T (and - rhat rhat^T when present).
double covariance_check(const DiscreteModel& model, const AnchorPair& anchor, std::uint64_t n,
                        std::size_t B, std::uint64_t seed, unsigned threads = 1);

// Parametric variant: each replicate samples from p(theta0), refits the MLE
// and transforms Yhat; the target projection removes both r and rhat.
double covariance_check_parametric(const ParametricFamily& family, double theta0,
                                   const AnchorPair& anchor, std::uint64_t n, std::size_t B,
                                   std::uint64_t seed, unsigned threads = 1);

// True when min_i n p_i < 10 (the classic chi-square cell-size rule).
bool small_cell_warning(const DiscreteModel& model, std::uint64_t n);

}  // namespace dfgof
