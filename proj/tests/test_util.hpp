#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dfgof/rotations.hpp"
#include "dfgof/types.hpp"

namespace testutil {

using dfgof::Vec;

inline Vec random_vector(std::mt19937_64& rng, std::size_t m) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec x(m);
    for (double& v : x) v = gauss(rng);
    return x;
}

inline dfgof::UnitVector random_unit(std::mt19937_64& rng, std::size_t m) {
    return dfgof::UnitVector(dfgof::normalized(random_vector(rng, m)));
}

// Random positive probabilities bounded away from zero.
inline dfgof::DiscreteModel random_model(std::mt19937_64& rng, std::size_t m) {
    std::exponential_distribution<double> expo(1.0);
    Vec p(m);
    double sum = 0.0;
    for (double& v : p) {
        v = expo(rng) + 0.05;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return dfgof::DiscreteModel(std::move(p));
}

// Orthonormalizes k random vectors (Gram-Schmidt with re-draw on collapse).
inline std::vector<dfgof::UnitVector> random_orthonormal(std::mt19937_64& rng, std::size_t m,
                                                         std::size_t k) {
    std::vector<Vec> basis;
    while (basis.size() < k) {
        Vec x = random_vector(rng, m);
        for (const Vec& b : basis) dfgof::axpy(-dfgof::dot(b, x), b, x);
        if (dfgof::norm(x) < 1e-6) continue;
        basis.push_back(dfgof::normalized(x));
    }
    std::vector<dfgof::UnitVector> out;
    for (Vec& b : basis) out.emplace_back(std::move(b));
    return out;
}

// Component of x orthogonal to the span of the given vectors. The inputs need
// not be mutually orthogonal; they are orthonormalized first.
inline Vec project_out(Vec x, const std::vector<const dfgof::UnitVector*>& dirs) {
    std::vector<Vec> basis;
    for (const auto* d : dirs) {
        Vec b = d->coords();
        for (const Vec& prev : basis) dfgof::axpy(-dfgof::dot(prev, b), prev, b);
        if (dfgof::norm(b) < 1e-10) continue;
        basis.push_back(dfgof::normalized(b));
    }
    for (const Vec& b : basis) dfgof::axpy(-dfgof::dot(b, x), b, x);
    return x;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    return worst;
}

}  // namespace testutil
