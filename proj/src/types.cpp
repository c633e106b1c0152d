#include "dfgof/types.hpp"

#include <cmath>
#include <cstring>
#include <numeric>

#include "dfgof/errors.hpp"

namespace dfgof {

DiscreteModel::DiscreteModel(Vec probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) throw InvalidModel("a model needs at least two cells");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] > 0.0))
            throw InvalidModel("cell probability " + std::to_string(i + 1) +
                               " is not positive");
        sum += probs_[i];
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw InvalidModel("cell probabilities sum to " + std::to_string(sum) + ", not 1");
    hash_ = hash_doubles(probs_);
}

UnitVector DiscreteModel::sqrt_probs() const {
    Vec q(probs_.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::sqrt(probs_[i]);
    // Renormalize away the 1e-9 slack allowed on the probability sum.
    return UnitVector(normalized(q));
}

SampleCounts::SampleCounts(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) throw DimensionMismatch("a sample needs at least two cells");
    n_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    if (n_ == 0) throw InvalidModel("sample size n must be positive");
}

const char* anchor_preset_name(AnchorPreset preset) {
    switch (preset) {
        case AnchorPreset::none: return "none";
        case AnchorPreset::diagonal: return "diagonal";
        case AnchorPreset::e1: return "e1";
        case AnchorPreset::e1_e2: return "e1_e2";
        case AnchorPreset::plateau: return "plateau";
        case AnchorPreset::custom: return "custom";
    }
    return "unknown";
}

AnchorPreset anchor_preset_from_name(const std::string& name) {
    if (name == "diagonal") return AnchorPreset::diagonal;
    if (name == "e1") return AnchorPreset::e1;
    if (name == "e1_e2") return AnchorPreset::e1_e2;
    if (name == "plateau") return AnchorPreset::plateau;
    if (name == "custom") return AnchorPreset::custom;
    if (name == "none") return AnchorPreset::none;
    throw DomainError("unknown anchor preset: " + name);
}

AnchorPair::AnchorPair(UnitVector r, std::optional<UnitVector> rhat, AnchorPreset preset)
    : r_(std::move(r)), rhat_(std::move(rhat)), preset_(preset) {
    if (rhat_) {
        check_same_dim(r_.coords(), rhat_->coords());
        if (std::fabs(dot(r_.coords(), rhat_->coords())) > 1e-10)
            throw NonOrthogonalInputs("anchor r and rhat are not orthogonal");
    }
    hash_ = hash_doubles(r_.coords(), fnv1a(&preset_, sizeof preset_));
    if (rhat_) hash_ = hash_doubles(rhat_->coords(), hash_);
}

AnchorPair AnchorPair::diagonal(std::size_t m) {
    return AnchorPair(UnitVector(Vec(m, 1.0 / std::sqrt(double(m)))), std::nullopt,
                      AnchorPreset::diagonal);
}

AnchorPair AnchorPair::e1(std::size_t m) {
    Vec r(m, 0.0);
    r[0] = 1.0;
    return AnchorPair(UnitVector(std::move(r)), std::nullopt, AnchorPreset::e1);
}

AnchorPair AnchorPair::e1_e2(std::size_t m) {
    Vec r(m, 0.0), rh(m, 0.0);
    r[0] = 1.0;
    rh[1] = 1.0;
    return AnchorPair(UnitVector(std::move(r)), UnitVector(std::move(rh)),
                      AnchorPreset::e1_e2);
}

AnchorPair AnchorPair::plateau(std::size_t m) {
    // Even m: (1,..,1,-1,..,-1)/sqrt(m) with an m/2-long plateau of -1s.
    // Odd m: last coordinate 0, normalization 1/sqrt(m-1).
    Vec rh(m, 0.0);
    const std::size_t half = m / 2;
    const double scale = 1.0 / std::sqrt(double(m % 2 == 0 ? m : m - 1));
    for (std::size_t i = 0; i < half; ++i) rh[i] = scale;
    for (std::size_t i = half; i < 2 * half; ++i) rh[i] = -scale;
    return AnchorPair(UnitVector(Vec(m, 1.0 / std::sqrt(double(m)))),
                      UnitVector(std::move(rh)), AnchorPreset::plateau);
}

AnchorPair AnchorPair::custom(UnitVector r, std::optional<UnitVector> rhat) {
    return AnchorPair(std::move(r), std::move(rhat), AnchorPreset::custom);
}

AnchorPair AnchorPair::from_preset(AnchorPreset preset, std::size_t m) {
    switch (preset) {
        case AnchorPreset::diagonal: return diagonal(m);
        case AnchorPreset::e1: return e1(m);
        case AnchorPreset::e1_e2: return e1_e2(m);
        case AnchorPreset::plateau: return plateau(m);
        default: throw DomainError("preset has no parameter-free construction");
    }
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_doubles(const Vec& values, std::uint64_t h) {
    return fnv1a(values.data(), values.size() * sizeof(double), h);
}

std::uint64_t provenance_hash(const DiscreteModel& model, const AnchorPair& anchor) {
    const std::uint64_t pair[2] = {model.hash(), anchor.hash()};
    return fnv1a(pair, sizeof pair);
}

}  // namespace dfgof
