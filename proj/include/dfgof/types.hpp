#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfgof/rotations.hpp"
#include "dfgof/vecmath.hpp"

namespace dfgof {

// Hypothetical cell probabilities p_1..p_m, all positive, summing to 1.
class DiscreteModel {
public:
    explicit DiscreteModel(Vec probs);

    const Vec& probs() const { return probs_; }
    std::size_t dim() const { return probs_.size(); }
    UnitVector sqrt_probs() const;
    std::uint64_t hash() const { return hash_; }

private:
    Vec probs_;
    std::uint64_t hash_;
};

// Observed frequencies nu_1..nu_m with n = sum nu_i.
class SampleCounts {
public:
    explicit SampleCounts(std::vector<std::uint64_t> counts);

    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::size_t dim() const { return counts_.size(); }
    std::uint64_t n() const { return n_; }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t n_;
};

enum class AnchorPreset { none, diagonal, e1, e1_e2, plateau, custom };

const char* anchor_preset_name(AnchorPreset preset);
AnchorPreset anchor_preset_from_name(const std::string& name);

// The fixed target direction r (and rhat in the parametric case).
class AnchorPair {
public:
    static AnchorPair diagonal(std::size_t m);
    static AnchorPair e1(std::size_t m);
    static AnchorPair e1_e2(std::size_t m);
    static AnchorPair plateau(std::size_t m);
    static AnchorPair custom(UnitVector r, std::optional<UnitVector> rhat = std::nullopt);
    static AnchorPair from_preset(AnchorPreset preset, std::size_t m);

    const UnitVector& r() const { return r_; }
    const std::optional<UnitVector>& rhat() const { return rhat_; }
    AnchorPreset preset() const { return preset_; }
    std::uint64_t hash() const { return hash_; }

private:
    AnchorPair(UnitVector r, std::optional<UnitVector> rhat, AnchorPreset preset);

    UnitVector r_;
    std::optional<UnitVector> rhat_;
    AnchorPreset preset_;
    std::uint64_t hash_;
};

enum class ComponentKind { raw_y, transformed_z, parametric_yhat, parametric_zhat, partial_sums };

// An m-vector in component space together with the provenance that produced
// it, so downstream consumers cannot silently mix configurations.
struct ComponentVector {
    Vec values;
    ComponentKind kind = ComponentKind::raw_y;
    std::uint64_t provenance = 0;  // model hash mixed with anchor hash
    AnchorPreset anchor = AnchorPreset::none;
    std::uint64_t n = 0;
    bool conditioning_warning = false;

    std::size_t dim() const { return values.size(); }
};

// FNV-1a over raw bytes; used for provenance binding, not cryptography.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t hash_doubles(const Vec& values, std::uint64_t h = 0xcbf29ce484222325ULL);

std::uint64_t provenance_hash(const DiscreteModel& model, const AnchorPair& anchor);

}  // namespace dfgof
