#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dfgof/types.hpp"

namespace dfgof {

enum class StatName { ks_z, ks_y, cvm_z, pearson_chi2 };

const char* stat_name(StatName stat);
StatName stat_from_name(const std::string& name);

struct StatisticValue {
    StatName name;
    double value = 0.0;
    std::size_t m = 0;
    std::uint64_t n = 0;
    AnchorPreset anchor = AnchorPreset::none;
    std::uint64_t provenance = 0;
};

// S_k = sum_{j<=k} v_j.
ComponentVector partial_sums(const ComponentVector& v);

// max_k |S_k|, the discrete Kolmogorov-Smirnov statistic.
StatisticValue ks_stat(const ComponentVector& v);

// (1/m) sum_k S_k^2, a Cramer-von Mises analogue with uniform weights.
StatisticValue cvm_stat(const ComponentVector& v);

// sum_i v_i^2.
StatisticValue pearson_chi2(const ComponentVector& v);

// Plain-array statistics over a raw coordinate vector; shared by the Monte
// Carlo layers.
double ks_of(const Vec& v);
double cvm_of(const Vec& v);
double chi2_of(const Vec& v);

// Monte Carlo sample of a statistic under the standard projection law
// Z = X - <X,r> r (minus <X,rhat> rhat when the anchor carries rhat).
struct NullTable {
    StatName stat;
    std::size_t m = 0;
    AnchorPreset anchor = AnchorPreset::none;
    std::size_t B = 0;
    std::uint64_t seed = 0;
    Vec values;  // sorted ascending
};

NullTable null_table(StatName stat, std::size_t m, const AnchorPair& anchor, std::size_t B,
                     std::uint64_t seed);

// Add-one Monte Carlo p-value: (1 + #{table >= observed}) / (B + 1).
double p_value(const StatisticValue& observed, const NullTable& table);

// CSV artifact with a JSON header line; used for the on-disk table cache.
void save_table(const NullTable& table, const std::filesystem::path& path);
NullTable load_table(const std::filesystem::path& path);

std::string table_cache_filename(StatName stat, std::size_t m, AnchorPreset anchor, std::size_t B,
                                 std::uint64_t seed);

// Returns the cached table if present, otherwise builds and caches it.
// An empty cache_dir disables caching.
NullTable cached_null_table(StatName stat, std::size_t m, const AnchorPair& anchor, std::size_t B,
                            std::uint64_t seed, const std::filesystem::path& cache_dir);

}  // namespace dfgof
