#include "dfgof/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "dfgof/errors.hpp"
#include "dfgof/rng.hpp"

#include "json.hpp"

namespace dfgof {

namespace {

StatName stat_for_kind(const ComponentVector& v, StatName z_stat) {
    switch (v.kind) {
        case ComponentKind::raw_y: return StatName::ks_y;
        default: return z_stat;
    }
}

StatisticValue make_value(const ComponentVector& v, StatName name, double value) {
    return StatisticValue{name, value, v.dim(), v.n, v.anchor, v.provenance};
}

}  // namespace

const char* stat_name(StatName stat) {
    switch (stat) {
        case StatName::ks_z: return "ks_z";
        case StatName::ks_y: return "ks_y";
        case StatName::cvm_z: return "cvm_z";
        case StatName::pearson_chi2: return "chi2";
    }
    return "unknown";
}

StatName stat_from_name(const std::string& name) {
    if (name == "ks_z") return StatName::ks_z;
    if (name == "ks_y") return StatName::ks_y;
    if (name == "cvm_z") return StatName::cvm_z;
    if (name == "chi2" || name == "pearson_chi2") return StatName::pearson_chi2;
    throw DomainError("unknown statistic: " + name);
}

ComponentVector partial_sums(const ComponentVector& v) {
    ComponentVector s(v);
    s.kind = ComponentKind::partial_sums;
    double running = 0.0;
    for (double& x : s.values) {
        running += x;
        x = running;
    }
    return s;
}

double ks_of(const Vec& v) {
    double running = 0.0, best = 0.0;
    for (double x : v) {
        running += x;
        best = std::max(best, std::fabs(running));
    }
    return best;
}

double cvm_of(const Vec& v) {
    double running = 0.0, sum = 0.0;
    for (double x : v) {
        running += x;
        sum += running * running;
    }
    return sum / double(v.size());
}

double chi2_of(const Vec& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return sum;
}

StatisticValue ks_stat(const ComponentVector& v) {
    if (v.kind == ComponentKind::partial_sums) {
        double best = 0.0;
        for (double s : v.values) best = std::max(best, std::fabs(s));
        return make_value(v, StatName::ks_z, best);
    }
    return make_value(v, stat_for_kind(v, StatName::ks_z), ks_of(v.values));
}

StatisticValue cvm_stat(const ComponentVector& v) {
    if (v.kind == ComponentKind::partial_sums)
        return make_value(v, StatName::cvm_z, chi2_of(v.values) / double(v.dim()));
    return make_value(v, StatName::cvm_z, cvm_of(v.values));
}

StatisticValue pearson_chi2(const ComponentVector& v) {
    return make_value(v, StatName::pearson_chi2, chi2_of(v.values));
}

NullTable null_table(StatName stat, std::size_t m, const AnchorPair& anchor, std::size_t B,
                     std::uint64_t seed) {
    if (B < 1000) throw DomainError("null tables need B >= 1000");
    if (anchor.r().dim() != m) throw DimensionMismatch("anchor dimension differs from m");

    const Vec& r = anchor.r().coords();
    const Vec* rhat = anchor.rhat() ? &anchor.rhat()->coords() : nullptr;

    NullTable table{stat, m, anchor.preset(), B, seed, Vec(B)};
    for (std::size_t i = 0; i < B; ++i) {
        auto rng = replicate_rng(seed, i);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vec x(m);
        for (double& v : x) v = gauss(rng);
        axpy(-dot(x, r), r, x);
        if (rhat) axpy(-dot(x, *rhat), *rhat, x);
        switch (stat) {
            case StatName::ks_z:
            case StatName::ks_y: table.values[i] = ks_of(x); break;
            case StatName::cvm_z: table.values[i] = cvm_of(x); break;
            case StatName::pearson_chi2: table.values[i] = chi2_of(x); break;
        }
    }
    std::sort(table.values.begin(), table.values.end());
    return table;
}

double p_value(const StatisticValue& observed, const NullTable& table) {
    if (observed.name != table.stat)
        throw ProvenanceMismatch("statistic name differs from the table's");
    if (observed.m != table.m) throw ProvenanceMismatch("dimension differs from the table's");
    if (observed.anchor != AnchorPreset::none && table.anchor != observed.anchor)
        throw ProvenanceMismatch("anchor preset differs from the table's");
    const auto it =
        std::lower_bound(table.values.begin(), table.values.end(), observed.value);
    const std::size_t ge = std::size_t(table.values.end() - it);
    return double(1 + ge) / double(table.B + 1);
}

void save_table(const NullTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    nlohmann::json header = {{"format_version", 1},
                             {"statistic", stat_name(table.stat)},
                             {"m", table.m},
                             {"anchor", anchor_preset_name(table.anchor)},
                             {"B", table.B},
                             {"seed", table.seed}};
    out << "# " << header.dump() << "\n";
    char buf[64];
    for (double v : table.values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
    if (!out) throw IoError("write failure on " + path.string());
}

NullTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
        throw IoError("missing table header in " + path.string());
    const auto header = nlohmann::json::parse(line.substr(1));
    NullTable table;
    table.stat = stat_from_name(header.at("statistic").get<std::string>());
    table.m = header.at("m").get<std::size_t>();
    table.anchor = anchor_preset_from_name(header.at("anchor").get<std::string>());
    table.B = header.at("B").get<std::size_t>();
    table.seed = header.at("seed").get<std::uint64_t>();
    table.values.reserve(table.B);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.values.push_back(std::stod(line));
    }
    if (table.values.size() != table.B)
        throw IoError("table " + path.string() + " holds " +
                      std::to_string(table.values.size()) + " values, expected " +
                      std::to_string(table.B));
    return table;
}

std::string table_cache_filename(StatName stat, std::size_t m, AnchorPreset anchor, std::size_t B,
                                 std::uint64_t seed) {
    return std::string(stat_name(stat)) + "_m" + std::to_string(m) + "_" +
           anchor_preset_name(anchor) + "_B" + std::to_string(B) + "_seed" +
           std::to_string(seed) + ".csv";
}

NullTable cached_null_table(StatName stat, std::size_t m, const AnchorPair& anchor, std::size_t B,
                            std::uint64_t seed, const std::filesystem::path& cache_dir) {
    // Custom anchors are not keyed by preset name alone; never cache them.
    if (cache_dir.empty() || anchor.preset() == AnchorPreset::custom)
        return null_table(stat, m, anchor, B, seed);
    const auto path = cache_dir / table_cache_filename(stat, m, anchor.preset(), B, seed);
    if (std::filesystem::exists(path)) return load_table(path);
    NullTable table = null_table(stat, m, anchor, B, seed);
    std::filesystem::create_directories(cache_dir);
    save_table(table, path);
    return table;
}

}  // namespace dfgof
