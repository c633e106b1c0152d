// Acceptance harness: one pass/fail line per shipped guarantee, nonzero exit
// if anything fails. Heavier than the unit suite; expected to run in well
// under its CTest timeout on a laptop core.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dfgof/errors.hpp"
#include "dfgof/montecarlo.hpp"
#include "dfgof/rng.hpp"
#include "dfgof/statistics.hpp"
#include "dfgof/transforms.hpp"

using namespace dfgof;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what,
                detail.c_str());
    if (!ok) ++g_failures;
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

StudyConfig fig1_config(StatName stat) {
    StudyConfig config;
    config.models = {make_random_spacings_model(10, 101),
                     make_beta_increments_model(3.0, 3.0, 10),
                     make_beta_increments_model(0.8, 1.5, 10)};
    config.n = 200;
    config.B = 10000;
    config.stat = stat;
    config.anchor = AnchorPreset::diagonal;
    config.seed = 2024;
    config.threads = worker_threads();
    return config;
}

double max_pairwise_distance(const StudyResult& result) {
    double worst = 0.0;
    for (std::size_t i = 0; i < result.cdfs.size(); ++i)
        for (std::size_t j = i + 1; j < result.cdfs.size(); ++j)
            worst = std::max(worst, cdf_sup_distance(result.cdfs[i], result.cdfs[j]));
    return worst;
}

// 1. Transformed KS statistics look the same across very different models.
void criterion_1() {
    const double worst = max_pairwise_distance(run_null_study(fig1_config(StatName::ks_z)));
    report(1, "transformed statistic is distribution-free across models", worst <= 0.05,
           "max sup-distance " + fmt(worst) + " <= 0.05");
}

// 2. The untransformed statistic visibly is not.
void criterion_2() {
    const double worst = max_pairwise_distance(run_null_study(fig1_config(StatName::ks_y)));
    report(2, "untransformed statistic depends on the model", worst >= 0.1,
           "max sup-distance " + fmt(worst) + " >= 0.1");
}

DiscreteModel random_model(std::mt19937_64& rng, std::size_t m) {
    std::exponential_distribution<double> expo(1.0);
    Vec p(m);
    double sum = 0.0;
    for (double& v : p) {
        v = expo(rng) + 0.05;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return DiscreteModel(std::move(p));
}

// 3. Exact algebra of the one-sample transform over randomized instances.
void criterion_3() {
    std::mt19937_64 rng(301);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    bool e1_exact = true;
    for (int trial = 0; trial < 1200; ++trial) {
        const std::size_t m = 2 + std::size_t(rng() % 49);
        const std::uint64_t n = std::uint64_t(10.0 * std::pow(1e4, unif(rng)));
        const DiscreteModel model = random_model(rng, m);
        const AnchorPair anchor =
            (trial % 2 == 0) ? AnchorPair::diagonal(m) : AnchorPair::e1(m);

        const SampleCounts sample = sample_multinomial(model, n, rng);
        const ComponentVector y = components_y(sample, model);
        const ComponentVector z = transform_simple(y, model, anchor);

        worst = std::max(worst, std::fabs(dot(y.values, model.sqrt_probs().coords())));
        worst = std::max(worst, std::fabs(dot(z.values, anchor.r().coords())));
        worst = std::max(worst, std::fabs(norm(z.values) - norm(y.values)));
        worst = std::max(worst, std::fabs(pearson_chi2(z).value - pearson_chi2(y).value));
        const ComponentVector back = inverse_transform(z, model, anchor);
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::fabs(back.values[i] - y.values[i]));

        if (anchor.preset() == AnchorPreset::e1 && z.values[0] != 0.0) e1_exact = false;
        if (anchor.preset() == AnchorPreset::diagonal)
            worst = std::max(worst, std::fabs(partial_sums(z).values.back()));
    }
    report(3, "exact transform identities over 1200 random instances",
           worst <= 1e-10 && e1_exact,
           "worst residual " + fmt(worst) + " <= 1e-10, pinned coordinate exact: " +
               (e1_exact ? "yes" : "no"));
}

std::vector<UnitVector> random_orthonormal(std::mt19937_64& rng, std::size_t m, std::size_t k) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> basis;
    while (basis.size() < k) {
        Vec x(m);
        for (double& v : x) v = gauss(rng);
        for (const Vec& b : basis) axpy(-dot(b, x), b, x);
        if (norm(x) < 1e-6) continue;
        basis.push_back(normalized(x));
    }
    std::vector<UnitVector> out;
    for (Vec& b : basis) out.emplace_back(std::move(b));
    return out;
}

// 4. Operator contracts: isometry, pinning, fixed subspace, transpose inverse,
//    the Hellinger identity, and agreement of the projection formula with the
//    dense four-subspace operator.
void criterion_4() {
    std::mt19937_64 rng(401);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0, worst_hellinger = 0.0, worst_formula = 0.0;

    auto rand_vec = [&](std::size_t m) {
        Vec x(m);
        for (double& v : x) v = gauss(rng);
        return x;
    };
    auto check_op = [&](const RotationOp& op, const std::vector<const UnitVector*>& from,
                        const std::vector<const UnitVector*>& to) {
        const std::size_t m = op.dim();
        for (std::size_t k = 0; k < from.size(); ++k) {
            const Vec image = op.apply(from[k]->coords());
            for (std::size_t i = 0; i < m; ++i)
                worst = std::max(worst, std::fabs(image[i] - (*to[k])[i]));
        }
        Vec x = rand_vec(m);
        std::vector<Vec> span;
        for (const auto& side : {from, to}) {
            for (const UnitVector* d : side) {
                Vec b = d->coords();
                for (const Vec& prev : span) axpy(-dot(prev, b), prev, b);
                if (norm(b) < 1e-10) continue;
                span.push_back(normalized(b));
            }
        }
        for (const Vec& b : span) axpy(-dot(b, x), b, x);
        const Vec fixed = op.apply(x);
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::fabs(fixed[i] - x[i]));

        const Vec y = rand_vec(m);
        const Vec image = op.apply(y);
        worst = std::max(worst, std::fabs(norm(image) - norm(y)));
        const Vec back = op.apply_transpose(image);
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::fabs(back[i] - y[i]));
    };

    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t m = 4 + std::size_t(rng() % 27);
        const auto vs = random_orthonormal(rng, m, 4);
        const UnitVector q(normalized(rand_vec(m))), r(normalized(rand_vec(m)));

        check_op(build_rotation_2d(q, r), {&q}, {&r});
        check_op(householder_map(q, r), {&q, &r}, {&r, &q});

        const Vec diff = subtract(r.coords(), q.coords());
        worst_hellinger = std::max(
            worst_hellinger,
            std::fabs(dot(diff, diff) - 2.0 * (1.0 - dot(q.coords(), r.coords()))));

        const auto mode = (trial % 2 == 0) ? BasisMode::gram_schmidt : BasisMode::symmetric;
        const GeometryBundle bundle = build_bases(vs[0], vs[1], vs[2], vs[3], mode);
        const RotationOp op4 = build_rotation_4d(bundle);
        check_op(op4, {&bundle.q, &bundle.qhat, &bundle.a3, &bundle.a4},
                 {&bundle.r, &bundle.rhat, &bundle.b3, &bundle.b4});

        ComponentVector yhat;
        yhat.kind = ComponentKind::parametric_yhat;
        yhat.values = rand_vec(m);
        axpy(-dot(bundle.q.coords(), yhat.values), bundle.q.coords(), yhat.values);
        axpy(-dot(bundle.qhat.coords(), yhat.values), bundle.qhat.coords(), yhat.values);
        const Vec dense = op4.apply(yhat.values);
        const ComponentVector zhat = transform_parametric(yhat, bundle);
        for (std::size_t i = 0; i < m; ++i)
            worst_formula = std::max(worst_formula, std::fabs(zhat.values[i] - dense[i]));
    }
    report(4, "rotation operator contracts over 250 random instances",
           worst <= 1e-10 && worst_hellinger <= 1e-12 && worst_formula <= 1e-10,
           "operator residual " + fmt(worst) + " <= 1e-10, norm identity " +
               fmt(worst_hellinger) + " <= 1e-12, projection-vs-dense " + fmt(worst_formula) +
               " <= 1e-10");
}

// 5. Fitted power-law transforms kill the first two coordinates under the
//    coordinate-axis anchors.
void criterion_5() {
    const ParametricFamily family = power_law_family(10);
    const DiscreteModel truth(family.probs(1.0));
    const AnchorPair anchor = AnchorPair::e1_e2(10);
    std::mt19937_64 rng(501);

    int tested = 0;
    double worst_pinned = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 60 && tested < 50; ++trial) {
        const SampleCounts sample = sample_multinomial(truth, 200, rng);
        FitResult fit;
        try {
            fit = mle_fit(sample, family);
        } catch (const Error&) {
            continue;  // a corner draw without an interior likelihood maximum
        }
        worst_residual = std::max(worst_residual, std::fabs(fit.score_residual));
        const ComponentVector yhat = components_y_hat(sample, family, fit.theta_hat);
        const GeometryBundle bundle = parametric_bundle(family, fit.theta_hat, anchor);
        const ComponentVector zhat = transform_parametric(yhat, bundle);
        worst_pinned = std::max(worst_pinned,
                                std::max(std::fabs(zhat.values[0]), std::fabs(zhat.values[1])));
        ++tested;
    }
    report(5, "fitted parametric transform zeroes both pinned coordinates",
           tested >= 50 && worst_pinned <= 1e-6 && worst_residual <= 1e-10,
           std::to_string(tested) + " samples, max pinned coordinate " + fmt(worst_pinned) +
               " <= 1e-6, max score residual " + fmt(worst_residual) + " <= 1e-10");
}

// 6. Second-moment contract: empirical cov(Z) is the projection that removes
//    the anchor directions, independent of the model.
void criterion_6() {
    const unsigned threads = worker_threads();
    const AnchorPair anchor = AnchorPair::diagonal(5);
    const double dev_a = covariance_check(make_beta_increments_model(3.0, 3.0, 5), anchor,
                                          20000, 20000, 601, threads);
    const double dev_b = covariance_check(make_beta_increments_model(0.8, 1.5, 5), anchor,
                                          20000, 20000, 602, threads);
    const double dev_p = covariance_check_parametric(power_law_family(5), 1.0,
                                                     AnchorPair::plateau(5), 20000, 20000, 603,
                                                     threads);
    const bool ok = dev_a <= 0.05 && dev_b <= 0.05 && dev_p <= 0.05;
    report(6, "empirical covariance matches the projected identity", ok,
           "deviations " + fmt(dev_a) + ", " + fmt(dev_b) + ", parametric " + fmt(dev_p) +
               " all <= 0.05");
}

// 7. Null squared norms carry chi-square mean m-1 after removing one anchor.
void criterion_7() {
    const std::size_t m = 10, B = 100000;
    const NullTable table =
        null_table(StatName::pearson_chi2, m, AnchorPair::diagonal(m), B, 701);
    double mean = 0.0;
    for (double v : table.values) mean += v;
    mean /= double(B);
    const double expect = double(m - 1);
    const double band = 5.0 * std::sqrt(2.0 * expect / double(B));
    report(7, "chi-square null table mean matches m-1", std::fabs(mean - expect) <= band,
           "mean " + fmt(mean) + " within " + fmt(expect) + " +/- " + fmt(band));
}

// 8. MLE: exact recovery, small residuals, derivative consistency.
void criterion_8() {
    bool ok = true;
    std::string detail;

    // exact recovery: counts proportional to p(theta0) put the root at theta0
    const FitResult exact =
        mle_fit(SampleCounts(std::vector<std::uint64_t>{200, 100}), power_law_family(2));
    ok = ok && std::fabs(exact.theta_hat - 1.0) <= 1e-8;
    detail += "exact-recovery error " + fmt(std::fabs(exact.theta_hat - 1.0));

    // residuals stay at the solver tolerance across random fits
    const ParametricFamily family = power_law_family(10);
    const DiscreteModel truth(family.probs(1.0));
    std::mt19937_64 rng(801);
    double worst_residual = 0.0;
    int fits = 0;
    for (int trial = 0; trial < 30 && fits < 25; ++trial) {
        try {
            const FitResult fit = mle_fit(sample_multinomial(truth, 500, rng), family);
            worst_residual = std::max(worst_residual, std::fabs(fit.score_residual));
            ++fits;
        } catch (const Error&) {
        }
    }
    ok = ok && fits >= 25 && worst_residual <= 1e-10;
    detail += ", max residual " + fmt(worst_residual) + " over " + std::to_string(fits) +
              " fits";

    // analytic derivatives agree with finite differences
    bool derivatives_ok = true;
    try {
        validate_family(family, Vec{-0.5, 0.0, 1.0, 2.0});
    } catch (const Error&) {
        derivatives_ok = false;
    }
    ok = ok && derivatives_ok;
    detail += std::string(", derivative check ") + (derivatives_ok ? "ok" : "failed");

    report(8, "maximum-likelihood fitting is exact and consistent", ok, detail);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DFGOF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 9. CLI determinism: identical config and seed means byte-identical output,
//    regardless of parallelism.
void criterion_9() {
    const fs::path tmp =
        fs::temp_directory_path() / ("dfgof_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(tmp);

    bool ok = true;
    std::string detail;
    {
        std::ofstream counts(tmp / "counts.csv");
        counts << "index,count\n1,14\n2,9\n3,4\n4,3\n";
    }
    const std::string test_cmd = "test --counts " + (tmp / "counts.csv").string() +
                                 " --model [0.4,0.3,0.2,0.1] --stat ks_z --reps 2000 --seed 7";
    ok = ok && run_cli(test_cmd + " --out " + (tmp / "t1").string()) == 0;
    ok = ok && run_cli(test_cmd + " --out " + (tmp / "t2").string()) == 0;
    const bool test_same = slurp(tmp / "t1" / "test.json") == slurp(tmp / "t2" / "test.json");
    ok = ok && test_same;
    detail += std::string("test rerun ") + (test_same ? "identical" : "differs");

    const std::string sim_cmd =
        "simulate --preset paper-fig1 --reps 1000 --stat ks_z --seed 7";
    ok = ok && run_cli(sim_cmd + " --threads 1 --out " + (tmp / "s1").string()) == 0;
    ok = ok && run_cli(sim_cmd + " --threads 4 --out " + (tmp / "s4").string()) == 0;
    bool sim_same = slurp(tmp / "s1" / "summary.json") == slurp(tmp / "s4" / "summary.json");
    for (const char* name :
         {"uniform_spacings_cdf.csv", "beta_3_3_cdf.csv", "beta_0.8_1.5_cdf.csv"})
        sim_same = sim_same && slurp(tmp / "s1" / name) == slurp(tmp / "s4" / name);
    ok = ok && sim_same;
    detail += std::string(", simulate across thread counts ") +
              (sim_same ? "identical" : "differs");

    fs::remove_all(tmp);
    report(9, "CLI output is byte-identical for a fixed config and seed", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
