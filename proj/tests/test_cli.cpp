#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = DFGOF_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("dfgof_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json(const fs::path& path) { return json::parse(slurp(path)); }

// Parses "index,col1,col2,..." CSV bodies below the provenance header.
std::vector<std::vector<double>> read_csv_columns(const fs::path& path, std::size_t cols) {
    std::ifstream in(path);
    std::vector<std::vector<double>> out(cols);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;  // column-name row
            continue;
        }
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');  // index
        for (std::size_t c = 0; c < cols; ++c) {
            std::getline(row, field, ',');
            out[c].push_back(std::stod(field));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("cli transform writes the y/z contract") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,12\n2,4\n3,4\n");
    const int rc = run("transform --counts " + (tmp.path / "counts.csv").string() +
                       " --model [0.5,0.25,0.25] --out " + (tmp.path / "out").string());
    REQUIRE(rc == 0);

    const fs::path csv = tmp.path / "out" / "transform.csv";
    REQUIRE(fs::exists(csv));
    const std::string body = slurp(csv);
    CHECK(body.rfind("# {", 0) == 0);
    CHECK(body.find("index,y,z") != std::string::npos);

    const auto cols = read_csv_columns(csv, 2);
    REQUIRE(cols[0].size() == 3);
    CHECK(cols[0][0] == doctest::Approx(0.63245553203367588).epsilon(1e-12));
    CHECK(cols[1][0] == doctest::Approx(-0.7302967433402282).epsilon(1e-12));

    const json sidecar = read_json(tmp.path / "out" / "transform.json");
    CHECK(sidecar.at("mode") == "simple");
    CHECK(sidecar.at("anchor") == "diagonal");
    CHECK(sidecar.at("n") == 20);
}

TEST_CASE("cli transform rejects a model that does not sum to one") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,10\n2,10\n");
    const int rc = run("transform --counts " + (tmp.path / "counts.csv").string() +
                       " --model [0.5,0.6] --out " + (tmp.path / "out").string());
    CHECK(rc == 2);
}

TEST_CASE("cli reports a missing counts file as an I/O failure") {
    TempDir tmp;
    const int rc = run("transform --counts " + (tmp.path / "nope.csv").string() +
                       " --model [0.5,0.5] --out " + (tmp.path / "out").string());
    CHECK(rc == 4);
}

TEST_CASE("cli transform rejects malformed counts") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,10\n3,10\n");  // index gap
    const int rc = run("transform --counts " + (tmp.path / "counts.csv").string() +
                       " --model [0.5,0.5] --out " + (tmp.path / "out").string());
    CHECK(rc == 2);
}

TEST_CASE("cli test with a perfectly fitting sample returns p = 1") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,10\n2,5\n3,5\n");
    const int rc = run("test --counts " + (tmp.path / "counts.csv").string() +
                       " --model [0.5,0.25,0.25] --stat ks_z --reps 1000 --seed 9 --out " +
                       (tmp.path / "out").string());
    REQUIRE(rc == 0);
    const json report = read_json(tmp.path / "out" / "test.json");
    CHECK(report.at("value").get<double>() == doctest::Approx(0.0).scale(1));
    CHECK(report.at("p_value").get<double>() == doctest::Approx(1.0));
    CHECK(report.at("statistic") == "ks_z");
}

TEST_CASE("cli test refuses the untransformed statistic and tiny tables") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,10\n2,5\n3,5\n");
    CHECK(run("test --counts " + (tmp.path / "counts.csv").string() +
              " --model [0.5,0.25,0.25] --stat ks_y --reps 1000 --out " +
              (tmp.path / "out").string()) == 2);
    CHECK(run("test --counts " + (tmp.path / "counts.csv").string() +
              " --model [0.5,0.25,0.25] --stat ks_z --reps 100 --out " +
              (tmp.path / "out").string()) == 2);
}

TEST_CASE("cli runs are byte-identical across repeats") {
    TempDir tmp;
    write_file(tmp.path / "counts.csv", "index,count\n1,14\n2,9\n3,4\n4,3\n");
    const std::string common = "test --counts " + (tmp.path / "counts.csv").string() +
                               " --model [0.4,0.3,0.2,0.1] --stat cvm_z --reps 2000 --seed 17";
    REQUIRE(run(common + " --out " + (tmp.path / "a").string()) == 0);
    REQUIRE(run(common + " --out " + (tmp.path / "b").string()) == 0);
    CHECK(slurp(tmp.path / "a" / "test.json") == slurp(tmp.path / "b" / "test.json"));
}

TEST_CASE("cli parametric transform zeroes the first two fitted components") {
    TempDir tmp;
    std::ostringstream counts;
    counts << "index,count\n";
    const std::vector<int> nu{79, 32, 19, 13, 13, 9, 13, 8, 7, 7};
    for (std::size_t i = 0; i < nu.size(); ++i) counts << (i + 1) << "," << nu[i] << "\n";
    write_file(tmp.path / "counts.csv", counts.str());

    const int rc = run("transform --counts " + (tmp.path / "counts.csv").string() +
                       " --family power_law --fit --anchor e1_e2 --out " +
                       (tmp.path / "out").string());
    REQUIRE(rc == 0);

    const auto cols = read_csv_columns(tmp.path / "out" / "transform.csv", 4);
    REQUIRE(cols[3].size() == 10);
    CHECK(std::fabs(cols[3][0]) <= 1e-6);  // zhat_1
    CHECK(std::fabs(cols[3][1]) <= 1e-6);  // zhat_2

    const json sidecar = read_json(tmp.path / "out" / "transform.json");
    CHECK(sidecar.at("mode") == "parametric");
    CHECK(sidecar.at("theta_hat").get<double>() ==
          doctest::Approx(1.0980210375573878).epsilon(1e-10));
}

TEST_CASE("cli two-sample transform") {
    TempDir tmp;
    write_file(tmp.path / "a.csv", "index,count\n1,6\n2,4\n");
    write_file(tmp.path / "b.csv", "index,count\n1,5\n2,9\n");
    const int rc = run("transform --counts " + (tmp.path / "a.csv").string() + " --counts2 " +
                       (tmp.path / "b.csv").string() + " --out " + (tmp.path / "out").string());
    REQUIRE(rc == 0);
    const json sidecar = read_json(tmp.path / "out" / "transform.json");
    CHECK(sidecar.at("mode") == "two_sample");
    CHECK(sidecar.at("n1") == 10);
    CHECK(sidecar.at("n2") == 14);
    const auto cols = read_csv_columns(tmp.path / "out" / "transform.csv", 2);
    // transformed components are orthogonal to the diagonal anchor
    CHECK(std::fabs(cols[1][0] + cols[1][1]) < 1e-12);
}

TEST_CASE("cli fit reports the frozen regression estimate") {
    TempDir tmp;
    std::ostringstream counts;
    counts << "index,count\n";
    const std::vector<int> nu{79, 32, 19, 13, 13, 9, 13, 8, 7, 7};
    for (std::size_t i = 0; i < nu.size(); ++i) counts << (i + 1) << "," << nu[i] << "\n";
    write_file(tmp.path / "counts.csv", counts.str());

    const int rc = run("fit --counts " + (tmp.path / "counts.csv").string() +
                       " --family power_law --out " + (tmp.path / "out").string());
    REQUIRE(rc == 0);
    const json report = read_json(tmp.path / "out" / "fit.json");
    CHECK(report.at("theta_hat").get<double>() ==
          doctest::Approx(1.0980210375573878).epsilon(1e-12));
    CHECK(report.at("converged") == true);
    CHECK(std::fabs(report.at("score_residual").get<double>()) <= 1e-10);
    CHECK(report.at("m") == 10);
    CHECK(report.at("n") == 200);
}

TEST_CASE("cli simulate smoke run with inline models") {
    TempDir tmp;
    const int rc = run("simulate --model [0.4,0.3,0.2,0.1] --model [0.25,0.25,0.25,0.25]"
                       " --n 100 --reps 200 --stat ks_z --seed 5 --threads 2 --out " +
                       (tmp.path / "out").string());
    REQUIRE(rc == 0);
    CHECK(fs::exists(tmp.path / "out" / "model_1_cdf.csv"));
    CHECK(fs::exists(tmp.path / "out" / "model_2_cdf.csv"));
    const json summary = read_json(tmp.path / "out" / "summary.json");
    CHECK(summary.at("reps") == 200);
    CHECK(summary.at("pairwise_sup_distances").size() == 1);
    CHECK(summary.at("max_sup_distance").get<double>() >= 0.0);
    CHECK(summary.at("quantiles").contains("model_1"));
}

TEST_CASE("cli simulate is deterministic across thread counts") {
    TempDir tmp;
    const std::string common = "simulate --model [0.5,0.3,0.2] --n 80 --reps 300"
                               " --stat cvm_z --seed 23";
    REQUIRE(run(common + " --threads 1 --out " + (tmp.path / "t1").string()) == 0);
    REQUIRE(run(common + " --threads 4 --out " + (tmp.path / "t4").string()) == 0);
    CHECK(slurp(tmp.path / "t1" / "model_1_cdf.csv") ==
          slurp(tmp.path / "t4" / "model_1_cdf.csv"));
    CHECK(slurp(tmp.path / "t1" / "summary.json") == slurp(tmp.path / "t4" / "summary.json"));
}

TEST_CASE("cli simulate paper-style preset produces three model CDFs") {
    TempDir tmp;
    const int rc = run("simulate --preset paper-fig1 --reps 200 --seed 3 --threads 4 --out " +
                       (tmp.path / "out").string());
    REQUIRE(rc == 0);
    CHECK(fs::exists(tmp.path / "out" / "uniform_spacings_cdf.csv"));
    CHECK(fs::exists(tmp.path / "out" / "beta_3_3_cdf.csv"));
    CHECK(fs::exists(tmp.path / "out" / "beta_0.8_1.5_cdf.csv"));
    const json summary = read_json(tmp.path / "out" / "summary.json");
    CHECK(summary.at("m") == 10);
    CHECK(summary.at("pairwise_sup_distances").size() == 3);
}
