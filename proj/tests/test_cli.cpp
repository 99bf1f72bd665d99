#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcurve/cli.hpp"
#include "dcurve/distribution.hpp"

using namespace dcurve;

namespace {

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"dcurve"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: curve emits the requested grid and reproduces bytes") {
    const std::string out = "/tmp/dcurve_test_curve.csv";
    REQUIRE(run({"curve", "--noise", "gaussian:1", "--cost", "power:2", "--budget", "1",
                 "--grid", "100", "--out", out}) == 0);
    const std::string first = slurp(out);
    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,lower,upper");
    std::size_t rows = 0;
    bool equal_cols = true;
    while (std::getline(lines, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (line.substr(c1 + 1, c2 - c1 - 1) != line.substr(c2 + 1)) equal_cols = false;
    }
    CHECK(rows == 100);
    CHECK(equal_cols);  // Gaussian: lower == upper, identical digit strings

    // Manifest written alongside, rerun is byte-identical.
    CHECK(slurp(out + ".manifest.json").find("\"subcommand\": \"curve\"") != std::string::npos);
    REQUIRE(run({"curve", "--noise", "gaussian:1", "--cost", "power:2", "--budget", "1",
                 "--grid", "100", "--out", out}) == 0);
    CHECK(slurp(out) == first);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("cli: circuit grid is monotone in SNR") {
    const std::string out = "/tmp/dcurve_test_circuit.csv";
    REQUIRE(run({"circuit", "--k", "3", "--snr-grid", "0.1:10:50", "--out", out}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "snr,t_star,error_lb");
    double prev_t = -1.0;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double t_star = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(t_star >= prev_t - 1e-12);
        prev_t = t_star;
    }
    CHECK(rows == 50);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("cli: relay json report") {
    const std::string out = "/tmp/dcurve_test_relay.json";
    REQUIRE(run({"relay", "--scheme", "binary", "--n", "20", "--p", "2", "--trials", "5000",
                 "--seed", "7", "--format", "json", "--out", out}) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["trials"] == 5000);
    CHECK(j["seed"] == 7);
    CHECK(j["estimates"].contains("flip_prob"));
    CHECK(j["estimates"]["flip_prob"].contains("se"));
    CHECK(j["targets"].contains("flip_prob_bound"));
    CHECK(j.contains("elapsed_ms"));
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("cli: divergence over distribution files") {
    const std::string pf = "/tmp/dcurve_test_p.json";
    const std::string qf = "/tmp/dcurve_test_q.json";
    {
        std::ofstream p(pf);
        p << Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}).to_json().dump();
        std::ofstream q(qf);
        q << Distribution::discrete({{0.0, 0.9}, {1.0, 0.1}}).to_json().dump();
    }
    const std::string out = "/tmp/dcurve_test_div.csv";
    REQUIRE(run({"divergence", "--p", pf, "--q", qf, "--div", "tv", "--out", out}) == 0);
    std::istringstream lines(slurp(out));
    std::string header, value;
    std::getline(lines, header);
    std::getline(lines, value);
    CHECK(header == "value");
    CHECK(std::stod(value) == doctest::Approx(0.4).epsilon(1e-12));
    std::remove(pf.c_str());
    std::remove(qf.c_str());
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("cli: gridded noise loads from a JSON file") {
    const std::string nf = "/tmp/dcurve_test_noise.json";
    {
        // Triangle density on [-1, 1].
        std::ofstream f(nf);
        f << R"({"family":"gridded","x":[-1.0,0.0,1.0],"f":[0.0,1.0,0.0]})";
    }
    const std::string out = "/tmp/dcurve_test_theta.csv";
    REQUIRE(run({"theta", "--noise", "gridded:" + nf, "--x", "0:2:5", "--out", out}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "x,theta,theta_lb");
    std::getline(lines, line);  // x = 0 row
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) == 0.0);
    std::remove(nf.c_str());
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("cli: divergence kinds over gauss mixtures") {
    const std::string pf = "/tmp/dcurve_test_p2.json";
    const std::string qf = "/tmp/dcurve_test_q2.json";
    {
        std::ofstream p(pf);
        p << Distribution::gaussian(1.0, 1.0).to_json().dump();
        std::ofstream q(qf);
        q << Distribution::gaussian(0.0, 1.0).to_json().dump();
    }
    auto value_of = [&](const std::string& div) {
        const std::string out = "/tmp/dcurve_test_div2.csv";
        REQUIRE(run({"divergence", "--p", pf, "--q", qf, "--div", div, "--out", out}) == 0);
        std::istringstream lines(slurp(out));
        std::string header, value;
        std::getline(lines, header);
        std::getline(lines, value);
        std::remove(out.c_str());
        std::remove((out + ".manifest.json").c_str());
        return std::stod(value);
    };
    CHECK(value_of("kl") == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(value_of("renyi:2") == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-8));
    CHECK(value_of("w1") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(value_of("egamma:1") == doctest::Approx(0.38292492254802621).epsilon(1e-7));
    CHECK(run({"divergence", "--p", pf, "--q", qf, "--div", "bogus"}) == 2);
    std::remove(pf.c_str());
    std::remove(qf.c_str());
}

TEST_CASE("cli: exit codes") {
    CHECK(run({"frobnicate"}) == 2);                             // unknown subcommand
    CHECK(run({"curve", "--bogus-flag", "1"}) == 2);             // bad flag
    CHECK(run({"theta", "--noise", "cauchy:1"}) == 2);           // validation error
    CHECK(run({"curve", "--noise", "gaussian:1", "--budget", "-1"}) == 2);
    CHECK(run({"tree", "--mu", "10", "--t", "0.2"}) == 2);       // domain error
}

TEST_CASE("cli: decay checkpoints include the rate bound") {
    const std::string out = "/tmp/dcurve_test_decay.csv";
    REQUIRE(run({"decay", "--noise", "gaussian:1", "--cost", "power:2", "--budget", "1",
                 "--nmax", "200", "--out", out}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,t_n,T_bound,rate_lemma_bound");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        const double t_n = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double bound = std::stod(line.substr(c3 + 1));
        CHECK(t_n <= bound + 1e-10);
    }
    CHECK(rows >= 5);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}
