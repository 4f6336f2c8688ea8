#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qftv/cli.hpp"

using qftv::cli::run;
using qftv::cli::RunResult;

namespace {

// temp-file helper for channel/config documents
struct TempJson {
    std::string path;

    TempJson(const std::string& name, const nlohmann::json& doc)
        : path("/tmp/qftv_test_" + name + ".json") {
        std::ofstream out(path);
        out << doc.dump();
    }
    ~TempJson() { std::remove(path.c_str()); }
};

nlohmann::json perfect_channel_doc(int n) {
    return {{"type", "exact_unitary"}, {"n", n}, {"circuit", {{"name", "inverse_qft"}}}};
}

nlohmann::json adversarial_doc() {
    return {{"type", "adversarial_fourier_corruptor"},
            {"n", 3},
            {"remap", {{1, 2}, {5, 0}}}};  // eta = 0.25
}

}  // namespace

TEST_CASE("bounds defaults emit the reference table as CSV") {
    const RunResult result = run({"bounds"});
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("N,K,x,exact_tail,rigorous,conjectured") == 0);
    CHECK(result.output.find("0.0993") != std::string::npos);
    CHECK(result.output.find("0.375") != std::string::npos);
    CHECK(result.output.find("0.0578") != std::string::npos);
}

TEST_CASE("bounds rejects K = 1 with a usage error") {
    const RunResult result = run({"bounds", "--K", "1"});
    CHECK(result.exit_code == 2);
}

TEST_CASE("identical invocations produce byte-identical primary output") {
    const RunResult a = run({"bounds", "--N", "2048", "--x", "0.25", "0.5"});
    const RunResult b = run({"bounds", "--N", "2048", "--x", "0.25", "0.5"});
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    const TempJson channel("det", adversarial_doc());
    const RunResult c = run({"verify", "--channel", channel.path, "--seed", "9"});
    const RunResult d = run({"verify", "--channel", channel.path, "--seed", "9"});
    CHECK(c.output == d.output);
}

TEST_CASE("thread count never changes the report") {
    const TempJson channel("threads", adversarial_doc());
    const RunResult one =
        run({"verify", "--channel", channel.path, "--seed", "88", "--threads", "1"});
    const RunResult two =
        run({"verify", "--channel", channel.path, "--seed", "88", "--threads", "2"});
    REQUIRE(one.exit_code == two.exit_code);
    CHECK(one.output == two.output);
}

TEST_CASE("--out routes the report to a file path") {
    const RunResult result = run({"bounds", "--out", "/tmp/qftv_test_out.csv"});
    CHECK(result.exit_code == 0);
    CHECK(result.out_path == "/tmp/qftv_test_out.csv");
    CHECK(result.output.find("N,K,x") == 0);
}

TEST_CASE("verify passes a perfect channel and fails an adversarial one") {
    const TempJson perfect("perfect", perfect_channel_doc(4));
    const RunResult pass = run({"verify", "--channel", perfect.path, "--threshold", "0.041"});
    REQUIRE(pass.exit_code == 0);
    const auto pass_report = nlohmann::json::parse(pass.output);
    CHECK(pass_report["result"]["eta_hat"].get<double>() == 0.0);
    CHECK(pass_report["result"]["verdict"] == "PASS");
    CHECK(pass_report["result"].contains("seed"));
    CHECK(pass_report["config"].contains("channel"));
    CHECK(pass_report.contains("version"));

    const TempJson bad("bad", adversarial_doc());
    const RunResult fail =
        run({"verify", "--channel", bad.path, "--threshold", "0.041", "--epsilon", "0.05"});
    CHECK(fail.exit_code == 1);
    const auto fail_report = nlohmann::json::parse(fail.output);
    CHECK(fail_report["result"]["verdict"] == "FAIL");
    CHECK(fail_report["result"]["eta_hat"].get<double>() > 0.15);
}

TEST_CASE("missing required inputs exit with code 2") {
    CHECK(run({"verify"}).exit_code == 2);                       // no channel
    CHECK(run({"no_such_command"}).exit_code == 2);
    CHECK(run({"verify", "--bogus-flag"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);                               // subcommand required
    const TempJson channel("p", perfect_channel_doc(3));
    CHECK(run({"period", "--channel", channel.path}).exit_code == 2);  // missing --r
    CHECK(run({"verify", "--channel", "/tmp/does_not_exist_qftv.json"}).exit_code == 2);
}

TEST_CASE("csv format is rejected outside the bounds table") {
    const TempJson channel("fmt", perfect_channel_doc(3));
    CHECK(run({"verify", "--channel", channel.path, "--format", "csv"}).exit_code == 2);
    CHECK(run({"bounds", "--format", "yaml"}).exit_code == 2);
}

TEST_CASE("pe reports the bad fraction next to the theorem bound") {
    const TempJson channel("pe", perfect_channel_doc(4));
    const RunResult result = run({"pe", "--channel", channel.path, "--theta", "0.8125",
                                  "--shots", "200", "--K", "2"});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["result"]["bad_fraction"].get<double>() == 0.0);
    CHECK(report["result"]["eta"].get<double>() == 0.0);
    CHECK(report["result"]["bound"].get<double>() == doctest::Approx(0.75));
    CHECK(report["result"]["shots"].get<int>() == 200);
}

TEST_CASE("pe at K = 4 with a small-eta channel stays under the 0.497 bound") {
    // 15 corrupted states of 1024: eta = 0.0146 <= 0.015
    nlohmann::json remap = nlohmann::json::array();
    for (int i = 0; i < 15; ++i) remap.push_back({i * 60, (i * 60 + 9) % 1024});
    const nlohmann::json doc = {
        {"type", "adversarial_fourier_corruptor"}, {"n", 10}, {"remap", remap}};
    const TempJson channel("eta015", doc);
    const RunResult result = run({"pe", "--channel", channel.path, "--theta", "0.33349609375",
                                  "--shots", "3000", "--K", "4", "--seed", "6"});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    const double bound = report["result"]["bound"].get<double>();
    const double bad_fraction = report["result"]["bad_fraction"].get<double>();
    CHECK(bound < 0.497);
    CHECK(bad_fraction < 0.497 + 3.0 * std::sqrt(0.497 * 0.503 / 3000.0));
    CHECK(bad_fraction <= bound);
}

TEST_CASE("pe honors a pinned lambda") {
    const nlohmann::json doc = {{"type", "adversarial_fourier_corruptor"},
                                {"n", 4},
                                {"remap", {{11, 14}}}};
    const TempJson channel("pin", doc);
    const RunResult result = run({"pe", "--channel", channel.path, "--theta", "0.6875",
                                  "--shots", "300", "--K", "1", "--pin-lambda", "0"});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    // theta = 11/16 and k* = 11 is corrupted: with lambda pinned the window
    // K=1 around theta is missed by every shot that lands on the remap target
    CHECK(report["result"]["bad_fraction"].get<double>() == 1.0);
}

TEST_CASE("period subcommand recovers the period with a perfect channel") {
    const TempJson channel("period", perfect_channel_doc(4));
    const RunResult result = run({"period", "--channel", channel.path, "--r", "5", "--s", "3",
                                  "--bound", "8", "--runs", "64", "--seed", "3", "--verbose"});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["result"]["successes"].get<int>() > 0);
    bool found_13 = false;
    for (const auto& entry : report["result"]["runs"]) {
        if (entry["outcome_j"].get<int>() == 13) {
            found_13 = true;
            const auto& convergents = entry["convergents"];
            REQUIRE(convergents.size() == 4);
            CHECK(convergents[2][0].get<int>() == 4);
            CHECK(convergents[2][1].get<int>() == 5);
            CHECK(convergents[3][0].get<int>() == 13);
            CHECK(convergents[3][1].get<int>() == 16);
            CHECK(entry["candidate_period"].get<int>() == 5);
        }
    }
    CHECK(found_13);
}

TEST_CASE("amplitude subcommand estimates mu") {
    const TempJson channel("amp", perfect_channel_doc(8));
    const RunResult result = run({"amplitude", "--channel", channel.path, "--mu", "0.7853981633974483",
                                  "--shots", "51"});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["result"]["mu_hat"].get<double>() ==
          doctest::Approx(0.7853981633974483).epsilon(1e-9));
}

TEST_CASE("config file supplies defaults, flags win") {
    const TempJson config("cfg", nlohmann::json{{"N", 512},
                                                {"K", {2}},
                                                {"x", {0.5}},
                                                {"format", "csv"}});
    const RunResult from_config = run({"bounds", "--config", config.path});
    REQUIRE(from_config.exit_code == 0);
    CHECK(from_config.output.find("512,2,0.5") != std::string::npos);

    const RunResult overridden = run({"bounds", "--config", config.path, "--N", "256"});
    REQUIRE(overridden.exit_code == 0);
    CHECK(overridden.output.find("256,2,0.5") != std::string::npos);
}

TEST_CASE("config file can carry the channel document inline") {
    nlohmann::json config_doc = {{"epsilon", 0.1}, {"delta", 0.1}, {"threshold", 0.2}};
    config_doc["channel"] = perfect_channel_doc(3);
    const TempJson config("inline", config_doc);
    const RunResult result = run({"verify", "--config", config.path});
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["result"]["eta_hat"].get<double>() == 0.0);
    CHECK(report["result"]["epsilon"].get<double>() == 0.1);
}

TEST_CASE("help is available and exits cleanly") {
    const RunResult result = run({"--help"});
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("verify") != std::string::npos);
    CHECK(result.output.find("bounds") != std::string::npos);
}
