#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

// End-to-end checks of the zslab binary: exit-code contract (0 = properties
// held, 1 = mathematical finding, 2 = usage error) and JSONL output shape.
// The binary path arrives via the ZSLAB_BIN environment variable.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("ZSLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "ZSLAB_BIN must point at the zslab binary");
    const std::string out_path = "cli_test_output.tmp";
    const std::string command =
        env_prefix + std::string(bin) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream file(out_path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    result.output = buffer.str();
    std::remove(out_path.c_str());
    return result;
}

// Every line must parse as JSON; the final line must be the summary record.
void check_jsonl(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    std::string last;
    int lines = 0;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        CHECK_NOTHROW([&] { auto parsed = nlohmann::json::parse(line); (void)parsed; }());
        last = line;
        ++lines;
    }
    REQUIRE(lines >= 1);
    const auto summary = nlohmann::json::parse(last);
    CHECK(summary.value("summary", false));
}

}  // namespace

TEST_CASE("check: unique verdict, exit 0") {
    const auto result = run_cli("check --n 5 --seq 1^4,3");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("unique r=3") != std::string::npos);
}

TEST_CASE("check --json emits the verdict record") {
    const auto result = run_cli("check --n 5 --seq 1^4,3 --json");
    CHECK(result.exit_code == 0);
    const auto record = nlohmann::json::parse(result.output);
    CHECK(record["verdict"] == "unique");
    CHECK(record["r"] == 3);
    CHECK(record["lengths"] == nlohmann::json::array({3}));
    CHECK(record["seq"] == nlohmann::json::array({1, 1, 1, 1, 3}));
}

TEST_CASE("check: usage errors exit 2") {
    CHECK(run_cli("check --n 4 --seq 5").exit_code == 2);
    CHECK(run_cli("check --n 0 --seq 1").exit_code == 2);
    CHECK(run_cli("check --n 4").exit_code == 2);          // missing --seq
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);                     // no subcommand
}

TEST_CASE("verify: clean range exits 0 and emits valid JSONL") {
    const auto result = run_cli("verify --n-min 1 --n-max 6 --workers 2 --json");
    CHECK(result.exit_code == 0);
    check_jsonl(result.output);
}

TEST_CASE("ZSLAB_WORKERS is the default for --workers") {
    // Same report either way; the env var must be accepted silently.
    const auto via_env = run_cli("verify --n-min 5 --n-max 5 --json",
                                 "ZSLAB_WORKERS=2 ");
    CHECK(via_env.exit_code == 0);
    check_jsonl(via_env.output);
    const auto via_flag = run_cli("verify --n-min 5 --n-max 5 --workers 2 --json");
    auto strip_timing = [](const std::string& text) {
        std::istringstream stream(text);
        std::string line, out;
        while (std::getline(stream, line)) {
            auto parsed = nlohmann::json::parse(line);
            parsed.erase("wall_seconds");
            out += parsed.dump() + "\n";
        }
        return out;
    };
    CHECK(strip_timing(via_env.output) == strip_timing(via_flag.output));
}

TEST_CASE("verify --out writes the report file") {
    const std::string path = "cli_verify_report.tmp";
    const auto result = run_cli("verify --n-min 4 --n-max 4 --no-prune --out " + path);
    CHECK(result.exit_code == 0);
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream buffer;
    buffer << file.rdbuf();
    check_jsonl(buffer.str());
    std::remove(path.c_str());
}

TEST_CASE("families: the n=6 discrepancy makes a finding, exit 1") {
    const auto result = run_cli("families --n-min 6 --n-max 6");
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("DISCREPANCY") != std::string::npos);

    const auto json_result = run_cli("families --n-min 6 --n-max 6 --json");
    CHECK(json_result.exit_code == 1);
    check_jsonl(json_result.output);
}

TEST_CASE("families: family-1-only range is clean") {
    CHECK(run_cli("families --n-min 5 --n-max 5").exit_code == 0);
}

TEST_CASE("spectrum output") {
    const auto result = run_cli("spectrum --n 4 --seq 1,1,2 --json");
    CHECK(result.exit_code == 0);
    const auto record = nlohmann::json::parse(result.output);
    CHECK(record["n"] == 4);
    CHECK(record["L"] == 3);
    CHECK(record["lengths"][0] == nlohmann::json::array({0, 3}));
}

TEST_CASE("zsf-cert single sequence") {
    const auto result = run_cli("zsf-cert --n 7 --seq 3^4 --json");
    CHECK(result.exit_code == 0);
    const auto record = nlohmann::json::parse(result.output);
    CHECK(record["m"] == 5);
    CHECK(record["total"] == 4);
    // Not zero-sum-free: usage error.
    CHECK(run_cli("zsf-cert --n 4 --seq 2,2,1").exit_code == 2);
}

TEST_CASE("zsf-cert sweep with cursor sharding") {
    const auto all = run_cli("zsf-cert --n 9 --sweep --json");
    CHECK(all.exit_code == 0);
    check_jsonl(all.output);

    // Two-shard consumption: first shard of 3, then resume from its cursor.
    const auto first = run_cli("zsf-cert --n 9 --sweep --limit 3 --json");
    CHECK(first.exit_code == 0);
    std::istringstream stream(first.output);
    std::string line, last;
    while (std::getline(stream, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    const auto summary = nlohmann::json::parse(last);
    CHECK(summary["checked"] == 3);
    const std::string cursor = summary["cursor"];
    const auto rest = run_cli("zsf-cert --n 9 --sweep --cursor " + cursor + " --json");
    CHECK(rest.exit_code == 0);

    auto count_records = [](const std::string& text) {
        std::istringstream s(text);
        std::string l;
        int n = 0;
        while (std::getline(s, l)) {
            if (!l.empty() && l.find("\"summary\"") == std::string::npos) {
                ++n;
            }
        }
        return n;
    };
    CHECK(count_records(first.output) + count_records(rest.output) ==
          count_records(all.output));
}

TEST_CASE("lemma31 instance sweep") {
    const auto result = run_cli("lemma31 --n 14 --j 1 --v 6 --a 3,4 --json");
    CHECK(result.exit_code == 0);
    const auto record = nlohmann::json::parse(result.output);
    CHECK(record["check_i"] == true);
    CHECK(record["failures"] == 0);

    const auto single = run_cli("lemma31 --n 14 --j 1 --v 6 --a 3,4 --k 9");
    CHECK(single.exit_code == 0);
    CHECK(single.output.find("check_i: ok") != std::string::npos);

    // Malformed instance: usage error.
    CHECK(run_cli("lemma31 --n 14 --j 1 --v 1 --a 3,4").exit_code == 2);
}

TEST_CASE("lemmab witness") {
    const auto result = run_cli("lemmab --n 4 --seq 1,3,2,2 --json");
    CHECK(result.exit_code == 0);
    const auto record = nlohmann::json::parse(result.output);
    CHECK(record["witness"] == nlohmann::json::array({1, 3}));
    CHECK(run_cli("lemmab --n 4 --seq 1,3").exit_code == 2);  // |S| != n
}

TEST_CASE("lemma-c range") {
    const auto result = run_cli("lemma-c --n-min 2 --n-max 12 --json");
    CHECK(result.exit_code == 0);
    check_jsonl(result.output);
    CHECK(run_cli("lemma-c --n-min 1 --n-max 4").exit_code == 2);
}

TEST_CASE("selftest is replayable") {
    const auto result = run_cli("--selftest --rng-seed 42 --iters 40");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("selftest passed") != std::string::npos);
}
