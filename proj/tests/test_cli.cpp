// End-to-end checks of the command-line binary; the path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("fkg_cli_test_" + name);
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("definitely-not-a-command").exit_code == 2);
    CHECK(run("certify --no-such-flag").exit_code == 2);
    CHECK(run("apps bernstein --input /nonexistent.json").exit_code == 2);
}

TEST_CASE("certificates pass for orders 2 through 5") {
    for (int m = 2; m <= 5; ++m) {
        const RunResult r = run("certify --m " + std::to_string(m) + " --kind conjugate");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("PASS") != std::string::npos);
    }
}

TEST_CASE("json output parses and carries the certificate") {
    const RunResult r = run("--format json certify --m 2 --kind conjugate");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["outcome"] == "pass");
    CHECK(j["payload"]["certificate"]["pass"] == true);
    CHECK(j["payload"]["certificate"]["monomials"] == 1);
}

TEST_CASE("sweeps are byte-identical across runs and thread counts") {
    const std::string args = "sweep --m 3 --shape 2,2,2 --trials 10 --seed 1";
    const RunResult a = run(args);
    const RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const RunResult c = run("--format json " + args);
    setenv("FKG_THREADS", "4", 1);
    const RunResult d = run("--format json " + args);
    unsetenv("FKG_THREADS");
    CHECK(c.output == d.output);
}

TEST_CASE("violation witnesses round-trip through replay") {
    const auto witness_path = temp_file("witness.json");
    const RunResult sweep_run = run("sweep --m 3 --kind cumulant --shape 2,2,2 --trials 400 --seed 2 --out-witness " +
                                    witness_path.string());
    CHECK(sweep_run.exit_code == 1);  // violation found is exit code 1
    REQUIRE(std::filesystem::exists(witness_path));

    const RunResult replay_run = run("replay --witness " + witness_path.string());
    CHECK(replay_run.exit_code == 1);  // confirmed violation
    CHECK(replay_run.output.find("stored value reproduces: PASS") != std::string::npos);

    // tampering with the stored value is a data error
    {
        std::ifstream in(witness_path);
        nlohmann::json j;
        in >> j;
        j["value"] = "1/7";
        std::ofstream out(witness_path);
        out << j.dump();
    }
    CHECK(run("replay --witness " + witness_path.string()).exit_code == 2);
    std::filesystem::remove(witness_path);
}

TEST_CASE("built-in checks pass") {
    CHECK(run("checks identities").exit_code == 0);
    CHECK(run("checks gap-sign").exit_code == 0);
    CHECK(run("checks duplicate-vars").exit_code == 0);
    CHECK(run("checks coefficient-bounds").exit_code == 0);
}

TEST_CASE("application commands") {
    const auto input = temp_file("bernstein.json");
    {
        std::ofstream out(input);
        out << R"({"n":2, "x":"1/2", "f1":["0","1/2","1"], "f2":["0","1/2","1"], "f3":["0","1/2","1"]})";
    }
    const RunResult r = run("apps bernstein --input " + input.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("3/16") != std::string::npos);
    std::filesystem::remove(input);

    const auto ranking = temp_file("ranking.json");
    {
        std::ofstream out(ranking);
        out << R"({"m":2, "n":1, "theta":[[0,1]], "theta2":[[1,2]]})";
    }
    const RunResult r2 = run("--format json apps ranking --input " + ranking.string());
    CHECK(r2.exit_code == 0);
    const auto j = nlohmann::json::parse(r2.output);
    CHECK(j["payload"]["p_given_theta"] == "2/3");
    CHECK(j["payload"]["p_given_theta_prime"] == "1");
    std::filesystem::remove(ranking);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-fkg-binary>\n");
        return 2;
    }
    g_binary = argv[1];
    doctest::Context context;
    // strip our binary-path argument before doctest sees it
    context.applyCommandLine(1, argv);
    return context.run();
}
