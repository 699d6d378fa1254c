#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(COLLATZ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.output); }

} // namespace

TEST_CASE("orbit command: periodic seed exits 0") {
    const auto res = run_cli("orbit --p 2 --q 3 --u 27 --max-steps 1000");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["command"] == "orbit");
    CHECK(j["result"]["truncated"] == false);
    CHECK(j["result"]["cycle"]["period"] == 2);
    // the orbit ends in the {1,2} cycle
    const auto& states = j["result"]["states"];
    const auto pre = j["result"]["cycle"]["preperiod"].get<long>();
    CHECK((states[pre] == "1" || states[pre] == "2"));
}

TEST_CASE("orbit command: known (5,13) cycle") {
    const auto res = run_cli("orbit --p 5 --q 13 --u -2");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["cycle"]["preperiod"] == 0);
    CHECK(j["result"]["cycle"]["period"] == 3);
    CHECK(j["result"]["states"][0] == "-2");
    CHECK(j["result"]["states"][1] == "-5");
    CHECK(j["result"]["states"][2] == "-1");
}

TEST_CASE("orbit command: fixed point zero") {
    const auto res = run_cli("orbit --p 2 --q 3 --u 0");
    CHECK(res.exit_code == 0);
    CHECK(parse(res)["result"]["cycle"]["period"] == 1);
}

TEST_CASE("orbit command: truncation exits 2") {
    const auto res = run_cli("orbit --p 2 --q 5 --u 7 --max-steps 5");
    CHECK(res.exit_code == 2);
    CHECK(parse(res)["result"]["truncated"] == true);
}

TEST_CASE("exit codes: usage 64, domain 65") {
    CHECK(run_cli("orbit --p 2 --q 3").exit_code == 64);       // missing --u
    CHECK(run_cli("nonsense").exit_code == 64);                // unknown command
    CHECK(run_cli("orbit --p 4 --q 3 --u 1").exit_code == 65); // p not prime
    CHECK(run_cli("orbit --p 2 --q 3 --u 1/2").exit_code == 65); // den divisible by p
}

TEST_CASE("table command: single pair CSV") {
    const auto res = run_cli("table --pairs 7:19 --range -100..-1");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("p,q,representative,cycle") != std::string::npos);
    CHECK(res.output.find("7,19,-5,-5;-13;-35") != std::string::npos);
}

TEST_CASE("table command: positive range finds only the {1,2} cycle") {
    const auto res = run_cli("table --pairs 2:3 --range 1..10");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("2,3,1,1;2") != std::string::npos);
}

TEST_CASE("table command output is byte-stable across runs and thread counts") {
    const auto a = run_cli("table --pairs 2:3,5:7 --range -300..-1 --threads 1");
    const auto b = run_cli("table --pairs 2:3,5:7 --range -300..-1 --threads 4");
    const auto c = run_cli("table --pairs 2:3,5:7 --range -300..-1 --threads 4");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(b.output == c.output);
    CHECK(a.output.find("2,3,-17,-17;-25;-37;-55;-82;-41;-61;-91;-136;-68;-34") !=
          std::string::npos);
}

TEST_CASE("phi command: exact stream of 1 under (2,3)") {
    const auto res = run_cli("phi --p 2 --q 3 --u 1 --exact");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["preperiod"].empty());
    CHECK(j["result"]["period"] == nlohmann::json::array({1, 0}));
    CHECK(j["result"]["value"] == "-1/3");
}

TEST_CASE("phi command: aperiodic within budget exits 2") {
    const auto res = run_cli("phi --p 2 --q 5 --u 7 --exact --max-steps 10");
    CHECK(res.exit_code == 2);
}

TEST_CASE("phi-inv command") {
    const auto res = run_cli("phi-inv --p 2 --q 3 --period 1,0");
    CHECK(res.exit_code == 0);
    CHECK(parse(res)["result"]["value"] == "1");
}

TEST_CASE("periodic command") {
    const auto res = run_cli("periodic --p 2 --q 3 --k 2");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["count"] == 4);
    CHECK(j["result"]["points"] == nlohmann::json::array({"-1", "0", "1", "2"}));
}

TEST_CASE("catalan command") {
    const auto res = run_cli("catalan --p 2 --q 3 --bound 64");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["minus_one"].size() == 2);
    CHECK(j["result"]["plus_one"].size() == 2);
}

TEST_CASE("stats mean-drift command stays in the bracket") {
    const auto res = run_cli("stats mean-drift --p 2 --q 3 --m 8 --full --rng-seed 5");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["within_bounds"] == true);
    CHECK(j["result"]["rng_seed"] == 5);
    // deterministic given the seed
    const auto res2 = run_cli("stats mean-drift --p 2 --q 3 --m 8 --full --rng-seed 5");
    CHECK(res.output == res2.output);
}

TEST_CASE("stats mean-drift CSV") {
    const auto res = run_cli("stats mean-drift --p 2 --q 3 --m 6 --full --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("m,empirical,lower,upper,samples,rng_seed\n", 0) == 0);
}

TEST_CASE("density command") {
    const auto res = run_cli("density --u 7 --n 2");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"][1]["w_n"] == "3");
    CHECK(j["result"][1]["distance_exponent"] == 2);
}

TEST_CASE("psiprime command") {
    const auto res = run_cli("psiprime --u 1 --omega 1 --n-max 6");
    CHECK(res.exit_code == 0);
    const auto j = parse(res);
    CHECK(j["result"]["values"][3] == "8"); // psi'(4) = 2*4
}

TEST_CASE("series commands") {
    const auto phi = run_cli("series --p 2 --op phi --num 1 --den 1,1 --prec 5");
    CHECK(phi.exit_code == 0);
    CHECK(parse(phi)["result"]["coeffs"] == nlohmann::json::array({1, 0, 0, 0, 0}));

    const auto orbit = run_cli("series --p 2 --op orbit --num 1 --den 1,1,1");
    CHECK(orbit.exit_code == 0);
    CHECK(parse(orbit)["result"]["period"] == 2);

    const auto inv = run_cli("series --p 2 --op phi-inv --digits 1,0,0,0");
    CHECK(inv.exit_code == 0);
    CHECK(parse(inv)["result"]["coeffs"] == nlohmann::json::array({1, 1, 1, 1}));

    const auto bad = run_cli("series --p 2 --op phi --num 1 --den 0,1");
    CHECK(bad.exit_code == 65); // denominator vanishes at 0
}

TEST_CASE("json reports echo config and version") {
    const auto res = run_cli("catalan --p 2 --q 3 --bound 8");
    const auto j = parse(res);
    CHECK(j.contains("version"));
    CHECK(j["config"]["p"] == 2);
    CHECK(j["config"]["q"] == 3);
}
