#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args)
{
    const std::string out_path = "/tmp/carnot_cli_stdout.txt";
    const std::string cmd =
        std::string(CARNOT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string data(const std::string& name)
{
    return std::string(CARNOT_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("identities pass on presets and exit 0")
{
    for (const auto* name : {"heisenberg", "engel"}) {
        const auto r = run(std::string("identities --algebra ") + name);
        INFO(std::string(name));
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("\"pass\": true") != std::string::npos);
    }
}

TEST_CASE("validate: preset ok, broken JSON rejected with exit 1")
{
    CHECK(run("validate --algebra heisenberg2").exit_code == 0);
    const auto bad = run("validate --algebra " + data("bad_algebra.json"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.stdout_text.find("grading") != std::string::npos);
}

TEST_CASE("input errors exit with 2")
{
    CHECK(run("identities --algebra /nonexistent.json").exit_code == 2);
    CHECK(run("hardy check --algebra heisenberg --s 7").exit_code == 2);
    // missing required --seed on a stochastic path is a parse error
    CHECK(run("gauge scan --algebra heisenberg").exit_code != 0);
}

TEST_CASE("algebra and family JSON files load")
{
    CHECK(run("identities --algebra " + data("heisenberg.json")).exit_code == 0);
    CHECK(run("hypo flag --family " + data("counterexample_family.json") + " --seed 3")
              .exit_code == 0);
}

TEST_CASE("counterexample scan: unbounded is exit 1, --expect flips it")
{
    const std::string base =
        "hypo scan --family counterexample --target-order 1 --max-derivs 1 --seed 7 "
        "--samples 64 --shells 8";
    CHECK(run(base).exit_code == 1);
    CHECK(run(base + " --expect unbounded").exit_code == 0);
    CHECK(run(base + " --repaired").exit_code == 0);
}

TEST_CASE("gauge scan via two-word and hyphenated forms")
{
    const std::string tail = " --algebra heisenberg --seed 5 --max-derivs 1 --samples 32 "
                             "--shells 6";
    const auto a = run("gauge scan" + tail);
    const auto b = run("gauge-scan" + tail);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("JSON output is byte-identical across runs and thread counts")
{
    const std::string cmd = "ball-volume --algebra heisenberg --radius 0.5 --radius 1 "
                            "--samples 100000 --seed 11";
    const auto r1 = run(cmd);
    const auto r2 = run(cmd);
    const auto r3 = run("--threads 1 " + cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.stdout_text == r2.stdout_text);
    CHECK(r1.stdout_text == r3.stdout_text);

    const std::string scan = "gauge scan --algebra heisenberg --seed 5 --max-derivs 2 "
                             "--samples 64 --shells 8";
    CHECK(run(scan).stdout_text == run("--threads 1 " + scan).stdout_text);
}

TEST_CASE("hardy ibp and scaling meet their thresholds through the CLI")
{
    const auto ibp = run("hardy ibp --algebra heisenberg --s 1 --annulus 0.5 "
                         "--annulus-outer 2 --tolerance 1e-6 --seed 1");
    CHECK(ibp.exit_code == 0);
    const auto scale = run("hardy scaling --algebra heisenberg --s 1 --r 1/2 "
                           "--function \"1 * bump(0.5, 2)\" --tolerance 1e-6");
    CHECK(scale.exit_code == 0);
    const auto check = run("hardy check --algebra heisenberg --s 1 --function exp-gauge");
    CHECK(check.exit_code == 0);
    CHECK(check.stdout_text.find("ratio_homogeneous") != std::string::npos);
}

TEST_CASE("hypo radial degenerates exactly on a group preset")
{
    const auto r = run("hypo radial --family engel --seed 4 --samples 64");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"exact\": true") != std::string::npos);
    CHECK(r.stdout_text.find("\"div_exact\": true") != std::string::npos);
}

TEST_CASE("csv export has the documented columns")
{
    const std::string csv_path = "/tmp/carnot_cli_scan.csv";
    run("gauge scan --algebra heisenberg --seed 5 --max-derivs 1 --samples 32 --shells 6 "
        "--csv " +
        csv_path);
    std::ifstream in(csv_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "shell_radius,gamma,sup_value");
}
