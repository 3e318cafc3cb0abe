#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ORNSTEIN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

std::string scratch_path(const std::string& name) {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/ornstein-cli-XXXXXX";
        char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir + "/" + name;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("check-hypothesis reports the example pair") {
    RunResult res =
        run_cli("check-hypothesis --alphas \"4,0;3,2;2,4;1,6;0,8\" --lambda 2,1 --gamma 0,1");
    CHECK(res.status == 0);
    json j = json::parse(res.out);
    CHECK(j["lambda_ok"] == true);
    CHECK(j["gamma_ok"] == true);
    CHECK(j["pairings"]["lambda"] == json::array({8, 8, 8, 8, 8}));
    CHECK(j["pairings"]["gamma"] == json::array({0, 2, 4, 6, 8}));
}

TEST_CASE("check-hypothesis exits 2 when the claim fails") {
    RunResult res =
        run_cli("check-hypothesis --alphas \"4,0;3,2;2,4;1,6;0,8\" --lambda 2,1 --gamma 1,0");
    CHECK(res.status == 2);
    json j = json::parse(res.out);
    CHECK(j["gamma_ok"] == false);
}

TEST_CASE("parse errors exit 1 and help exits 0") {
    CHECK(run_cli("check-hypothesis --no-such-flag x").status == 1);
    CHECK(run_cli("").status == 1);

    RunResult help = run_cli("--help");
    CHECK(help.status == 0);
    CHECK(help.out.find("check-hypothesis") != std::string::npos);
    CHECK(help.out.find("certify") != std::string::npos);
}

TEST_CASE("search-witnesses finds the quadratic family pair") {
    RunResult res = run_cli("search-witnesses --alphas \"2,0;1,1;0,2\" --bound 4");
    CHECK(res.status == 0);
    json j = json::parse(res.out);
    CHECK(j["found"] == true);
    CHECK(j["lambda"] == json::array({1, 1}));
    CHECK(j["gamma"] == json::array({0, 1}));
    CHECK(j["report"]["lambda_ok"] == true);
}

TEST_CASE("search-witnesses exits 2 on a hopeless family") {
    RunResult res = run_cli("search-witnesses --alphas \"1,0;1,0\" --bound 3");
    CHECK(res.status == 2);
    CHECK(json::parse(res.out)["found"] == false);
}

TEST_CASE("select, build, estimate pipeline over files") {
    std::string seq_path = scratch_path("seq.json");
    RunResult sel = run_cli("select-frequencies --n 4 --out " + seq_path);
    REQUIRE(sel.status == 0);
    json seq = json::parse(slurp_file(seq_path));
    CHECK(seq["n"] == 4);
    CHECK(seq["tau"] == "1/2");
    CHECK(seq["verification"]["ok"] == true);

    std::string z_path = scratch_path("z.json");
    RunResult bld = run_cli("build-witness --seq " + seq_path + " --out " + z_path);
    REQUIRE(bld.status == 0);
    json z = json::parse(slurp_file(z_path));
    CHECK(z["terms"].size() == 80);  // 3^4 - 1

    RunResult split = run_cli("build-witness --seq " + seq_path + " --what split --l 1");
    REQUIRE(split.status == 0);
    json sp = json::parse(split.out);
    CHECK(sp["l"] == 1);
    CHECK(sp["cascade"]["oscillator"] == "sine");
    CHECK(sp["cascade"]["freqs"].size() == 4);

    RunResult coeff = run_cli("estimate-norms --poly " + z_path + " --method coeff");
    REQUIRE(coeff.status == 0);
    json ce = json::parse(coeff.out);
    CHECK(ce["method"] == "coeff-bound");
    CHECK(ce.contains("exact_upper"));

    RunResult mc = run_cli("estimate-norms --seq " + seq_path +
                           " --l 1 --method montecarlo --samples 20000 --seed 7");
    REQUIRE(mc.status == 0);
    json me = json::parse(mc.out);
    CHECK(me["method"] == "montecarlo");
    CHECK(me["samples"] == 20000);
    CHECK(me["value"].get<double>() > 0);

    CHECK(run_cli("estimate-norms --poly " + z_path + " --seq " + seq_path).status == 1);
}

TEST_CASE("lemma-growth writes json, csv and svg") {
    std::string csv_path = scratch_path("growth.csv");
    std::string svg_path = scratch_path("growth.svg");
    RunResult res = run_cli("lemma-growth --m-max 2 --method grid --oversample 1 --csv " +
                            csv_path + " --svg " + svg_path);
    REQUIRE(res.status == 0);
    json j = json::parse(res.out);
    CHECK(j["table"].size() == 2);
    CHECK(j["oscillator"] == "cosine");

    std::string csv = slurp_file(csv_path);
    CHECK(csv.rfind("m,norm,lower,upper,method\n", 0) == 0);

    std::string svg = slurp_file(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("plots need at least two rows") {
    std::string svg_path = scratch_path("short.svg");
    RunResult res =
        run_cli("lemma-growth --m-max 1 --method grid --oversample 1 --svg " + svg_path);
    CHECK(res.status == 1);
}

TEST_CASE("certify honors the verdict in its exit code") {
    std::string cert_path = scratch_path("cert.json");
    RunResult ok = run_cli("certify --n 4 --K 1/10 --samples 100000 --seed 777 --out " +
                           cert_path);
    CHECK(ok.status == 0);
    json cert = json::parse(slurp_file(cert_path));
    CHECK(cert["verdict"] == true);
    CHECK(cert["params"]["n"] == 4);
    CHECK(cert["ratio"]["denominator"].is_string());

    RunResult no = run_cli("certify --n 4 --K 2 --samples 100000 --seed 777");
    CHECK(no.status == 2);
    CHECK(json::parse(no.out)["verdict"] == false);
}

TEST_CASE("certify n-list emits the ratio table") {
    std::string table_path = scratch_path("khat.csv");
    RunResult res = run_cli("certify --n-list 4 --K 1/100 --samples 100000 --seed 777 --table " +
                            table_path);
    CHECK(res.status == 0);
    json arr = json::parse(res.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 1);

    std::string csv = slurp_file(table_path);
    CHECK(csv.rfind("n,khat,verdict\n", 0) == 0);
    CHECK(csv.find("\n4,") != std::string::npos);
}
