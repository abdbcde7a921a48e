#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace {

const std::string kCli = CAUSALABS_CLI_PATH;
const std::string kData = CAUSALABS_DATA_DIR;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string outfile = "cli_test_stdout.tmp";
    const std::string cmd = kCli + " " + args + " > " + outfile + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.status = WEXITSTATUS(rc);
    std::ifstream in(outfile);
    std::ostringstream os;
    os << in.rdbuf();
    res.out = os.str();
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("cli validate") {
    SUBCASE("valid bundle exits 0 with an empty report") {
        const auto r = run("validate --base " + kData + "/fig1a.json --high " + kData +
                           "/fig1b.json --abs " + kData + "/fig1_abstraction.json");
        CHECK(r.status == 0);
        CHECK(r.out.empty());
    }
    SUBCASE("non-stochastic column exits 1 naming the column") {
        std::ofstream bad("cli_bad_model.json");
        bad << R"({"variables":[{"name":"A","outcomes":["0","1"]}],"edges":[],
                   "mechanisms":{"A":{"parents":[],"matrix":[[0.5],[0.4]]}}})";
        bad.close();
        const auto r = run("validate --base cli_bad_model.json");
        CHECK(r.status == 1);
        CHECK(r.out.find("column not stochastic") != std::string::npos);
    }
    SUBCASE("missing file exits 2") {
        const auto r = run("validate --base no_such_file.json");
        CHECK(r.status == 2);
    }
}

TEST_CASE("cli evaluate") {
    SUBCASE("published chain-to-pair number") {
        const auto r = run("evaluate --base " + kData + "/fig1a.json --high " + kData +
                           "/fig1b.json --abs " + kData +
                           "/fig1_abstraction.json --measure ic --assessment causal");
        CHECK(r.status == 0);
        CHECK(r.out.find("measure,x_set,y_set,error,overall") != std::string::npos);
        CHECK(r.out.find("ic,overall,,,0.385226") != std::string::npos);
    }
    SUBCASE("identity setup reports zero") {
        std::ofstream abs("cli_identity_abs.json");
        abs << R"({"relevant":["Sm'","Hea'"],"map":{"Sm'":"Sm'","Hea'":"Hea'"},
                   "alphas":{"Sm'":{"matrix":[[1,0],[0,1]]},
                              "Hea'":{"matrix":[[1,0],[0,1]]}}})";
        abs.close();
        const auto r = run("evaluate --base " + kData + "/fig1b.json --high " + kData +
                           "/fig1b.json --abs cli_identity_abs.json --measure ic "
                           "--assessment causal");
        CHECK(r.status == 0);
        CHECK(r.out.find("ic,overall,,,0.000000") != std::string::npos);
    }
    SUBCASE("order-violating abstraction answers inf with exit 0") {
        std::ofstream rev("cli_rev_model.json");
        rev << R"({"variables":[{"name":"A'","outcomes":["0","1"]},
                                {"name":"B'","outcomes":["0","1"]}],
                   "edges":[["B'","A'"]],
                   "mechanisms":{"B'":{"parents":[],"matrix":[[0.5],[0.5]]},
                                  "A'":{"parents":["B'"],"matrix":[[0.5,0.5],[0.5,0.5]]}}})";
        rev.close();
        std::ofstream abs("cli_rev_abs.json");
        abs << R"({"relevant":["Sm","LC"],"map":{"Sm":"A'","LC":"B'"},
                   "alphas":{"A'":{"matrix":[[1,0],[0,1]]},
                              "B'":{"matrix":[[1,0],[0,1]]}}})";
        abs.close();
        std::ofstream pairs("cli_rev_pairs.json");
        pairs << R"({"pairs":[[["A'"],["B'"]]]})";
        pairs.close();
        const auto r = run("evaluate --base " + kData +
                           "/fig1a.json --high cli_rev_model.json --abs cli_rev_abs.json "
                           "--measure ic --assessment custom --pairs cli_rev_pairs.json");
        CHECK(r.status == 0);
        CHECK(r.out.find("ic,overall,,,inf") != std::string::npos);
    }
}

TEST_CASE("cli learn on the small public files") {
    // learn the missing alphas of the chain-to-pair abstraction
    std::ofstream abs("cli_partial_abs.json");
    abs << R"({"relevant":["Sm","LC"],"map":{"Sm":"Sm'","LC":"Hea'"},"alphas":{}})";
    abs.close();
    const auto r = run("learn --base " + kData + "/fig1a.json --high " + kData +
                       "/fig1b.json --abs cli_partial_abs.json --measure ic "
                       "--assessment causal --out cli_rank.csv --out-abs cli_best.json");
    CHECK(r.status == 0);
    const std::string csv = slurp("cli_rank.csv");
    CHECK(csv.find("rank,candidate,error,selection") != std::string::npos);
    CHECK(!slurp("cli_best.json").empty());

    SUBCASE("empty candidate space exits 1") {
        // alpha slot exists but the high domain exceeds the low domain
        std::ofstream big("cli_big_high.json");
        big << R"({"variables":[{"name":"Sm'","outcomes":["0","1","2"]},
                                {"name":"Hea'","outcomes":["0","1"]}],
                   "edges":[["Sm'","Hea'"]],
                   "mechanisms":{"Sm'":{"parents":[],"matrix":[[0.3],[0.3],[0.4]]},
                                  "Hea'":{"parents":["Sm'"],
                                          "matrix":[[0.4,0.2,0.1],[0.6,0.8,0.9]]}}})";
        big.close();
        const auto r2 = run("learn --base " + kData +
                            "/fig1a.json --high cli_big_high.json --abs cli_partial_abs.json "
                            "--measure ic --assessment causal");
        CHECK(r2.status == 1);
    }
}

TEST_CASE("cli sample determinism") {
    std::ofstream q("cli_queries.json");
    q << R"({"queries":[
         {"kind":"base","do":{"Sm":"0"},"target":{"var":"LC","value":"1"}},
         {"kind":"base","do":{},"target":{"var":"Tar","value":"1"}}]})";
    q.close();
    const std::string args = "sample --base " + kData +
                             "/fig1a.json --queries cli_queries.json --n 2000 --reps 3 --seed 5";
    const auto a = run(args + " --out cli_sample_a.csv");
    const auto b = run(args + " --out cli_sample_b.csv");
    CHECK(a.status == 0);
    CHECK(b.status == 0);
    const std::string ca = slurp("cli_sample_a.csv");
    CHECK(ca == slurp("cli_sample_b.csv"));
    CHECK(ca.find("kind,do,target,n,reps,seed,rng,status,mean,std") != std::string::npos);
    CHECK(ca.find("mt19937_64-icdf53") != std::string::npos);

    SUBCASE("point-mass query has zero std") {
        std::ofstream q2("cli_queries2.json");
        q2 << R"({"queries":[
             {"kind":"base","do":{"Sm":"1"},"target":{"var":"Sm","value":"1"}}]})";
        q2.close();
        const auto r = run("sample --base " + kData +
                           "/fig1a.json --queries cli_queries2.json --n 500 --reps 4 --seed 1");
        CHECK(r.status == 0);
        CHECK(r.out.find(",ok,1.000000,0.000000") != std::string::npos);
    }
}
