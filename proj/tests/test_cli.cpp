#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "tplkit_cli_test";

struct Setup {
    Setup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
};
const Setup kSetup;

std::string path(const std::string& name) { return (kDir / name).string(); }

int run(const std::string& args) {
    std::string cmd = std::string(TPLKIT_BIN) + " " + args + " > " + path("cli.log") + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> keyvals(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

void gen(const std::string& tag, const std::string& extra) {
    REQUIRE(run("gen --seed 17 --rows 3 --sites 60 " + extra + " --out-design " +
                path(tag + ".design") + " --out-lib " + path(tag + ".lib")) == 0);
}

} // namespace

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run("") == 2);
    CHECK(run("bogus") == 2);
    CHECK(run("place --design missing_lib_flag") == 2);
    CHECK(run("check --lib nope.lib --design nope.design --place nope.place") == 2);
}

TEST_CASE("cli: gen is deterministic") {
    gen("a", "--util 0.6");
    gen("b", "--util 0.6");
    CHECK(slurp(path("a.design")) == slurp(path("b.design")));
    CHECK(slurp(path("a.lib")) == slurp(path("b.lib")));
    CHECK(run("gen --util 1.5 --out-design " + path("x.design") + " --out-lib " +
              path("x.lib")) == 1);
}

TEST_CASE("cli: precolor and lut emit their formats") {
    gen("fmt", "--util 0.5");
    REQUIRE(run("precolor --lib " + path("fmt.lib") + " -o " + path("fmt.sol")) == 0);
    std::string sol = slurp(path("fmt.sol"));
    CHECK(sol.find("CELL clean_4") != std::string::npos);
    CHECK(sol.find("SOLN") != std::string::npos);

    REQUIRE(run("lut --lib " + path("fmt.lib") + " --threads 2 -o " + path("fmt.lut")) == 0);
    std::string lut = slurp(path("fmt.lut"));
    CHECK(lut.rfind("LUT d_min=10 site=8", 0) == 0);
    CHECK(lut.find("\nS ") != std::string::npos);
    CHECK(lut.find("\nE ") != std::string::npos);
}

TEST_CASE("cli: place then check is conflict-free, render draws it") {
    gen("flow", "--util 0.7");
    for (std::string engine : {"two-stage", "optimal"}) {
        std::string place = path("flow_" + engine + ".place");
        REQUIRE(run("place --engine " + engine + " --lib " + path("flow.lib") + " --design " +
                    path("flow.design") + " -o " + place) == 0);
        auto kv = keyvals(slurp(path("cli.log")));
        std::string tag = engine == "optimal" ? "optimal" : "twostage";
        CHECK(kv.at(tag + "_cn") == "0");

        REQUIRE(run("check --lib " + path("flow.lib") + " --design " + path("flow.design") +
                    " --place " + place + " -o " + path("flow.report")) == 0);
        auto rep = keyvals(slurp(path("flow.report")));
        CHECK(rep.at("conflicts") == "0");
        CHECK(rep.at("conflicts_cross_row") == "0");

        REQUIRE(run("render --lib " + path("flow.lib") + " --design " + path("flow.design") +
                    " --place " + place + " -o " + path("flow.svg")) == 0);
        CHECK(slurp(path("flow.svg")).rfind("<svg", 0) == 0);
    }
}

TEST_CASE("cli: compare emits a parseable engine table") {
    gen("cmp", "--util 0.6");
    REQUIRE(run("compare --lib " + path("cmp.lib") + " --design " + path("cmp.design") +
                " -o " + path("cmp.report")) == 0);
    auto kv = keyvals(slurp(path("cmp.report")));
    REQUIRE(kv.count("greedy_feasible"));
    CHECK(kv.at("optimal_cn") == "0");
    CHECK(kv.at("twostage_cn") == "0");
    CHECK(std::stoll(kv.at("optimal_obj")) <= std::stoll(kv.at("twostage_obj")));
    CHECK(kv.count("optimal_relax"));
    CHECK(kv.count("twostage_relax_color"));
    if (kv.at("greedy_feasible") == "1")
        CHECK(std::stoll(kv.at("greedy_st")) >= std::stoll(kv.at("twostage_st")));
}

TEST_CASE("cli: infeasible placement exits 3") {
    gen("full", "--util 0.5"); // only for the library file
    std::ofstream d(path("full.design"));
    d << "TECH 2 2 8\nROW 0 10\n";
    for (int i = 0; i < 3; ++i) d << "INST " << i << " hot_6 0 " << i << "\n";
    d << "NET 0 0 Y 1 A\n";
    d.close();
    CHECK(run("place --lib " + path("full.lib") + " --design " + path("full.design") + " -o " +
              path("full.place")) == 3);
}
