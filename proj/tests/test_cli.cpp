#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "homlab/core.hpp"
#include "homlab/json_io.hpp"
#include "homlab/power.hpp"

using nlohmann::json;
using namespace homlab;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// run the binary under test; stdout captured, stderr dropped
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("HOMLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "HOMLAB_BIN must point at the command line binary");
    const std::string cmd = "\"" + std::string(bin) + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buffer[4096];
    size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::filesystem::path& fixture_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("homlab_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_structure(const std::string& name, const Structure& s) {
    const auto path = fixture_dir() / name;
    save_structure(s, path.string());
    return path.string();
}

std::string write_text(const std::string& name, const std::string& text) {
    const auto path = fixture_dir() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}

json parse_report(const RunResult& r) {
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("hom reports existence and a checkable witness") {
    const std::string k3 = write_structure("k3.json", complete_graph(3));
    const std::string k2 = write_structure("k2.json", complete_graph(2));

    json found = parse_report(run_cli("hom " + k3 + " " + k3));
    CHECK(found["command"] == "hom");
    CHECK(found["result"]["exists"] == true);
    Homomorphism witness{complete_graph(3), complete_graph(3),
                         assignment_from_json(found["witness"])};
    CHECK(is_homomorphism(witness));

    json missing = parse_report(run_cli("hom " + k3 + " " + k2));
    CHECK(missing["result"]["exists"] == false);
    CHECK(missing["witness"].is_null());
}

TEST_CASE("reports are deterministic apart from timing") {
    const std::string c5 = write_structure("c5.json", undirected_cycle(5));
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    json first = parse_report(run_cli("hom " + c5 + " " + k2));
    json second = parse_report(run_cli("hom " + c5 + " " + k2));
    first.erase("elapsed_ms");
    second.erase("elapsed_ms");
    CHECK(first.dump() == second.dump());
}

TEST_CASE("ac prints the fixpoint domains") {
    const std::string c5 = write_structure("c5.json", undirected_cycle(5));
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    const std::string loop = write_structure("loop.json", single_loop());

    json open = parse_report(run_cli("ac " + c5 + " " + k2));
    CHECK(open["result"]["empty"] == false);
    for (const auto& [element, domain] : open["result"]["domains"].items())
        CHECK(domain.size() == 2);

    json closed = parse_report(run_cli("ac " + loop + " " + k2));
    CHECK(closed["result"]["empty"] == true);
}

TEST_CASE("width1 verdicts") {
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    const std::string loop = write_structure("loop.json", single_loop());

    CHECK(parse_report(run_cli("width1 " + k2))["result"]["width_one"] == false);

    json looped = parse_report(run_cli("width1 " + loop));
    CHECK(looped["result"]["width_one"] == true);
    CHECK(looped["witness"]["assignment"]["{0}"] == "0");
}

TEST_CASE("power materializes carriers, quotients, and artifacts") {
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    const std::string out = (fixture_dir() / "power_out.json").string();

    json built = parse_report(
        run_cli("power " + k2 + " --index-size 2 --filter-base 0,1"));
    CHECK(built["result"]["carrier_size"] == 4);
    CHECK(built["result"]["relation_sizes"]["E"] == 4);

    json quotiented = parse_report(
        run_cli("power " + k2 + " --index-size 2 --filter-base 0 --quotient --out " + out));
    CHECK(quotiented["result"]["carrier_size"] == 4);
    CHECK(quotiented["result"]["classes"] == 2);
    Structure artifact = load_structure(out);
    TolerantPower p = tolerant_power(complete_graph(2), filter_from_base(IndexSet{2}, {0}));
    CHECK(artifact == quotient_by_agreement(p).quotient);

    json generated = parse_report(
        run_cli("power " + k2 + " --index-size 3 --filter-gens \"0,1;1,2\""));
    CHECK(generated["inputs"]["filter"]["base"] == json::array({1}));
    CHECK(generated["result"]["carrier_size"] == 8);
}

TEST_CASE("power respects budgets") {
    const std::string k3 = write_structure("k3.json", complete_graph(3));
    CHECK(run_cli("power " + k3 + " --index-size 9").code == 3);
}

TEST_CASE("config overrides budgets") {
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    const std::string tight = write_text("tight.cfg", "max_power_size=3\n");
    const std::string loose =
        write_text("loose.cfg", "# comment line\nmax_power_size = 5\n");
    const std::string stray = write_text("stray.cfg", "max_powers=5\n");

    const std::string args = " " + k2 + " --index-size 2 --filter-base 0,1";
    CHECK(run_cli("--config " + tight + " power" + args).code == 3);
    CHECK(run_cli("--config " + loose + " power" + args).code == 0);
    CHECK(run_cli("--config " + stray + " power" + args).code == 2);
}

TEST_CASE("ppdef lists the defined relation") {
    const std::string path3 = write_structure("path3.json", undirected_path(3));
    const std::string c5 = write_structure("c5.json", undirected_cycle(5));

    json report = parse_report(
        run_cli("ppdef " + path3 + " " + c5 + " --x 0 --y 3 --check-clique"));
    CHECK(report["result"]["pairs"].size() == 20);
    CHECK(report["result"]["defines_clique"] == true);

    CHECK(run_cli("ppdef " + path3 + " " + c5 + " --x 9 --y 3").code == 2);
}

TEST_CASE("extract reads the ultrafilter off a coloring file") {
    TolerantPower p =
        tolerant_power(complete_graph(3), filter_from_base(IndexSet{2}, {0, 1}));
    json assignment = json::object();
    for (const auto& id : p.carrier.universe)
        assignment[id] = std::string(1, id.front());  // evaluation at coordinate 0
    const std::string hom =
        write_text("eval0.json", json{{"assignment", assignment}}.dump());

    json report = parse_report(
        run_cli("extract --n 3 --index-size 2 --filter-base 0,1 --hom " + hom));
    CHECK(report["witness"]["base"] == json::array({0}));
    for (const auto& [name, ok] : report["result"]["checks"].items()) CHECK(ok == true);

    json constant = json::object();
    for (const auto& id : p.carrier.universe) constant[id] = "0";
    const std::string broken =
        write_text("const.json", json{{"assignment", constant}}.dump());
    CHECK(run_cli("extract --n 3 --index-size 2 --filter-base 0,1 --hom " + broken).code == 2);
}

TEST_CASE("cycles subcommands") {
    json crt = parse_report(run_cli("cycles crt --p 2 --q 3"));
    CHECK(crt["witness"]["assignment"]["0"] == "(0,0)");
    CHECK(crt["witness"]["assignment"]["1"] == "(1,1)");
    CHECK(crt["witness"]["assignment"]["5"] == "(1,2)");
    CHECK(run_cli("cycles crt --p 2 --q 4").code == 2);

    json census = parse_report(run_cli("cycles census --n 3 --index-size 2 --filter-base 0"));
    CHECK(census["result"]["components"] == 1);
    CHECK(census["witness"]["components"].size() == 1);
    CHECK(census["witness"]["components"][0].size() == 3);

    json kw = parse_report(run_cli("cycles kw --p 2 --sets \"a,b;c,d\""));
    REQUIRE(kw["result"]["subsets"].size() == 2);
    CHECK(kw["result"]["subsets"][0].size() == 1);
    CHECK(kw["result"]["subsets"][1].size() == 1);
    CHECK(run_cli("cycles kw --p 3 --sets \"a,b;c,d\"").code == 2);

    json order = parse_report(run_cli("cycles orderhom --index-size 3 --filter-base 1"));
    CHECK(order["result"]["classes"] == 2);
    CHECK(order["witness"]["linear_order"].size() == 2);
    CHECK(order["witness"]["assignment"]["0,0,0"] == "0");
}

TEST_CASE("choice subcommands") {
    CHECK(parse_report(run_cli("choice gauntt --m 3 --set 2"))["result"]["holds"] == false);
    CHECK(parse_report(run_cli("choice gauntt --m 4 --set 2"))["result"]["holds"] == true);
    CHECK(parse_report(run_cli("choice primesum --m 6 --n 3"))["result"]["holds"] == true);
    CHECK(parse_report(run_cli("choice primesum --m 3 --n 2"))["result"]["holds"] == false);
}

TEST_CASE("experiment subcommands report their cases") {
    json lift = parse_report(run_cli("experiment pp-lift"));
    CHECK(lift["result"]["passed"] == true);
    for (const auto& c : lift["result"]["cases"]) CHECK(c["passed"] == true);

    json lauchli = parse_report(run_cli("experiment lauchli-roundtrip"));
    CHECK(lauchli["result"]["passed"] == true);
}

TEST_CASE("input failures exit with code 2") {
    const std::string k2 = write_structure("k2.json", complete_graph(2));
    CHECK(run_cli("hom missing.json missing.json").code == 2);
    CHECK(run_cli("hom " + write_text("garbled.json", "not json") + " " + k2).code == 2);
    CHECK(run_cli("hom " +
                  write_text("extra.json",
                             R"({"universe": ["0"], "relations": {}, "color": "red"})") +
                  " " + k2)
              .code == 2);
    CHECK(run_cli("power " + k2 + " --index-size 2 --filter-base 0 --filter-gens 1").code == 2);
    CHECK(run_cli("power " + k2 + " --index-size 2 --filter-base zero").code == 2);
    CHECK(run_cli("width1").code == 2);       // missing argument
    CHECK(run_cli("no-such-command").code == 2);
    CHECK(run_cli("--help").code == 0);
}
