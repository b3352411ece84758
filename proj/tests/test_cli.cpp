#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"
#include "polyrec/io.hpp"

using namespace polyrec;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(POLYREC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() /
               (std::string("polyrec_cli_") + tag + "_" + std::to_string(getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& file, const std::string& body) {
    std::ofstream out(file, std::ios::binary);
    REQUIRE(out.good());
    out << body;
}

std::string write_petersen(const TempDir& dir) {
    std::string path = dir.file("petersen.txt");
    std::ostringstream body;
    write_graph_text(body, oracle::petersen());
    spit(path, body.str());
    return path;
}

}  // namespace

TEST_CASE("cli gen accepts both spec spellings and both formats") {
    TempDir dir("gen");
    CHECK(run_cli("gen cube 3 -o " + dir.file("a.txt")).code == 0);
    CHECK(run_cli("gen 'cube(3)' -o " + dir.file("b.txt")).code == 0);
    CHECK(slurp(dir.file("a.txt")) == slurp(dir.file("b.txt")));

    PolytopeGraph got = load_graph(dir.file("a.txt"));
    PolytopeGraph want = make_cube(3);
    CHECK(got.vertex_count() == want.vertex_count());
    CHECK(got.edges() == want.edges());

    CHECK(run_cli("gen simplex 3 -o " + dir.file("k4.json")).code == 0);
    PolytopeGraph k4 = load_graph(dir.file("k4.json"));
    CHECK(k4.edges() == make_simplex(3).edges());

    RunResult to_stdout = run_cli("gen dodecahedron");
    CHECK(to_stdout.code == 0);
    std::istringstream in(to_stdout.out);
    PolytopeGraph dode = read_graph_text(in);
    CHECK(dode.vertex_count() == 20);
    CHECK(dode.edges() == make_dodecahedron().edges());
}

TEST_CASE("cli argument and input errors exit 1") {
    CHECK(run_cli("gen cube 0").code == 1);          // dimension must be positive
    CHECK(run_cli("gen polygon 2").code == 1);
    CHECK(run_cli("gen 'azulene(7)'").code == 1);    // unknown family
    CHECK(run_cli("").code == 1);                    // subcommand required
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("reconstruct /nonexistent/graph.txt").code == 1);
    CHECK(run_cli("--help").code == 0);

    TempDir dir("badinput");
    spit(dir.file("junk.txt"), "this is not a graph\n");
    CHECK(run_cli("reconstruct " + dir.file("junk.txt")).code == 1);
}

TEST_CASE("cli reconstruct certifies a cube and verify accepts the output") {
    TempDir dir("roundtrip");
    REQUIRE(run_cli("gen cube 3 -o " + dir.file("cube.txt")).code == 0);

    RunResult rec = run_cli("reconstruct " + dir.file("cube.txt") + " --out-dir " +
                            dir.file("out") + " --seed 5 --budget-secs 0");
    CHECK(rec.code == 0);
    CHECK(rec.out.find("certified: 6 walks") != std::string::npos);
    for (const char* f : {"certificate.json", "twofaces.json", "incidence.json", "lattice.json"})
        CHECK(fs::exists(dir.path / "out" / f));

    nlohmann::json lat = read_json_file(dir.file("out/lattice.json"));
    CHECK(lat["fvector"] == nlohmann::json({8, 12, 6, 1}));
    nlohmann::json cert = read_json_file(dir.file("out/certificate.json"));
    CHECK(cert["cardinality"] == 6);
    CHECK(cert["h2sum"] == 6);

    RunResult ver =
        run_cli("verify " + dir.file("cube.txt") + " " + dir.file("out/certificate.json"));
    CHECK(ver.code == 0);
    CHECK(ver.out.find("accepted") != std::string::npos);

    RunResult js = run_cli("reconstruct " + dir.file("cube.txt") + " --out-dir " +
                           dir.file("out2") + " --seed 5 --budget-secs 0 --format json");
    CHECK(js.code == 0);
    nlohmann::json summary = nlohmann::json::parse(js.out);
    CHECK(summary["certified"] == true);
    CHECK(summary["cardinality"] == 6);
    CHECK(summary["fvector"] == nlohmann::json({8, 12, 6, 1}));
}

TEST_CASE("cli verify rejects tampered certificates with exit 2") {
    TempDir dir("tamper");
    REQUIRE(run_cli("gen prism 3 -o " + dir.file("g.txt")).code == 0);
    REQUIRE(run_cli("reconstruct " + dir.file("g.txt") + " --out-dir " + dir.file("out") +
                    " --budget-secs 0")
                .code == 0);

    nlohmann::json cert = read_json_file(dir.file("out/certificate.json"));

    nlohmann::json wrong_count = cert;
    wrong_count["cardinality"] = 4;
    spit(dir.file("wrong_count.json"), wrong_count.dump());
    RunResult rc = run_cli("verify " + dir.file("g.txt") + " " + dir.file("wrong_count.json"));
    CHECK(rc.code == 2);
    CHECK(rc.out.find("rejected") != std::string::npos);

    nlohmann::json bad_walk = cert;
    bad_walk["walks"][0] = std::vector<int>{0, 1, 2};  // chord missing in a prism
    spit(dir.file("bad_walk.json"), bad_walk.dump());
    CHECK(run_cli("verify " + dir.file("g.txt") + " " + dir.file("bad_walk.json")).code == 2);

    // structurally broken JSON is an input error, not a refutation
    nlohmann::json gutted = cert;
    gutted.erase("walks");
    spit(dir.file("gutted.json"), gutted.dump());
    CHECK(run_cli("verify " + dir.file("g.txt") + " " + dir.file("gutted.json")).code == 1);

    // a certificate sized for another graph cannot even be parsed against this one
    REQUIRE(run_cli("gen cube 3 -o " + dir.file("cube.txt")).code == 0);
    REQUIRE(run_cli("reconstruct " + dir.file("cube.txt") + " --out-dir " + dir.file("cout") +
                    " --budget-secs 0")
                .code == 0);
    CHECK(run_cli("verify " + dir.file("g.txt") + " " + dir.file("cout/certificate.json")).code ==
          1);

    // same size, wrong graph: the order parses but the walks are not walks here
    REQUIRE(run_cli("gen prism 4 -o " + dir.file("p4.txt")).code == 0);
    nlohmann::json foreign = read_json_file(dir.file("cout/certificate.json"));
    foreign.erase("orientation");
    foreign.erase("sink_positions");
    spit(dir.file("foreign.json"), foreign.dump());
    RunResult fr = run_cli("verify " + dir.file("p4.txt") + " " + dir.file("foreign.json"));
    CHECK(fr.code == 2);
    CHECK(fr.out.find("rejected") != std::string::npos);
}

TEST_CASE("cli reconstruct reports the petersen gap with exit 2") {
    TempDir dir("petersen");
    std::string graph = write_petersen(dir);
    RunResult rec = run_cli("reconstruct " + graph + " --out-dir " + dir.file("out") +
                            " --exact --budget-secs 0");
    CHECK(rec.code == 2);
    CHECK(rec.out.find("uncertified") != std::string::npos);
    CHECK(fs::exists(dir.path / "out" / "gap.json"));
    CHECK_FALSE(fs::exists(dir.path / "out" / "certificate.json"));

    nlohmann::json gap = read_json_file(dir.file("out/gap.json"));
    CHECK(gap["best_cardinality"] == 6);
    CHECK(gap["best_h2sum"] == 7);
    CHECK(gap["gap"] == 1);
    CHECK(gap["stats"]["exact_primal_complete"] == true);
    CHECK(gap["stats"]["exact_dual_complete"] == true);
}

TEST_CASE("cli export-dot draws graphs, orientations and walks") {
    TempDir dir("dot");
    REQUIRE(run_cli("gen cube 3 -o " + dir.file("cube.txt")).code == 0);
    REQUIRE(run_cli("reconstruct " + dir.file("cube.txt") + " --out-dir " + dir.file("out") +
                    " --budget-secs 0")
                .code == 0);

    RunResult plain = run_cli("export-dot " + dir.file("cube.txt"));
    CHECK(plain.code == 0);
    CHECK(plain.out.find("graph") != std::string::npos);
    CHECK(plain.out.find("--") != std::string::npos);

    RunResult oriented = run_cli("export-dot " + dir.file("cube.txt") + " --orientation " +
                                 dir.file("out/certificate.json"));
    CHECK(oriented.code == 0);
    CHECK(oriented.out.find("digraph") != std::string::npos);
    CHECK(oriented.out.find("->") != std::string::npos);

    RunResult walks = run_cli("export-dot " + dir.file("cube.txt") + " --walks " +
                              dir.file("out/twofaces.json") + " -o " + dir.file("walks.dot"));
    CHECK(walks.code == 0);
    std::string dot = slurp(dir.file("walks.dot"));
    CHECK(dot.find("color") != std::string::npos);
}

TEST_CASE("cli reconstruct is reproducible for a fixed seed") {
    TempDir dir("repro");
    REQUIRE(run_cli("gen 'product(polygon(3),polygon(3))' -o " + dir.file("g.txt")).code == 0);
    std::string flags = " --seed 11 --restarts 4 --budget-secs 0";
    REQUIRE(run_cli("reconstruct " + dir.file("g.txt") + " --out-dir " + dir.file("one") + flags)
                .code == 0);
    REQUIRE(run_cli("reconstruct " + dir.file("g.txt") + " --out-dir " + dir.file("two") + flags)
                .code == 0);
    for (const char* f : {"certificate.json", "twofaces.json", "incidence.json", "lattice.json"})
        CHECK(slurp(dir.file(("one/" + std::string(f)).c_str())) ==
              slurp(dir.file(("two/" + std::string(f)).c_str())));
}
