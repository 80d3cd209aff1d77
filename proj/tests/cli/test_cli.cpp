// End-to-end checks of the command-line tool: real subprocess invocations,
// output files compared byte for byte where determinism is promised.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pathsched-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run(const std::string& args, const std::string& out_file = "/dev/null",
        const std::string& err_file = "/dev/null") {
    std::string cmd = std::string(CLI_BIN) + " " + args + " >" + out_file + " 2>" + err_file;
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const char* kWorkedInstance = R"({"graph": {"path": 6}, "starts": [1, 6],
                                  "tasks": [[2, 1], [3, 1], [5, 1]]})";

std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.find("_ms") == std::string::npos) {
            auto cut = line.rfind(',');
            cut = line.rfind(',', cut - 1);
            line = line.substr(0, cut);
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("partition subcommand") {
    TempDir dir;
    write_file(dir.file("inst.json"), kWorkedInstance);

    int code = run("partition --input " + dir.file("inst.json") + " --output " +
                       dir.file("out.json") + " --traces " + dir.file("traces.csv"),
                   dir.file("stdout.txt"), dir.file("stderr.txt"));
    CHECK(code == 0);

    std::string out = slurp(dir.file("out.json"));
    CHECK(out.find("\"dp_value\": 4") != std::string::npos);
    CHECK(out.find("\"executed_makespan\": 4") != std::string::npos);
    CHECK(out.find("\"validator\": \"collision-free\"") != std::string::npos);
    CHECK(out.find("\"tool_version\"") != std::string::npos);
    CHECK(out.find("\"input_digest\"") != std::string::npos);

    std::string traces = slurp(dir.file("traces.csv"));
    CHECK(traces.find("timestep,robot,vertex") != std::string::npos);
}

TEST_CASE("exact subcommand and exit codes") {
    TempDir dir;
    write_file(dir.file("inst.json"), kWorkedInstance);

    CHECK(run("exact --input " + dir.file("inst.json") + " --output " + dir.file("out.json")) == 0);
    std::string out = slurp(dir.file("out.json"));
    CHECK(out.find("\"makespan\": 4") != std::string::npos);
    CHECK(out.find("\"states_expanded\"") != std::string::npos);

    // Unknown subcommand -> usage code.
    CHECK(run("frobnicate") == 2);
    // Unreadable input file.
    CHECK(run("exact --input " + dir.file("missing.json")) == 3);
    // Invalid instance -> schema code with a machine-readable report.
    write_file(dir.file("bad.json"), R"({"graph": {"path": 4}, "starts": [2, 2], "tasks": []})");
    CHECK(run("exact --input " + dir.file("bad.json"), "/dev/null", dir.file("err.json")) == 4);
    CHECK(slurp(dir.file("err.json")).find("duplicate start") != std::string::npos);
    // Exhausted state budget.
    CHECK(run("exact --budget-states 5 --input " + dir.file("inst.json")) == 5);
    // A lone robot with far-apart tasks can exceed the default horizon bound.
    write_file(dir.file("tight.json"), R"({"graph": {"path": 6}, "starts": [3],
                                           "tasks": [[1, 1], [6, 3]]})");
    CHECK(run("exact --input " + dir.file("tight.json")) == 6);
    CHECK(run("exact --horizon 11 --input " + dir.file("tight.json")) == 0);
}

TEST_CASE("ilp emit and check") {
    TempDir dir;
    write_file(dir.file("toy.json"), R"({"graph": {"path": 2}, "starts": [1], "tasks": [[2, 1]]})");

    CHECK(run("ilp emit --input " + dir.file("toy.json") + " --output " + dir.file("model.lp")) == 0);
    std::string lp = slurp(dir.file("model.lp"));
    CHECK(lp.find("Maximize") != std::string::npos);
    CHECK(lp.find("onepos_1_1:") != std::string::npos);
    CHECK(lp.find("Binary") != std::string::npos);

    // A hand-written optimal solution: move to the task, work one step.
    write_file(dir.file("sol.txt"),
               "x_1_1_1 1\nm_1_1_1 1\nx_1_2_2 1\nm_1_2_2 1\nx_1_2_3 1\n"
               "TCR_1_1_3 1\nTC_1_3 1\nAC_3 1\n");
    CHECK(run("ilp check --input " + dir.file("toy.json") + " --solution " + dir.file("sol.txt") +
                  " --output " + dir.file("verdict.json")) == 0);
    std::string verdict = slurp(dir.file("verdict.json"));
    CHECK(verdict.find("\"satisfied\": true") != std::string::npos);
    CHECK(verdict.find("\"makespan\": 2") != std::string::npos);

    // Premature completion claim: the checker pinpoints the family.
    write_file(dir.file("bad.txt"),
               "x_1_1_1 1\nm_1_1_1 1\nx_1_2_2 1\nm_1_2_2 1\nx_1_2_3 1\n"
               "TCR_1_1_2 1\nTC_1_2 1\nAC_2 1\nTCR_1_1_3 1\nTC_1_3 1\nAC_3 1\n");
    CHECK(run("ilp check --input " + dir.file("toy.json") + " --solution " + dir.file("bad.txt") +
                  " --output " + dir.file("verdict2.json")) == 4);
    CHECK(slurp(dir.file("verdict2.json")).find("tcrwin") != std::string::npos);

    CHECK(run("ilp emit --variant appendix --input " + dir.file("toy.json") + " --output " +
              dir.file("appendix.lp")) == 0);
    CHECK(slurp(dir.file("appendix.lp")).find("Minimize") != std::string::npos);
}

TEST_CASE("connectivity subcommands") {
    TempDir dir;
    write_file(dir.file("star.json"),
               R"({"graph": {"n": 4, "edges": [[1,2],[1,3],[1,4]]}, "starts": [1], "tasks": []})");

    CHECK(run("path-exists --terminals 2,3,4 --input " + dir.file("star.json") + " --output " +
              dir.file("pe.json")) == 0);
    CHECK(slurp(dir.file("pe.json")).find("\"exists\": false") != std::string::npos);

    CHECK(run("shortest-walk --terminals 2,3,4 --input " + dir.file("star.json") + " --output " +
              dir.file("sw.json")) == 0);
    CHECK(slurp(dir.file("sw.json")).find("\"length\": 4") != std::string::npos);
}

TEST_CASE("lattice solve") {
    TempDir dir;
    write_file(dir.file("grid.json"), R"({"graph": {"lattice": [3, 3]}, "starts": [7, 9],
                                          "tasks": [[4, 2], [5, 5], [2, 3]]})");
    CHECK(run("lattice solve --input " + dir.file("grid.json") + " --output " +
              dir.file("out.json")) == 0);
    std::string out = slurp(dir.file("out.json"));
    CHECK(out.find("\"validator\": \"collision-free\"") != std::string::npos);
    CHECK(out.find("\"orientation\"") != std::string::npos);
}

TEST_CASE("bench run and byte determinism") {
    TempDir dir;
    write_file(dir.file("config.json"),
               R"({"family": "path", "n": [5, 5], "k": [2, 2], "m": [2, 2],
                   "duration": {"model": "random", "value": 3},
                   "samples": 5, "seed": 11})");

    std::string a = dir.file("a.csv"), b = dir.file("b.csv");
    CHECK(run("bench run --input " + dir.file("config.json") + " --output " + a + " --summary " +
              dir.file("a.summary.json")) == 0);
    CHECK(run("bench run --input " + dir.file("config.json") + " --output " + b + " --summary " +
              dir.file("b.summary.json")) == 0);
    CHECK(strip_timing(slurp(a)) == strip_timing(slurp(b)));
    CHECK(slurp(dir.file("a.summary.json")) == slurp(dir.file("b.summary.json")));

    CHECK(run("bench runtime --input " + dir.file("config.json") + " --output " +
              dir.file("rt.csv")) == 0);
    CHECK(slurp(dir.file("rt.csv")).find("m,sample") != std::string::npos);
}

TEST_CASE("solver outputs are byte-identical across reruns") {
    TempDir dir;
    write_file(dir.file("inst.json"), kWorkedInstance);
    for (const std::string& sub : {std::string("partition"), std::string("exact")}) {
        std::string a = dir.file(sub + "-a.json"), b = dir.file(sub + "-b.json");
        CHECK(run(sub + " --input " + dir.file("inst.json") + " --output " + a) == 0);
        CHECK(run(sub + " --input " + dir.file("inst.json") + " --output " + b) == 0);
        CHECK(slurp(a) == slurp(b));
    }
}
