// Behavioral tests that drive the CLI binary end to end.
// Usage: cli_tests <path-to-nibble-binary>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

#define REQUIRE(cond, msg)                                                          \
    do {                                                                            \
        if (!(cond)) {                                                              \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)   \
                      << "\n";                                                      \
            ++failures;                                                             \
        }                                                                           \
    } while (0)

std::string cli;
std::string dir;

int run(const std::string& args, const std::string& out_file = "") {
    std::string cmd = cli + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file;
    cmd += " 2> " + dir + "/stderr.txt";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <nibble-binary>\n";
        return 2;
    }
    cli = argv[1];
    char tmpl[] = "/tmp/nibble-cli-XXXXXX";
    dir = mkdtemp(tmpl);

    // gen -> color -> verify on the petersen fixture
    write_file(dir + "/spec.json",
               R"({"family":"fixture","fixture":"petersen","seed":1,"lists":{"q":60,"ell":30,"seed":2}})");
    REQUIRE(run("gen --spec " + dir + "/spec.json --out " + dir + "/pet.el --lists " + dir +
                "/pet_lists.json") == 0,
            "gen petersen");
    REQUIRE(run("color --graph " + dir + "/pet.el --lists " + dir +
                "/pet_lists.json --eps 0.1 --seed 5 --override-eta 0.1 --out " + dir +
                "/pet_col.json") == 0,
            "color petersen");
    REQUIRE(run("verify --graph " + dir + "/pet.el --coloring " + dir +
                "/pet_col.json --lists " + dir + "/pet_lists.json") == 0,
            "verify petersen");

    // a planted improper coloring is rejected with the edge named
    write_file(dir + "/bad.json", R"({"n": 10, "coloring": {"0": 1, "1": 1}})");
    REQUIRE(run("verify --graph " + dir + "/pet.el --coloring " + dir + "/bad.json") == 1,
            "verify exit 1 on improper");
    const std::string err = slurp(dir + "/stderr.txt");
    REQUIRE(err.find("(0,1)") != std::string::npos, "verify names the violating edge: " + err);

    // determinism: byte-identical outputs for the same seed
    write_file(dir + "/spec2.json",
               R"({"family":"gnp","n":150,"target_degree":10,"seed":7,"lists":{"q":90,"ell":30,"seed":8}})");
    for (int r = 1; r <= 2; ++r) {
        const std::string suffix = std::to_string(r);
        REQUIRE(run("gen --spec " + dir + "/spec2.json --out " + dir + "/g" + suffix +
                    ".el --lists " + dir + "/l" + suffix + ".json") == 0,
                "gen run " + suffix);
        REQUIRE(run("color --graph " + dir + "/g" + suffix + ".el --lists " + dir + "/l" +
                    suffix + ".json --eps 0.1 --seed 11 --override-eta 0.1 --exp2 1 --exp5 1.7" +
                    " --out " + dir + "/c" + suffix + ".json --trace " + dir + "/t" + suffix +
                    ".jsonl") == 0,
                "color run " + suffix);
    }
    REQUIRE(slurp(dir + "/g1.el") == slurp(dir + "/g2.el"), "gen byte-identical");
    REQUIRE(slurp(dir + "/l1.json") == slurp(dir + "/l2.json"), "lists byte-identical");
    REQUIRE(slurp(dir + "/c1.json") == slurp(dir + "/c2.json"), "coloring byte-identical");
    REQUIRE(slurp(dir + "/t1.jsonl") == slurp(dir + "/t2.jsonl"), "trace byte-identical");
    REQUIRE(!slurp(dir + "/t1.jsonl").empty(), "trace non-empty");

    // strict mode refuses at desk scale (exit 3); override completes
    REQUIRE(run("color --graph " + dir + "/g1.el --lists " + dir +
                "/l1.json --eps 0.1 --seed 11 --out " + dir + "/strict.json") == 3,
            "strict refusal is exit 3");

    // stats emits metrics json
    REQUIRE(run("stats --graph " + dir + "/g1.el --lists " + dir + "/l1.json --s 2",
                dir + "/stats.json") == 0,
            "stats");
    const std::string stats = slurp(dir + "/stats.json");
    REQUIRE(stats.find("max_color_degree") != std::string::npos, "stats has metrics");

    // malformed inputs give exit 2 with diagnostics
    write_file(dir + "/broken.el", "3 2\n0 1\n");
    REQUIRE(run("verify --graph " + dir + "/broken.el --coloring " + dir + "/bad.json") == 2,
            "malformed edge list is exit 2");

    // weak-vu partition path
    REQUIRE(run("color --graph " + dir + "/g1.el --zeta 1.0 --eps 0.1 --seed 3 --out " + dir +
                "/vu.json --trace " + dir + "/vu.jsonl") == 0,
            "weak-vu color");
    REQUIRE(run("verify --graph " + dir + "/g1.el --coloring " + dir + "/vu.json") == 0,
            "weak-vu verify");

    // lab gen -> lab run
    REQUIRE(run("lab gen --out " + dir + "/corpus.json --count 6 --seed 4 --max-m 8") == 0,
            "lab gen");
    REQUIRE(run("lab run --corpus " + dir + "/corpus.json --tau-grid 1:12:1",
                dir + "/lab.json") == 0,
            "lab run");
    REQUIRE(slurp(dir + "/lab.json").find("violations") != std::string::npos, "lab report");

    // sparsify csv: header plus one row per trial, deterministic modulo wall_ms
    REQUIRE(run("sparsify --graph " + dir + "/g1.el --q 40 --ell 10 --trials 5 --seed 13",
                dir + "/sp1.csv") == 0,
            "sparsify");
    REQUIRE(run("sparsify --graph " + dir + "/g1.el --q 40 --ell 10 --trials 5 --seed 13 "
                "--parallel 2",
                dir + "/sp2.csv") == 0,
            "sparsify parallel");
    auto strip_wall = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string line, out;
        while (std::getline(in, line)) {
            const auto cut = line.rfind(',');
            out += line.substr(0, cut) + "\n";
        }
        return out;
    };
    const std::string sp1 = slurp(dir + "/sp1.csv"), sp2 = slurp(dir + "/sp2.csv");
    REQUIRE(strip_wall(sp1) == strip_wall(sp2), "sparsify rows independent of scheduling");
    REQUIRE(sp1.rfind("seed,q,ell,e_prime,success,colors_used,wall_ms", 0) == 0,
            "sparsify csv header");

    if (failures == 0) std::cout << "cli_tests: all checks passed\n";
    return failures == 0 ? 0 : 1;
}
