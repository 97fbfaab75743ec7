// Drives the command-line binary end to end: exit codes, the output file
// contract, and byte-level determinism of repeated runs.
//   argv[1]  path to the sqrtn binary
//   argv[2]  scratch directory (recreated on every run)
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;
std::string cli;
fs::path scratch;

int run(const std::string& args) {
    std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long data_lines(const std::string& text) {
    long n = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

std::string strip_comments(const std::string& text) {
    std::ostringstream out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out << line << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_checks <sqrtn-binary> <scratch-dir>\n");
        return 2;
    }
    cli = argv[1];
    scratch = argv[2];
    unsetenv("SQRTN_OUT_DIR");
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    auto dir = [&](const char* name) { return (scratch / name).string(); };

    // generation contract: count line, parameter line, 1956 data rows
    expect(run("gen --t 2000 --out " + dir("g1")) == 0, "gen exits 0");
    std::string g1 = slurp(scratch / "g1" / "sequence.csv");
    expect(!g1.empty(), "gen writes sequence.csv");
    expect(g1.rfind("# T=2000 c=0 N=1956\n", 0) == 0, "sequence.csv starts with the count line");
    expect(g1.find("\n# {") != std::string::npos, "sequence.csv carries the JSON parameter line");
    expect(data_lines(g1) == 1956, "sequence.csv has 1956 data lines");
    expect(fs::exists(scratch / "g1" / "manifest.json"), "gen writes manifest.json");

    // identical invocations produce identical bytes
    expect(run("gen --t 2000 --out " + dir("g2")) == 0, "gen rerun exits 0");
    expect(g1 == slurp(scratch / "g2" / "sequence.csv"), "rerun output is byte-identical");

    // worker count changes only the recorded parameters, never the data
    expect(run("gen --t 2000 --threads 4 --out " + dir("g4")) == 0, "gen --threads 4 exits 0");
    expect(strip_comments(g1) == strip_comments(slurp(scratch / "g4" / "sequence.csv")),
           "data lines are independent of the thread count");

    // bad usage
    expect(run("gen --definitely-not-a-flag 3 --out " + dir("gx")) == 2,
           "unknown flag exits 2");
    expect(run("") == 2, "no subcommand exits 2");
    expect(run("gen --t 0 --out " + dir("gz")) == 2, "invalid parameter exits 2");
    expect(run("gen --t 100") == 2, "missing output directory exits 2");

    // the environment fallback for the output directory
    setenv("SQRTN_OUT_DIR", dir("genv").c_str(), 1);
    expect(run("gen --t 50") == 0, "gen with SQRTN_OUT_DIR exits 0");
    expect(fs::exists(scratch / "genv" / "sequence.csv"), "gen honors SQRTN_OUT_DIR");
    unsetenv("SQRTN_OUT_DIR");

    // seeded subcommands are reproducible at equal seeds, distinct otherwise
    std::string cd_args = "countdist --t 1000 --sampler random --samples 500 --seed 5 --out ";
    expect(run(cd_args + dir("c1")) == 0, "countdist exits 0");
    expect(run(cd_args + dir("c2")) == 0, "countdist rerun exits 0");
    expect(run("countdist --t 1000 --sampler random --samples 500 --seed 6 --out " + dir("c3")) ==
               0,
           "countdist with another seed exits 0");
    std::string c1 = slurp(scratch / "c1" / "countdist.csv");
    expect(c1 == slurp(scratch / "c2" / "countdist.csv"), "same seed, same countdist bytes");
    expect(strip_comments(c1) != strip_comments(slurp(scratch / "c3" / "countdist.csv")),
           "different seed, different counts");

    // smoke runs over the remaining subcommands
    expect(run("gaps --t 2000 --out " + dir("gaps")) == 0, "gaps exits 0");
    expect(run("paircorr --t 2000 --out " + dir("pc")) == 0, "paircorr exits 0");
    expect(run("moments --t 2000 --samples 500 --out " + dir("mo")) == 0, "moments exits 0");
    expect(run("lattice-sim --samples 2000 --out " + dir("ls")) == 0, "lattice-sim exits 0");
    expect(run("gauss-check --c-max 6 --n-max 9 --random 5 --out " + dir("gc")) == 0,
           "gauss-check exits 0");
    expect(run("lemma-check --out " + dir("lc")) == 0, "lemma-check exits 0");
    expect(run("escape-mass --v 1e-3 --r-sweep 2,4 --out " + dir("em")) == 0,
           "escape-mass exits 0");
    expect(data_lines(slurp(scratch / "em" / "escape_mass.csv")) == 3,
           "escape-mass writes header plus one row per cutoff");

    if (failures) {
        std::printf("%d CLI checks failed\n", failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
