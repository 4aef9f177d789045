#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
    const char* p = std::getenv("PULSEBENCH_BIN");
    return p ? p : "";
}

int run(const std::string& args) {
    const int status = std::system((binary_path() + " " + args).c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pulse_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("CLI exit codes distinguish usage from runtime errors", "[cli]") {
    if (binary_path().empty()) {
        SKIP("PULSEBENCH_BIN not set");
    }
    TempDir dir;
    const std::string out = (dir.path / "x.csv").string();

    CHECK(run("--help >/dev/null 2>&1") == 0);
    CHECK(run("definitely-not-a-command >/dev/null 2>&1") == 2);
    CHECK(run("generate --bogus-flag --out " + out + " >/dev/null 2>&1") == 2);
    // Unknown flag must not leave partial outputs behind.
    CHECK_FALSE(fs::exists(out));

    CHECK(run("features --in " + (dir.path / "missing.csv").string() +
              " --out " + out + " >/dev/null 2>&1") == 2);

    // Parameter validation failures are usage errors.
    CHECK(run("generate --base-rate -1 --out " + out + " >/dev/null 2>&1") ==
          2);

    // A malformed input file is a runtime failure.
    const std::string bad = (dir.path / "bad.csv").string();
    std::ofstream(bad) << "not,a,header\n1,2,3\n";
    CHECK(run("features --in " + bad + " --out " + out + " >/dev/null 2>&1") ==
          1);
}

TEST_CASE("CLI stage chain produces the declared artifacts", "[cli]") {
    if (binary_path().empty()) {
        SKIP("PULSEBENCH_BIN not set");
    }
    TempDir dir;
    const auto p = [&](const std::string& name) {
        return (dir.path / name).string();
    };

    // A short two-day stream keeps this fast but non-trivial.
    CHECK(run("generate --seed 7 --start 2012-07-28T00:00:00Z --end "
              "2012-07-30T00:00:00Z --base-rate 12 --out " +
              p("stream.csv") + " >/dev/null") == 0);
    CHECK(run("ingest --in " + p("stream.csv") + " --out " + p("events.csv") +
              " --rejects " + p("rejects.csv") + " >/dev/null") == 0);
    CHECK(run("features --in " + p("events.csv") + " --window-min 15 --out " +
              p("windows.csv") + " >/dev/null") == 0);
    CHECK(run("benchmark --problem trend --windows " + p("windows.csv") +
              " --out " + p("trend.csv") + " >/dev/null") == 0);
    CHECK(run("sweep --problem trend --in " + p("trend.csv") +
              " --mode sampled --samples 3 --reps 2 --seed 5 --methods NB" +
              " --out " + p("results.csv") + " >/dev/null") == 0);
    CHECK(run("report --in " + p("results.csv") + " --out-dir " +
              p("reports") + " >/dev/null") == 0);

    CHECK(fs::exists(p("windows.csv")));
    CHECK(fs::exists(p("results.csv")));
    CHECK(fs::exists(p("reports/dim_summary.csv")));
    CHECK(fs::exists(p("reports/box_summary.csv")));

    // 1 method x 3 subsets x 2 reps = 6 records + header.
    std::ifstream results(p("results.csv"));
    std::string line;
    size_t lines = 0;
    while (std::getline(results, line)) ++lines;
    CHECK(lines == 7);
}
