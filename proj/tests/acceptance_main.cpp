// Acceptance gate: runs the twelve verification suites and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.
// An optional --cli <path> argument enables the external-process
// determinism check (same seed, different CAMPANATO_THREADS caps).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "campanato/verify.hpp"

namespace {

struct CriterionRow {
    int number;
    std::string title;
    std::string suite;
};

const std::vector<CriterionRow> kCriteria{
    {1, "projection exactness", "projection"},
    {2, "analytic oscillation values", "osc_values"},
    {3, "Hoelder / reverse Hoelder", "holder"},
    {4, "space collapses", "collapse"},
    {5, "oscillation sandwich constants", "sandwich"},
    {6, "second-difference analytics", "second_diff"},
    {7, "key-estimate scaling", "key_estimate"},
    {8, "cross-space vanishing agreement", "theorem1"},
    {9, "commutator analytics", "commutator_values"},
    {10, "commutator tail decay", "tail_decay"},
    {11, "convolution range", "convolution_range"},
    {12, "determinism under thread caps", "determinism"},
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Re-runs the verify binary under two thread caps and compares the CSV
// evidence byte for byte.
bool external_determinism(const std::string& cli) {
    std::string out1 = "/tmp/campanato_det_1.csv";
    std::string out4 = "/tmp/campanato_det_4.csv";
    std::string log = "/tmp/campanato_det.log";
    auto run = [&](int cap, const std::string& out) {
        std::ostringstream cmd;
        cmd << "CAMPANATO_THREADS=" << cap << " " << cli
            << " verify --suite determinism --seed 7 --out " << out << " >> " << log
            << " 2>&1";
        return std::system(cmd.str().c_str()) == 0;
    };
    std::remove(log.c_str());
    if (!run(1, out1) || !run(4, out4)) return false;
    std::string a = read_file(out1), b = read_file(out4);
    return !a.empty() && a == b;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::uint64_t seed = 7;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
        if (arg == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
    }

    int failures = 0;
    for (const auto& row : kCriteria) {
        campanato::SuiteResult sr = campanato::run_suite(row.suite, seed);
        bool pass = sr.pass();
        if (row.number == 12 && !cli.empty()) pass = pass && external_determinism(cli);
        std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", row.number,
                    row.title.c_str());
        for (const auto& c : sr.checks)
            if (!c.pass)
                std::printf("         failed check: %s — %s\n", c.name.c_str(),
                            c.detail.c_str());
        if (!pass) ++failures;
    }
    if (failures > 0)
        std::printf("%d of %zu criteria failed\n", failures, kCriteria.size());
    else
        std::printf("all %zu criteria passed\n", kCriteria.size());
    return failures == 0 ? 0 : 1;
}
