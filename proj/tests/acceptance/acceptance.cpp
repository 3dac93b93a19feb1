#include "cesfp/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Runs every acceptance criterion and prints one line per criterion"};
    std::vector<int> expected_failures;
    bool verbose = false;
    std::size_t n_paths = 100000;
    app.add_option("--expect-fail", expected_failures,
                   "Criteria known to fail; the exit status is 0 iff exactly these fail")
        ->check(CLI::Range(1, 10));
    app.add_option("--paths", n_paths, "Monte Carlo path count")->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", verbose, "Print every individual check");
    CLI11_PARSE(app, argc, argv);

    cesfp::verify::SuiteOptions opt;
    opt.mc.n_paths = n_paths;
    const auto reports = cesfp::verify::run_suite(cesfp::verify::Suite::All, opt);

    std::set<int> failed;
    for (const auto& r : reports) {
        std::printf("%s\n", cesfp::verify::summary_line(r).c_str());
        if (verbose || !r.pass()) std::printf("%s", cesfp::verify::detail_lines(r).c_str());
        std::fflush(stdout);
        if (!r.pass()) failed.insert(r.id);
    }
    const std::set<int> expected(expected_failures.begin(), expected_failures.end());
    std::printf("%zu/%zu criteria pass\n", reports.size() - failed.size(), reports.size());
    if (failed != expected) {
        std::printf("failing set differs from the expected set\n");
        return 1;
    }
    return 0;
}
