#pragma once

#include "cesfp/ces_families.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cesfp::verify {

/// One measured quantity compared against its limit.
struct CheckResult {
    std::string name;
    double measured;
    std::string relation;  // "<=", ">", ...
    double limit;
    bool pass;
};

CheckResult at_most(std::string name, double measured, double limit);
CheckResult above(std::string name, double measured, double limit);
CheckResult within(std::string name, double measured, double lo, double hi);

struct CriterionReport {
    int id;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool pass() const noexcept;
    /// Failing checks first, then the one with the largest measured/limit ratio.
    const CheckResult* worst() const noexcept;
};

struct McOptions {
    std::size_t n_paths = 100000;
    double dt = 5e-4;
    std::uint64_t seed = 42;
    unsigned n_threads = 0;
};

CriterionReport family_a_spectrum();
CriterionReport family_b_spectrum();
CriterionReport metastability_window();
CriterionReport spectral_vs_pde();
CriterionReport ornstein_uhlenbeck_anchor();
CriterionReport susy_structure();
CriterionReport positivity_bound();
CriterionReport probability_axioms();
CriterionReport monte_carlo(const McOptions& opt = {});
CriterionReport special_functions();

/// Matrix eigenvalues of V_- against the closed-form E_n^- for one system.
std::vector<CheckResult> spectrum_checks(const CesParams& p, int count = 6);

/// Mass at t in {0.2, 1, 5, 20} and Chapman-Kolmogorov at s = t = 0.5 for one system.
std::vector<CheckResult> density_checks(const CesParams& p, double x0);

enum class Suite { Specfun, Susy, Spectra, Density, Mc, All };

std::optional<Suite> parse_suite(std::string_view name);
const char* to_string(Suite s) noexcept;

struct SuiteOptions {
    std::optional<CesParams> params;  // restricts spectra/density to one system
    McOptions mc;
};

/// Runs the criteria belonging to a suite. With `params` set, the spectra and
/// density suites check that single system instead of the full battery.
std::vector<CriterionReport> run_suite(Suite suite, const SuiteOptions& opt = {});

/// "PASS"/"FAIL" line with the worst check and the runtime.
std::string summary_line(const CriterionReport& r);

/// One indented line per check.
std::string detail_lines(const CriterionReport& r);

}  // namespace cesfp::verify
