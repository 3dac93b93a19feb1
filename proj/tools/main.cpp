#include "output.hpp"

#include "cesfp/ces_families.hpp"
#include "cesfp/error.hpp"
#include "cesfp/fokker_planck.hpp"
#include "cesfp/specfun.hpp"
#include "cesfp/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cesfp;

enum ExitCode : int { kOk = 0, kFailure = 1, kParameterError = 2, kTruncation = 3, kVerificationFailed = 4 };

struct SystemOptions {
    Family family = Family::A;
    double b = 0.0;
    double beta = 0.0;
    double gamma = std::numeric_limits<double>::quiet_NaN();

    CesParams validated() const { return validate_params(family, b, beta, family == Family::B ? gamma : 0.0); }

    std::vector<std::pair<std::string, std::string>> manifest() const {
        std::vector<std::pair<std::string, std::string>> out{{"family", to_string(family)}, {"b", cli::number(b)}};
        if (family == Family::A) {
            out.emplace_back("beta", cli::number(beta));
        } else {
            out.emplace_back("gamma", cli::number(gamma));
        }
        return out;
    }
};

struct GridOptions {
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::size_t points = kContractPoints;

    Domain domain(Family f) const {
        Domain d = contract_domain(f);
        if (x_min) d.x_min = *x_min;
        if (x_max) d.x_max = *x_max;
        d.validate();
        return d;
    }

    static std::string describe(const Domain& d, std::size_t n) {
        return fmt::format("xmin={} xmax={} points={}", cli::number(d.x_min), cli::number(d.x_max), n);
    }
};

const std::map<std::string, Family> kFamilies{{"A", Family::A}, {"B", Family::B}};

void add_system_options(CLI::App* cmd, SystemOptions& s) {
    cmd->add_option("--family", s.family, "Family A (real line) or B (half line)")
        ->transform(CLI::CheckedTransformer(kFamilies, CLI::ignore_case))
        ->required();
    cmd->add_option("--b", s.b, "Perturbation parameter b")->required();
    cmd->add_option("--beta", s.beta, "Family A mixing parameter beta");
    cmd->add_option("--gamma", s.gamma, "Family B parameter gamma (required for B)");
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
    cmd->add_option("--xmin", g.x_min, "Left end of the window (default per family)");
    cmd->add_option("--xmax", g.x_max, "Right end of the window (default per family)");
    cmd->add_option("--points", g.points, "Number of grid points")->check(CLI::Range(3, 10000000));
}

std::string csv_grid(const std::string& header, const GridFunction& f) {
    std::string out = header + "\n";
    for (std::size_t i = 0; i < f.size(); ++i) out += fmt::format("{},{}\n", cli::number(f.x(i)), cli::number(f[i]));
    return out;
}

int cmd_validate(const SystemOptions& s) {
    auto line = [](const std::string& text) { std::printf("%s\n", text.c_str()); };
    if (s.family == Family::A) {
        line(fmt::format("bound b > -2: {} (b={})", s.b > -2.0 ? "pass" : "fail", cli::number(s.b)));
        if (s.b > -2.0) {
            const double bound = beta_bound(s.b);
            line(fmt::format("beta_bound: {}", cli::number(bound)));
            line(fmt::format("bound |beta| < beta_bound: {} (beta={})", std::abs(s.beta) < bound ? "pass" : "fail",
                             cli::number(s.beta)));
        }
    } else {
        line(fmt::format("bound gamma > 0: {} (gamma={})", s.gamma > 0.0 ? "pass" : "fail", cli::number(s.gamma)));
        const double limit = -4.0 * s.gamma - 2.0;
        line(fmt::format("b_bound: {}", cli::number(limit)));
        line(fmt::format("bound b > -4*gamma-2: {} (b={})", s.b > limit ? "pass" : "fail", cli::number(s.b)));
    }
    try {
        s.validated();
    } catch (const BoundViolation& e) {
        line(fmt::format("reason: {}", e.which()));
        line(fmt::format("limit: {}", cli::number(e.limit())));
        line(fmt::format("given: {}", cli::number(e.given())));
        line("status: invalid");
        return kParameterError;
    }
    line("status: valid");
    return kOk;
}

int cmd_tabulate(const std::string& kind, const SystemOptions& s, const GridOptions& g, const std::string& out) {
    const CesParams p = s.validated();
    const Domain d = g.domain(p.family);
    RealFunction f;
    if (kind == "W") {
        f = susy_potential(p).w;
    } else if (kind == "V+") {
        f = [p](double x) { return v_plus(p, x); };
    } else if (kind == "V-") {
        f = [p](double x) { return v_minus(p, x); };
    } else {
        f = [p](double x) { return drift_potential(p, x); };
    }
    cli::RunManifest m{"tabulate", s.manifest(), GridOptions::describe(d, g.points), std::nullopt};
    m.params.insert(m.params.begin(), {"kind", kind});
    cli::emit(out, m.render() + csv_grid("x,value", GridFunction::sample(d, g.points, f)));
    return kOk;
}

int cmd_spectrum(const SystemOptions& s, int count, const std::string& out) {
    const CesParams p = s.validated();
    cli::RunManifest m{"spectrum", s.manifest(), "", std::nullopt};
    m.params.emplace_back("count", std::to_string(count));
    std::string body = "n,e_minus,e_plus\n";
    for (int n = 0; n < count; ++n) {
        body += fmt::format("{},{},{}\n", n, cli::number(energy_minus(p, n)), cli::number(energy_plus(p, n)));
    }
    cli::emit(out, m.render() + body);
    return kOk;
}

int cmd_density(const SystemOptions& s, double t, double x0, double tol, const GridOptions& g,
                const std::string& out) {
    const CesParams p = s.validated();
    const Domain d = g.domain(p.family);
    if (p.family == Family::B && !(x0 > 0.0)) throw PreconditionError("density: Family B needs x0 > 0");
    const TransitionDensity td(p, t, tol);
    cli::RunManifest m{"density", s.manifest(), GridOptions::describe(d, g.points), std::nullopt};
    m.params.emplace_back("t", cli::number(t));
    m.params.emplace_back("x0", cli::number(x0));
    m.params.emplace_back("tol", cli::number(tol));
    m.params.emplace_back("truncation_n", std::to_string(td.truncation_n()));
    m.params.emplace_back("tail_bound", cli::number(td.tail_bound()));
    std::string text = m.render();
    text += csv_grid("x,m", td.on_grid(d, g.points, x0));
    cli::emit(out, text);
    return kOk;
}

int cmd_figure1(double gamma, const std::vector<double>& bs, const GridOptions& g, const std::string& out,
                const std::string& scan_out) {
    const Domain d = g.domain(Family::B);
    std::vector<CesParams> systems;
    for (double b : bs) systems.push_back(validate_params(Family::B, b, 0.0, gamma));

    std::vector<std::pair<std::string, std::string>> params{{"gamma", cli::number(gamma)}};
    std::string b_list;
    for (double b : bs) b_list += (b_list.empty() ? "" : ";") + cli::number(b);
    params.emplace_back("b", b_list);

    std::string body = "exp_neg_x,b,u\n";
    for (const CesParams& p : systems) {
        for (std::size_t i = 0; i < g.points; ++i) {
            const double x = d.x_min + static_cast<double>(i) * (d.x_max - d.x_min) / static_cast<double>(g.points - 1);
            body += fmt::format("{},{},{}\n", cli::number(std::exp(-x)), cli::number(p.b),
                                cli::number(drift_potential(p, x)));
        }
    }
    cli::emit(out, cli::RunManifest{"figure1", params, GridOptions::describe(d, g.points), std::nullopt}.render() + body);

    const std::size_t scan_points = std::max(g.points, kContractPoints);
    const std::vector<ScanRow> rows = metastability_scan(gamma, bs, d.x_max, scan_points);
    auto scan_params = params;
    const double lower = -4.0 * gamma - 2.0;
    try {
        const double b_star = metastability_crossover(gamma, lower + 1e-6, lower + 1.0, 1e-10, d.x_max, scan_points);
        scan_params.emplace_back("crossover_b", cli::number(b_star));
        std::fprintf(stderr, "crossover b* = %s\n", cli::number(b_star).c_str());
    } catch (const PreconditionError&) {
        scan_params.emplace_back("crossover_b", "none");
    }
    std::string scan = "b,class,min_location\n";
    for (const ScanRow& r : rows) {
        scan += fmt::format("{},{},{}\n", cli::number(r.b), to_string(r.shape),
                            r.min_location ? cli::number(*r.min_location) : std::string("nan"));
    }
    const cli::RunManifest sm{"figure1-scan", scan_params, GridOptions::describe(d, scan_points), std::nullopt};
    if (scan_out.empty()) {
        std::fprintf(stderr, "%s%s", sm.render().c_str(), scan.c_str());
    } else {
        cli::emit(scan_out, sm.render() + scan);
    }
    return kOk;
}

int cmd_verify(const std::string& suite_name, const std::optional<SystemOptions>& s, const verify::McOptions& mc,
               bool verbose) {
    const auto suite = verify::parse_suite(suite_name);
    verify::SuiteOptions opt;
    opt.mc = mc;
    if (s) opt.params = s->validated();
    std::printf("# seed: %llu\n", static_cast<unsigned long long>(mc.seed));
    bool all_pass = true;
    for (const auto& r : verify::run_suite(*suite, opt)) {
        std::printf("%s\n", verify::summary_line(r).c_str());
        if (verbose || !r.pass()) std::printf("%s", verify::detail_lines(r).c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass();
    }
    return all_pass ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditionally exactly solvable SUSY systems and their Fokker-Planck dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cli::kToolVersion));

    SystemOptions sys;
    GridOptions grid;
    std::string out;

    auto* validate = app.add_subcommand("validate", "Check the positivity bounds of a parameter set");
    add_system_options(validate, sys);

    std::string kind;
    auto* tabulate = app.add_subcommand("tabulate", "Tabulate W, V+, V- or U on a grid (CSV x,value)");
    tabulate->add_option("--kind", kind, "Quantity to tabulate")
        ->required()
        ->check(CLI::IsMember({"W", "V+", "V-", "U"}));
    add_system_options(tabulate, sys);
    add_grid_options(tabulate, grid);
    tabulate->add_option("--out", out, "Output file (default stdout)");

    int count = 6;
    auto* spectrum = app.add_subcommand("spectrum", "Closed-form E_n^- and E_n^+ (CSV n,e_minus,e_plus)");
    add_system_options(spectrum, sys);
    spectrum->add_option("--count", count, "Number of levels")->check(CLI::Range(1, kMaxModeIndex + 1));
    spectrum->add_option("--out", out, "Output file (default stdout)");

    double t = 1.0;
    double x0 = 0.0;
    double tol = 1e-10;
    auto* density = app.add_subcommand("density", "Spectral transition density m_t(x, x0) (CSV x,m)");
    add_system_options(density, sys);
    add_grid_options(density, grid);
    density->add_option("--t", t, "Time")->required();
    density->add_option("--x0", x0, "Starting point")->required();
    density->add_option("--tol", tol, "Truncation tolerance")->check(CLI::PositiveNumber);
    density->add_option("--out", out, "Output file (default stdout)");

    double gamma = 1.0;
    std::vector<double> b_list{-5.9, -5.7, -5.5, -5.3, -5.1};
    std::string scan_out;
    auto* figure1 = app.add_subcommand("figure1", "U versus exp(-x) for a family of b (CSV exp_neg_x,b,u)");
    figure1->add_option("--gamma", gamma, "gamma")->check(CLI::PositiveNumber);
    figure1->add_option("--b", b_list, "Values of b");
    add_grid_options(figure1, grid);
    figure1->add_option("--out", out, "Output file (default stdout)");
    figure1->add_option("--scan-out", scan_out, "Classification CSV b,class,min_location (default stderr)");

    std::string suite = "all";
    verify::McOptions mc;
    bool verbose = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run an acceptance suite");
    verify_cmd->add_option("--suite", suite, "specfun, susy, spectra, density, mc or all")
        ->check(CLI::IsMember({"specfun", "susy", "spectra", "density", "mc", "all"}));
    auto* family_opt = verify_cmd->add_option("--family", sys.family, "Restrict spectra/density to one system")
                           ->transform(CLI::CheckedTransformer(kFamilies, CLI::ignore_case));
    verify_cmd->add_option("--b", sys.b, "b")->needs(family_opt);
    verify_cmd->add_option("--beta", sys.beta, "beta");
    verify_cmd->add_option("--gamma", sys.gamma, "gamma");
    verify_cmd->add_option("--seed", mc.seed, "Monte Carlo seed");
    verify_cmd->add_option("--paths", mc.n_paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--dt", mc.dt, "Monte Carlo time step")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--threads", mc.n_threads, "Monte Carlo threads (0: all cores)");
    verify_cmd->add_flag("-v,--verbose", verbose, "Print every check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParameterError;
    }

    try {
        if (*validate) return cmd_validate(sys);
        if (*tabulate) return cmd_tabulate(kind, sys, grid, out);
        if (*spectrum) return cmd_spectrum(sys, count, out);
        if (*density) return cmd_density(sys, t, x0, tol, grid, out);
        if (*figure1) return cmd_figure1(gamma, b_list, grid, out, scan_out);
        if (*verify_cmd) {
            std::optional<SystemOptions> one;
            if (family_opt->count() > 0) one = sys;
            return cmd_verify(suite, one, mc, verbose);
        }
    } catch (const TruncationFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        std::fprintf(stderr, "smallest reachable tolerance: %s\n", cli::number(e.smallest_reachable()).c_str());
        return kTruncation;
    } catch (const BoundViolation& e) {
        std::fprintf(stderr, "error: %s\nreason: %s\n", e.what(), e.which().c_str());
        return kParameterError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kParameterError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
    return kFailure;
}
