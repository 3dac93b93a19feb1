#include "cesfp/verify.hpp"

#include "cesfp/error.hpp"
#include "cesfp/fokker_planck.hpp"
#include "cesfp/oracles.hpp"
#include "cesfp/specfun.hpp"
#include "cesfp/susy.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace cesfp::verify {

namespace {

using Clock = std::chrono::steady_clock;
using boost::multiprecision::cpp_rational;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timed {
    CriterionReport report;
    Clock::time_point start = Clock::now();

    CriterionReport finish() {
        report.seconds = seconds_since(start);
        return std::move(report);
    }
};

std::string params_label(const CesParams& p) {
    if (p.family == Family::A) return fmt::format("A(b={:g},beta={:g})", p.b, p.beta);
    return fmt::format("B(gamma={:g},b={:g})", p.gamma, p.b);
}

struct FamilyAPoint {
    double b;
    double beta;
};

struct FamilyBPoint {
    double gamma;
    double b;
};

constexpr FamilyAPoint kFamilyAPoints[] = {{0.0, 0.0}, {-1.0, 0.3}, {-1.9, 0.0}, {2.0, -0.8}};
constexpr FamilyBPoint kFamilyBPoints[] = {{1.0, -5.5}, {1.0, -5.05}, {0.5, -3.5}, {2.0, -9.0}};

std::vector<CesParams> family_a_params() {
    std::vector<CesParams> out;
    for (const auto& [b, beta] : kFamilyAPoints) out.push_back(validate_params(Family::A, b, beta));
    return out;
}

std::vector<CesParams> family_b_params() {
    std::vector<CesParams> out;
    for (const auto& [gamma, b] : kFamilyBPoints) out.push_back(validate_params(Family::B, b, 0.0, gamma));
    return out;
}

Domain eigensolver_domain(Family f) {
    return f == Family::A ? Domain::real_line(-10.0, 10.0) : Domain::half_line(1e-4, 10.0);
}

double ou_kernel(double t, double x, double x0) {
    const double mean = x0 * std::exp(-t);
    const double var = 0.5 * (1.0 - std::exp(-2.0 * t));
    const double d = x - mean;
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// Largest |f - g| over indices [skip, n - skip).
double interior_l_inf(const GridFunction& f, const GridFunction& g, std::size_t skip) {
    double worst = 0.0;
    for (std::size_t i = skip; i + skip < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - g[i]));
    return worst;
}

double interior_max_abs(const GridFunction& f, std::size_t skip) {
    double worst = 0.0;
    for (std::size_t i = skip; i + skip < f.size(); ++i) worst = std::max(worst, std::abs(f[i]));
    return worst;
}

GridFunction normalised(const GridFunction& f) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    const double norm = std::sqrt(simpson(sq, f.spacing()));
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) v /= norm;
    return GridFunction(f.domain(), std::move(out));
}

// Flips the sign of f so that <f, ref> >= 0.
GridFunction aligned(const GridFunction& f, const GridFunction& ref) {
    double dot = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) dot += f[i] * ref[i];
    if (dot >= 0.0) return f;
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) v = -v;
    return GridFunction(f.domain(), std::move(out));
}

// Smooth bump exp(-1/(1-r^2)) supported on |x - c| < s.
RealFunction bump(double c, double s) {
    return [c, s](double x) {
        const double r = (x - c) / s;
        return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    };
}

// Ridders' extrapolated central difference with its own error estimate.
double ridders_derivative(const std::function<double(double)>& f, double x, double h0, double& best_err) {
    constexpr int kLevels = 10;
    constexpr double kShrink = 1.4;
    constexpr double kShrink2 = kShrink * kShrink;
    double table[kLevels][kLevels];
    best_err = std::numeric_limits<double>::infinity();
    double best = 0.0;
    double h = h0;
    table[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    for (int i = 1; i < kLevels; ++i) {
        h /= kShrink;
        table[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double err = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                        std::abs(table[j][i] - table[j - 1][i - 1]));
            if (err <= best_err) {
                best_err = err;
                best = table[j][i];
            }
        }
        if (std::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * best_err) break;
    }
    return best;
}

// Ridders from several starting steps, keeping the smallest error estimate.
double best_derivative(const std::function<double(double)>& f, double x, double h0) {
    double best = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    for (double factor : {1.0, 0.25, 0.0625, 0.015625}) {
        double err = 0.0;
        const double d = ridders_derivative(f, x, h0 * factor, err);
        if (err < best_err) {
            best_err = err;
            best = d;
        }
    }
    return best;
}

// Exact H_n(x) for n = 0..n_max by the three-term recurrence.
std::vector<cpp_rational> rational_hermite(int n_max, const cpp_rational& x) {
    std::vector<cpp_rational> h(static_cast<std::size_t>(n_max) + 1);
    h[0] = 1;
    if (n_max >= 1) h[1] = 2 * x;
    for (int k = 1; k < n_max; ++k) h[k + 1] = 2 * x * h[k] - 2 * k * h[k - 1];
    return h;
}

std::vector<cpp_rational> rational_laguerre(int n_max, const cpp_rational& alpha, const cpp_rational& x) {
    std::vector<cpp_rational> l(static_cast<std::size_t>(n_max) + 1);
    l[0] = 1;
    if (n_max >= 1) l[1] = 1 + alpha - x;
    for (int k = 1; k < n_max; ++k) {
        l[k + 1] = ((2 * k + 1 + alpha - x) * l[k] - (k + alpha) * l[k - 1]) / (k + 1);
    }
    return l;
}

double to_double(const cpp_rational& r) { return r.convert_to<double>(); }

// Worst |computed - exact| relative to the size of the terms that cancel in the
// recurrence up to degree n.
template <typename Exact, typename StepScale, typename Eval>
double polynomial_error(int n_max, const Exact& exact, const StepScale& step_scale, const Eval& eval) {
    double worst = 0.0;
    double scale = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        const double ref = to_double(exact[static_cast<std::size_t>(n)]);
        scale = std::max({scale, std::abs(ref), step_scale(n)});
        worst = std::max(worst, std::abs(eval(n) - ref) / scale);
    }
    return worst;
}

}  // namespace

CheckResult above(std::string name, double measured, double limit) {
    return {std::move(name), measured, ">", limit, measured > limit};
}

CheckResult at_most(std::string name, double measured, double limit) {
    return {std::move(name), measured, "<=", limit, measured <= limit};
}

CheckResult within(std::string name, double measured, double lo, double hi) {
    CheckResult r{std::move(name), measured, fmt::format("in [{:g},", lo), hi, lo <= measured && measured <= hi};
    return r;
}

bool CriterionReport::pass() const noexcept {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* CriterionReport::worst() const noexcept {
    const CheckResult* out = nullptr;
    double worst_ratio = -1.0;
    for (const CheckResult& c : checks) {
        if (!c.pass) return &c;
        const double ratio = c.relation == "<=" && c.limit > 0.0 ? c.measured / c.limit : 0.0;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            out = &c;
        }
    }
    return out;
}

std::vector<CheckResult> spectrum_checks(const CesParams& p, int count) {
    const Domain d = eigensolver_domain(p.family);
    const auto op = oracles::discretize_hamiltonian([&p](double x) { return v_minus(p, x); }, d, 4001);
    const std::vector<double> ev = oracles::lowest_eigenvalues(op, static_cast<std::size_t>(count));
    std::vector<CheckResult> out;
    for (int n = 0; n < count; ++n) {
        out.push_back(at_most(fmt::format("{} |E_{}^- - closed form|", params_label(p), n),
                              std::abs(ev[static_cast<std::size_t>(n)] - energy_minus(p, n)), 5e-4));
    }
    return out;
}

CriterionReport family_a_spectrum() {
    Timed t{{1, "Family A spectrum from the matrix eigensolver", {}}};
    for (const CesParams& p : family_a_params()) {
        for (CheckResult& c : spectrum_checks(p, 7)) t.report.checks.push_back(std::move(c));
    }
    t.report.checks.push_back(at_most("runtime [s]", seconds_since(t.start), 30.0));
    return t.finish();
}

CriterionReport family_b_spectrum() {
    Timed t{{2, "Family B spectrum from the matrix eigensolver", {}}};
    for (const CesParams& p : family_b_params()) {
        for (CheckResult& c : spectrum_checks(p, 6)) t.report.checks.push_back(std::move(c));
    }
    return t.finish();
}

CriterionReport metastability_window() {
    Timed t{{3, "Metastability window of the Family B drift (gamma = 1)", {}}};
    auto& checks = t.report.checks;

    const double b_deep = -5.95;
    const std::vector<double> deep{b_deep};
    const ScanRow row = metastability_scan(1.0, deep).front();
    checks.push_back(above("b=-5.95 metastable (1 = yes)", row.shape == DriftShape::Metastable ? 1.0 : 0.0, 0.5));
    checks.push_back(above("b=-5.95 local minimum location", row.min_location.value_or(-1.0), 0.0));

    std::vector<double> b_grid;
    for (int i = 1; i < 100; ++i) b_grid.push_back(-6.0 + 0.01 * i);
    const std::vector<ScanRow> rows = metastability_scan(1.0, b_grid);
    int flips = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) flips += rows[i].shape != rows[i - 1].shape ? 1 : 0;
    checks.push_back(at_most("classification changes along b in (-6,-5)", std::abs(flips - 1), 0.0));
    checks.push_back(above("last b in scan unstable (1 = yes)",
                           rows.back().shape == DriftShape::Unstable ? 1.0 : 0.0, 0.5));

    const double b_star = metastability_crossover(1.0, -5.99, -5.01, 1e-10);
    checks.push_back(within("crossover b*", b_star, -6.0, -5.0));

    const CesParams p = validate_params(Family::B, b_deep, 0.0, 1.0);
    checks.push_back(at_most("|E_0^- - 0.025| at b=-5.95", std::abs(decay_spectrum(p, 1, 401).front().rate - 0.025),
                             1e-12));
    return t.finish();
}

CriterionReport spectral_vs_pde() {
    Timed t{{4, "Spectral transition density against Crank-Nicolson", {}}};
    struct Case {
        CesParams p;
        double x0;
        double time;
    };
    const Case cases[] = {
        {validate_params(Family::A, -1.9, 0.0), 0.5, 2.0},
        {validate_params(Family::B, -5.5, 0.0, 1.0), 1.5, 1.0},
    };
    for (const Case& c : cases) {
        const auto t0 = Clock::now();
        const Domain d = contract_domain(c.p.family);
        const SusyPotential sp = susy_potential(c.p);
        const auto pde = oracles::crank_nicolson_evolve(sp.w, c.x0, c.time, d, kContractPoints, 1000);
        const GridFunction spectral = TransitionDensity(c.p, c.time).on_grid(d, kContractPoints, c.x0);
        const std::string label = params_label(c.p);
        t.report.checks.push_back(at_most(label + " L_inf", oracles::compare::l_inf(pde.density, spectral), 2e-3));
        t.report.checks.push_back(at_most(label + " runtime [s]", seconds_since(t0), 60.0));
    }
    return t.finish();
}

CriterionReport ornstein_uhlenbeck_anchor() {
    Timed t{{5, "Ornstein-Uhlenbeck limit (b = 0, beta = 0)", {}}};
    const CesParams p = validate_params(Family::A, 0.0, 0.0);
    std::mt19937_64 rng(20260501);
    std::uniform_real_distribution<double> time(0.3, 5.0);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double tt = time(rng);
        const double x = pos(rng);
        const double x0 = pos(rng);
        worst = std::max(worst, std::abs(transition_density(p, tt, x, x0) - ou_kernel(tt, x, x0)));
    }
    t.report.checks.push_back(at_most("max |m_t - OU kernel| over 20 points", worst, 1e-6));
    return t.finish();
}

CriterionReport susy_structure() {
    Timed t{{6, "SUSY structure: intertwining, zero mode, partner maps", {}}};
    auto& checks = t.report.checks;
    std::mt19937_64 rng(7);

    // Intertwining A H_- = H_+ A under grid refinement.
    struct Setting {
        CesParams p;
        double c_lo, c_hi, s_lo, s_hi;
    };
    const Setting settings[] = {
        {validate_params(Family::A, -1.9, 0.0), -2.0, 2.0, 1.5, 3.0},
        {validate_params(Family::B, -5.5, 0.0, 1.0), 2.5, 4.0, 1.2, 2.0},
    };
    constexpr std::size_t kGrids[] = {1001, 2001, 4001};
    constexpr std::size_t kSkip = 4;
    for (const Setting& s : settings) {
        const SusyPotential w = susy_potential(s.p);
        const PartnerPotentials v = partner_potentials(w);
        std::uniform_real_distribution<double> centre(s.c_lo, s.c_hi);
        std::uniform_real_distribution<double> width(s.s_lo, s.s_hi);
        for (int k = 0; k < 5; ++k) {
            const RealFunction f = bump(centre(rng), width(rng));
            double residual[3];
            for (std::size_t g = 0; g < 3; ++g) {
                const GridFunction fg = GridFunction::sample(w.domain, kGrids[g], f);
                const GridFunction lhs = apply_supercharge_a(w, apply_hamiltonian(v.v_minus, fg));
                const GridFunction rhs = apply_hamiltonian(v.v_plus, apply_supercharge_a(w, fg));
                residual[g] = interior_l_inf(lhs, rhs, kSkip);
            }
            for (int g = 0; g < 2; ++g) {
                checks.push_back(within(fmt::format("{} bump {} intertwining order, grids {}->{}", params_label(s.p),
                                                    k, kGrids[g], kGrids[g + 1]),
                                        std::log2(residual[g] / residual[g + 1]), 1.5, 2.5));
            }
        }
    }

    // Zero mode of Family A.
    for (const CesParams& p : family_a_params()) {
        const SusyPotential w = susy_potential(p);
        const GridFunction psi0 = ground_state_unbroken(w);
        checks.push_back(at_most(params_label(p) + " |A psi_0^-|_inf",
                                 interior_max_abs(apply_supercharge_a(w, psi0), kSuperchargeEdgePoints), 1e-6));
    }

    // A^dagger psi_n^+ / |.| against the closed-form psi^-.
    std::vector<CesParams> systems = family_a_params();
    for (const CesParams& p : family_b_params()) {
        if (p.gamma == std::floor(p.gamma)) systems.push_back(p);
    }
    for (const CesParams& p : systems) {
        const SusyPotential w = susy_potential(p);
        const Domain d = contract_domain(p.family);
        const int shift = p.family == Family::A ? 1 : 0;
        double worst = 0.0;
        for (int n = 0; n <= 5; ++n) {
            const GridFunction mapped = normalised(apply_supercharge_adagger(w, eigenfunction_plus(p, n, d)));
            const GridFunction target = eigenfunction_minus(p, n + shift, d);
            worst = std::max(worst, interior_l_inf(aligned(mapped, target), target, kSuperchargeEdgePoints));
        }
        checks.push_back(at_most(params_label(p) + " max_n<=5 |A^dag psi_n^+ - psi^-|_inf", worst, 1e-5));
    }
    return t.finish();
}

CriterionReport positivity_bound() {
    Timed t{{7, "Sharpness of the Family A positivity bound (b = 0)", {}}};
    const double bound = 2.0 / std::sqrt(std::numbers::pi);
    auto min_u = [](double beta) {
        CesParams p{Family::A, 0.0, beta, 0.0};
        const GridFunction u = GridFunction::sample(Domain::real_line(-8.0, 8.0), kContractPoints,
                                                    [&p](double x) { return u_value(p, x).u; });
        return *std::min_element(u.values().begin(), u.values().end());
    };
    t.report.checks.push_back(above("min u at beta = 0.99 bound", min_u(0.99 * bound), 0.0));
    t.report.checks.push_back(at_most("min u at beta = 1.01 bound", min_u(1.01 * bound), 0.0));
    t.report.checks.push_back(at_most("|beta_bound(0) - 2/sqrt(pi)|", std::abs(beta_bound(0.0) - bound), 1e-12));
    return t.finish();
}

std::vector<CheckResult> density_checks(const CesParams& p, double x0) {
    std::vector<CheckResult> out;
    const Domain d = contract_domain(p.family);
    const std::string label = params_label(p);
    for (double time : {0.2, 1.0, 5.0, 20.0}) {
        const GridFunction m = TransitionDensity(p, time).on_grid(d, kContractPoints, x0);
        out.push_back(at_most(fmt::format("{} |mass - 1| at t={:g}", label, time),
                              std::abs(simpson(m.values(), m.spacing()) - 1.0), 1e-5));
    }

    const TransitionDensity half(p, 0.5);
    const TransitionDensity full(p, 1.0);
    const GridFunction ys = GridFunction::sample(d, kContractPoints, [](double y) { return y; });
    std::mt19937_64 rng(11);
    const double lo = p.family == Family::A ? -2.0 : 0.5;
    const double hi = p.family == Family::A ? 2.0 : 3.0;
    std::uniform_real_distribution<double> pos(lo, hi);
    double worst = 0.0;
    std::vector<double> integrand(ys.size());
    for (int k = 0; k < 10; ++k) {
        const double x = pos(rng);
        const double start = pos(rng);
        const std::vector<double> second = half.evaluate(ys.values(), start);
        for (std::size_t i = 0; i < ys.size(); ++i) integrand[i] = half(x, ys[i]) * second[i];
        worst = std::max(worst, std::abs(simpson(integrand, ys.spacing()) - full(x, start)));
    }
    out.push_back(at_most(label + " Chapman-Kolmogorov (0.5+0.5), 10 pairs", worst, 1e-4));
    return out;
}

CriterionReport probability_axioms() {
    Timed t{{8, "Normalisation and Chapman-Kolmogorov of the transition density", {}}};
    for (const CesParams& p : family_a_params()) {
        for (CheckResult& c : density_checks(p, 0.5)) t.report.checks.push_back(std::move(c));
    }
    for (const CesParams& p : family_b_params()) {
        for (CheckResult& c : density_checks(p, 1.5)) t.report.checks.push_back(std::move(c));
    }
    return t.finish();
}

CriterionReport monte_carlo(const McOptions& opt) {
    Timed t{{9, "Langevin Monte Carlo against the stationary density", {}}};
    const CesParams p = validate_params(Family::A, -1.9, 0.0);
    const SusyPotential w = susy_potential(p);
    const oracles::TabulatedFunction drift(w.w, w.w_prime, -12.0, 12.0, 24001);
    oracles::McConfig cfg;
    cfg.n_paths = opt.n_paths;
    cfg.dt = opt.dt;
    cfg.seed = opt.seed;
    cfg.n_threads = opt.n_threads;
    const std::vector<double> samples =
        oracles::euler_maruyama_sample(drift, 0.0, 8.0, cfg, Domain::real_line(-12.0, 12.0));
    const Domain d = contract_domain(Family::A);
    const GridFunction cdf(d, stationary_density(p).cdf_on_grid(d, kContractPoints));
    const double n = static_cast<double>(cfg.n_paths);
    t.report.checks.push_back(at_most(fmt::format("KS statistic, {} paths, seed {}", cfg.n_paths, cfg.seed),
                                      oracles::compare::ks(samples, cdf), 1.63 / std::sqrt(n)));
    t.report.checks.push_back(at_most("runtime [s]", seconds_since(t.start), 120.0));
    return t.finish();
}

CriterionReport special_functions() {
    Timed t{{10, "Special-function battery", {}}};
    auto& checks = t.report.checks;
    std::mt19937_64 rng(1729);
    std::uniform_real_distribution<double> a_dist(-50.0, 50.0);
    std::uniform_real_distribution<double> b_dist(0.0, 50.0);
    std::uniform_real_distribution<double> z_wide(-100.0, 100.0);
    std::uniform_real_distribution<double> z_narrow(-10.0, 10.0);
    auto draw_b = [&] {
        double b = 0.0;
        while (b == 0.0) b = b_dist(rng);
        return b;
    };

    constexpr int kPoints = 10000;
    double kummer_worst = 0.0;
    int kummer_errors = 0;
    for (int i = 0; i < kPoints; ++i) {
        const double a = a_dist(rng);
        const double b = draw_b();
        const double z = z_wide(rng);
        try {
            const double lhs = specfun::hyp1f1(a, b, z);
            const double rhs = std::exp(z) * specfun::hyp1f1(b - a, b, -z);
            kummer_worst = std::max(kummer_worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        } catch (const Error&) {
            ++kummer_errors;
        }
    }
    checks.push_back(at_most("Kummer identity, worst scaled residual", kummer_worst, 1e-10));
    checks.push_back(at_most("Kummer identity, evaluation errors", kummer_errors, 0.0));

    double deriv_worst = 0.0;
    int deriv_errors = 0;
    for (int i = 0; i < kPoints; ++i) {
        const double a = a_dist(rng);
        const double b = draw_b();
        const double z = z_narrow(rng);
        try {
            const double step = 0.5 * std::min(1.0, b / (1.0 + std::abs(a)));
            const double fd = best_derivative([a, b](double s) { return specfun::hyp1f1(a, b, s); }, z, step);
            const double exact = specfun::hyp1f1_z_derivative(a, b, z);
            const double scale = std::max({1.0, std::abs(exact), std::abs(specfun::hyp1f1(a, b, z))});
            deriv_worst = std::max(deriv_worst, std::abs(fd - exact) / scale);
        } catch (const Error&) {
            ++deriv_errors;
        }
    }
    checks.push_back(at_most("derivative relation, worst scaled residual", deriv_worst, 1e-7));
    checks.push_back(at_most("derivative relation, evaluation errors", deriv_errors, 0.0));

    constexpr int kMaxDegree = 50;
    double hermite_worst = 0.0;
    for (int k = -20; k <= 20; ++k) {
        const cpp_rational x(k, 4);
        const double xd = 0.25 * k;
        const auto exact = rational_hermite(kMaxDegree, x);
        auto step = [&](int n) {
            return n < 2 ? 0.0
                         : std::abs(to_double(2 * x * exact[n - 1])) + std::abs(to_double(2 * (n - 1) * exact[n - 2]));
        };
        hermite_worst = std::max(hermite_worst, polynomial_error(kMaxDegree, exact, step,
                                                                 [xd](int n) { return specfun::hermite_h(n, xd); }));
    }
    checks.push_back(at_most("Hermite n<=50 vs exact rational recurrence", hermite_worst, 1e-13));

    double laguerre_worst = 0.0;
    const cpp_rational alphas[] = {cpp_rational(-1, 2), cpp_rational(0), cpp_rational(1, 2), cpp_rational(5, 2),
                                   cpp_rational(29, 4)};
    for (const cpp_rational& alpha : alphas) {
        const double alpha_d = to_double(alpha);
        for (int k = 0; k <= 80; ++k) {
            const cpp_rational x(k, 4);
            const double xd = 0.25 * k;
            const auto exact = rational_laguerre(kMaxDegree, alpha, x);
            auto step = [&](int n) {
                if (n < 2) return 0.0;
                return (std::abs(to_double((2 * (n - 1) + 1 + alpha - x) * exact[n - 1])) +
                        std::abs(to_double((n - 1 + alpha) * exact[n - 2]))) /
                       n;
            };
            laguerre_worst = std::max(
                laguerre_worst, polynomial_error(kMaxDegree, exact, step,
                                                 [&](int n) { return specfun::laguerre_l(n, alpha_d, xd); }));
        }
    }
    checks.push_back(at_most("Laguerre n<=50 vs exact rational recurrence", laguerre_worst, 1e-13));

    checks.push_back(at_most("|ln_gamma(1)|", std::abs(specfun::ln_gamma(1.0)), 1e-12));
    checks.push_back(at_most("|ln_gamma(1/2) - log sqrt(pi)|",
                             std::abs(specfun::ln_gamma(0.5) - 0.5 * std::log(std::numbers::pi)), 1e-12));
    double recurrence = 0.0;
    for (double x = 0.1; x <= 50.0; x += 0.05) {
        recurrence = std::max(recurrence,
                              std::abs(specfun::ln_gamma(x + 1.0) - specfun::ln_gamma(x) - std::log(x)));
    }
    checks.push_back(at_most("ln_gamma(x+1) - ln_gamma(x) - ln x on [0.1, 50]", recurrence, 1e-12));
    return t.finish();
}

std::optional<Suite> parse_suite(std::string_view name) {
    if (name == "specfun") return Suite::Specfun;
    if (name == "susy") return Suite::Susy;
    if (name == "spectra") return Suite::Spectra;
    if (name == "density") return Suite::Density;
    if (name == "mc") return Suite::Mc;
    if (name == "all") return Suite::All;
    return std::nullopt;
}

const char* to_string(Suite s) noexcept {
    switch (s) {
        case Suite::Specfun: return "specfun";
        case Suite::Susy: return "susy";
        case Suite::Spectra: return "spectra";
        case Suite::Density: return "density";
        case Suite::Mc: return "mc";
        case Suite::All: return "all";
    }
    return "?";
}

std::vector<CriterionReport> run_suite(Suite suite, const SuiteOptions& opt) {
    std::vector<CriterionReport> out;
    const bool all = suite == Suite::All;
    if (suite == Suite::Spectra && opt.params) {
        const auto t0 = Clock::now();
        out.push_back({0, "Spectrum of " + params_label(*opt.params), spectrum_checks(*opt.params), 0.0});
        out.back().seconds = seconds_since(t0);
        return out;
    }
    if (suite == Suite::Density && opt.params) {
        const auto t0 = Clock::now();
        const double x0 = opt.params->family == Family::A ? 0.5 : 1.5;
        out.push_back({0, "Probability axioms of " + params_label(*opt.params), density_checks(*opt.params, x0), 0.0});
        out.back().seconds = seconds_since(t0);
        return out;
    }
    if (all || suite == Suite::Spectra) {
        out.push_back(family_a_spectrum());
        out.push_back(family_b_spectrum());
        out.push_back(metastability_window());
    }
    if (all || suite == Suite::Density) {
        out.push_back(spectral_vs_pde());
        out.push_back(ornstein_uhlenbeck_anchor());
    }
    if (all || suite == Suite::Susy) {
        out.push_back(susy_structure());
        out.push_back(positivity_bound());
    }
    if (all || suite == Suite::Density) out.push_back(probability_axioms());
    if (all || suite == Suite::Mc) out.push_back(monte_carlo(opt.mc));
    if (all || suite == Suite::Specfun) out.push_back(special_functions());
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.id < r.id; });
    return out;
}

namespace {

std::string describe(const CheckResult& c) {
    if (c.relation.starts_with("in ")) {
        return fmt::format("{} = {:.4g} {} {:g}]", c.name, c.measured, c.relation, c.limit);
    }
    return fmt::format("{} = {:.4g} {} {:.4g}", c.name, c.measured, c.relation, c.limit);
}

}  // namespace

std::string summary_line(const CriterionReport& r) {
    const CheckResult* w = r.worst();
    std::string line = r.id > 0 ? fmt::format("criterion {:>2}: {}  {}", r.id, r.pass() ? "PASS" : "FAIL", r.title)
                                : fmt::format("{}  {}", r.pass() ? "PASS" : "FAIL", r.title);
    const auto failed = std::count_if(r.checks.begin(), r.checks.end(), [](const auto& c) { return !c.pass; });
    line += fmt::format(" | {}/{} checks", r.checks.size() - static_cast<std::size_t>(failed), r.checks.size());
    if (w != nullptr) line += fmt::format(" | {}: {}", w->pass ? "tightest" : "failed", describe(*w));
    line += fmt::format(" | {:.2f} s", r.seconds);
    return line;
}

std::string detail_lines(const CriterionReport& r) {
    std::string out;
    for (const CheckResult& c : r.checks) out += fmt::format("    [{}] {}\n", c.pass ? "pass" : "FAIL", describe(c));
    return out;
}

}  // namespace cesfp::verify
