#include "cesfp/fokker_planck.hpp"

#include "cesfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cesfp {

namespace {

constexpr int kStopRun = 3;
constexpr std::size_t kSupNormPoints = 1601;
constexpr int kMaxDecayModes = 50;

// Spacing of consecutive H_- eigenvalues.
double level_spacing(Family f) { return f == Family::A ? 1.0 : 2.0; }

}  // namespace

std::vector<double> mode_sup_norms(const SpectralData& s, int count) {
    const Domain d = contract_domain(s.params().family);
    const double h = (d.x_max - d.x_min) / static_cast<double>(kSupNormPoints - 1);
    std::vector<double> sup(static_cast<std::size_t>(count), 0.0);
    std::vector<double> modes(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < kSupNormPoints; ++i) {
        s.modes_minus(d.x_min + static_cast<double>(i) * h, modes);
        for (std::size_t n = 0; n < modes.size(); ++n) sup[n] = std::max(sup[n], std::abs(modes[n]));
    }
    return sup;
}

TransitionDensity::TransitionDensity(const CesParams& p, double t, double tol)
    : spectral_(p), t_(t), first_mode_(spectral_.susy_class() == SusyClass::Unbroken ? 1 : 0) {
    if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("transition density needs t > 0");
    if (!(tol > 0.0)) throw PreconditionError("transition density needs tol > 0");

    const std::vector<double> sup = mode_sup_norms(spectral_, kMaxModeIndex + 1);
    const double sup_max = *std::max_element(sup.begin() + first_mode_, sup.end());
    const double ratio = std::exp(-t * level_spacing(p.family));
    auto tail_after = [&](int n) {
        return std::exp(-t * spectral_.energy_minus(n + 1)) * sup_max * sup_max / (1.0 - ratio);
    };

    int n = first_mode_;
    int run = 0;
    for (; n <= kMaxModeIndex; ++n) {
        const double bound = std::exp(-t * spectral_.energy_minus(n)) * sup[n] * sup[n];
        run = bound < tol / 10.0 ? run + 1 : 0;
        if (run >= kStopRun) break;
    }
    n = std::min(n, kMaxModeIndex);
    while (tail_after(n) > tol && n < kMaxModeIndex) ++n;
    if (tail_after(n) > tol) throw TruncationFailure(tol, tail_after(kMaxModeIndex));

    truncation_n_ = n;
    tail_bound_ = tail_after(n);
    decay_.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) decay_[k] = std::exp(-t * spectral_.energy_minus(k));
}

TransitionDensity::Point TransitionDensity::prepare(double x, bool weighted) const {
    Point pt;
    pt.weighted.resize(static_cast<std::size_t>(truncation_n_) + 1);
    spectral_.modes_minus(x, pt.weighted);
    if (weighted) {
        for (std::size_t k = 0; k < pt.weighted.size(); ++k) pt.weighted[k] *= decay_[k];
    }
    pt.drift = drift_potential(spectral_.params(), x);
    return pt;
}

double TransitionDensity::combine(const Point& at_x, const Point& at_x0,
                                  std::span<const double> modes_x) const {
    double sum = 0.0;
    for (std::size_t k = static_cast<std::size_t>(first_mode_); k < modes_x.size(); ++k) {
        sum += modes_x[k] * at_x0.weighted[k];
    }
    double m = std::exp(at_x0.drift - at_x.drift) * sum;
    if (first_mode_ == 1) m += modes_x[0] * modes_x[0];
    return m;
}

double TransitionDensity::operator()(double x, double x0) const {
    const Point at_x0 = prepare(x0, true);
    const Point at_x = prepare(x, false);
    return combine(at_x, at_x0, at_x.weighted);
}

std::vector<double> TransitionDensity::evaluate(std::span<const double> xs, double x0) const {
    const Point at_x0 = prepare(x0, true);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const Point at_x = prepare(x, false);
        out.push_back(combine(at_x, at_x0, at_x.weighted));
    }
    return out;
}

GridFunction TransitionDensity::on_grid(const Domain& domain, std::size_t n_points, double x0) const {
    const GridFunction xs = GridFunction::sample(domain, n_points, [](double x) { return x; });
    return GridFunction(domain, evaluate(xs.values(), x0));
}

double transition_density(const CesParams& p, double t, double x, double x0, double tol) {
    return TransitionDensity(p, t, tol)(x, x0);
}

StationaryDensity::StationaryDensity(const CesParams& p) : spectral_(p) {
    if (spectral_.susy_class() != SusyClass::Unbroken) {
        throw NotStationary("broken SUSY: the drift has no stationary distribution");
    }
}

double StationaryDensity::operator()(double x) const {
    const double psi = spectral_.psi_minus(0, x);
    return psi * psi;
}

std::vector<double> StationaryDensity::cdf_on_grid(const Domain& domain, std::size_t n_points) const {
    const GridFunction rho = GridFunction::sample(domain, n_points, [this](double x) { return (*this)(x); });
    return cumulative_integral(rho.values(), rho.spacing());
}

StationaryDensity stationary_density(const CesParams& p) { return StationaryDensity(p); }

std::vector<DecayMode> decay_spectrum(const CesParams& p, int count, std::size_t n_points) {
    if (count < 0 || count > kMaxDecayModes) {
        throw PreconditionError("decay_spectrum: count must be in [0, 50]");
    }
    const int first = susy_class(p.family) == SusyClass::Unbroken ? 1 : 0;
    const Domain d = contract_domain(p.family);
    std::vector<DecayMode> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const int n = first + k;
        out.push_back({energy_minus(p, n), eigenfunction_minus(p, n, d, n_points)});
    }
    return out;
}

std::vector<double> inverted_drift_spectrum(const CesParams& p, int count) {
    if (count < 0 || count > kMaxDecayModes) {
        throw PreconditionError("inverted_drift_spectrum: count must be in [0, 50]");
    }
    std::vector<double> rates;
    for (int n = 0; n < count; ++n) rates.push_back(energy_plus(p, n));
    return rates;
}

const char* to_string(DriftShape s) noexcept {
    return s == DriftShape::Metastable ? "metastable" : "unstable";
}

namespace {

double bisect_root(const RealFunction& f, double lo, double hi) {
    double f_lo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimisation of a unimodal function on [lo, hi].
double golden_min(const RealFunction& f, double lo, double hi) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - r * (hi - lo);
    double d = lo + r * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

ScanRow classify_drift(double gamma, double b, double x_max, std::size_t n_points) {
    const CesParams p = validate_params(Family::B, b, 0.0, gamma);
    const SusyPotential sp = susy_potential(p);
    const double h = x_max / static_cast<double>(n_points - 1);

    // W -> +inf as x -> 0+ and W ~ x for large x; a local minimum of U exists
    // iff W dips below zero in between.
    std::size_t i_min = 1;
    double w_min = sp.w(h);
    for (std::size_t i = 2; i < n_points; ++i) {
        const double w = sp.w(static_cast<double>(i) * h);
        if (w < w_min) {
            w_min = w;
            i_min = i;
        }
    }
    const double lo = static_cast<double>(i_min - 1) * h;
    const double hi = static_cast<double>(std::min(i_min + 1, n_points - 1)) * h;
    const double x_star = golden_min(sp.w, std::max(lo, 0.5 * h), hi);
    w_min = std::min(w_min, sp.w(x_star));

    ScanRow row{b, DriftShape::Unstable, false, std::nullopt, std::nullopt};
    if (!(w_min < 0.0)) return row;

    const double x_neg = sp.w(x_star) < 0.0 ? x_star : static_cast<double>(i_min) * h;
    row.max_location = bisect_root(sp.w, 0.5 * h, x_neg);
    row.min_location = bisect_root(sp.w, x_neg, x_max);
    row.has_local_minimum = true;
    row.shape = DriftShape::Metastable;
    return row;
}

}  // namespace

std::vector<ScanRow> metastability_scan(double gamma, std::span<const double> b_grid, double x_max,
                                        std::size_t n_points) {
    if (!(x_max > 0.0) || n_points < 3) throw PreconditionError("metastability_scan: bad grid");
    std::vector<ScanRow> rows;
    rows.reserve(b_grid.size());
    for (double b : b_grid) rows.push_back(classify_drift(gamma, b, x_max, n_points));
    return rows;
}

double metastability_crossover(double gamma, double b_lo, double b_hi, double b_tol, double x_max,
                               std::size_t n_points) {
    auto shape = [&](double b) { return classify_drift(gamma, b, x_max, n_points).shape; };
    if (shape(b_lo) != DriftShape::Metastable || shape(b_hi) != DriftShape::Unstable) {
        throw PreconditionError("metastability_crossover: bracket [" + std::to_string(b_lo) + ", " +
                                std::to_string(b_hi) + "] does not straddle the switch");
    }
    while (b_hi - b_lo > b_tol) {
        const double mid = 0.5 * (b_lo + b_hi);
        (shape(mid) == DriftShape::Metastable ? b_lo : b_hi) = mid;
    }
    return 0.5 * (b_lo + b_hi);
}

}  // namespace cesfp
