#include "cesfp/susy.hpp"

#include "cesfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace cesfp {

namespace {

constexpr double kTailFraction = 0.1;
constexpr double kTailTolerance = 1e-8;

std::vector<double> first_derivative(const GridFunction& f) {
    const std::size_t n = f.size();
    if (n < 5) throw PreconditionError("supercharge needs at least 5 grid points");
    const double h = f.spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[1] = (f[2] - f[0]) / (2.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

GridFunction apply_supercharge(const SusyPotential& w, const GridFunction& f, double sign) {
    if (!(f.domain() == w.domain)) throw GridMismatch("grid function and SUSY potential live on different windows");
    const std::vector<double> d = first_derivative(f);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = (sign * d[i] + w.w(f.x(i)) * f[i]) / std::numbers::sqrt2;
    }
    return GridFunction(f.domain(), std::move(out));
}

double reference_point(const Domain& d) {
    const double preferred = d.kind == DomainKind::RealLine ? 0.0 : 1.0;
    return std::clamp(preferred, d.x_min, d.x_max);
}

// log of exp(-int_{x_ref}^x W) on the grid.
std::vector<double> log_zero_mode(const SusyPotential& w, std::size_t n_points) {
    const GridFunction wg = GridFunction::sample(w.domain, n_points, w.w);
    std::vector<double> integral = cumulative_integral(wg.values(), wg.spacing());
    const double x_ref = reference_point(w.domain);
    const double pos = (x_ref - w.domain.x_min) / wg.spacing();
    const auto i0 = std::min(static_cast<std::size_t>(pos), n_points - 2);
    const double frac = pos - static_cast<double>(i0);
    const double offset = (1.0 - frac) * integral[i0] + frac * integral[i0 + 1];
    for (double& v : integral) v = -(v - offset);
    return integral;
}

}  // namespace

const char* to_string(SusyClass c) noexcept {
    return c == SusyClass::Unbroken ? "unbroken" : "broken";
}

PartnerPotentials partner_potentials(const SusyPotential& w) {
    auto wf = w.w;
    auto wp = w.w_prime;
    return {
        [wf, wp](double x) {
            const double v = wf(x);
            return 0.5 * (v * v + wp(x));
        },
        [wf, wp](double x) {
            const double v = wf(x);
            return 0.5 * (v * v - wp(x));
        },
    };
}

GridFunction apply_supercharge_a(const SusyPotential& w, const GridFunction& f) {
    return apply_supercharge(w, f, +1.0);
}

GridFunction apply_supercharge_adagger(const SusyPotential& w, const GridFunction& f) {
    return apply_supercharge(w, f, -1.0);
}

GridFunction apply_hamiltonian(const RealFunction& v, const GridFunction& f) {
    const std::size_t n = f.size();
    const double h = f.spacing();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? f[i - 1] : 0.0;
        const double right = i + 1 < n ? f[i + 1] : 0.0;
        const double lap = (left - 2.0 * f[i] + right) * inv_h2;
        out[i] = -0.5 * lap + v(f.x(i)) * f[i];
    }
    return GridFunction(f.domain(), std::move(out));
}

SusyClass classify_susy(const SusyPotential& w, std::size_t n_points) {
    w.domain.validate();
    const std::vector<double> log_psi = log_zero_mode(w, n_points);
    const double peak = *std::max_element(log_psi.begin(), log_psi.end());
    std::vector<double> density(n_points);
    for (std::size_t i = 0; i < n_points; ++i) density[i] = std::exp(2.0 * (log_psi[i] - peak));

    const double h = (w.domain.x_max - w.domain.x_min) / static_cast<double>(n_points - 1);
    const auto tail = static_cast<std::size_t>(kTailFraction * static_cast<double>(n_points - 1));
    const std::span<const double> all(density);
    const double total = simpson(all, h);
    const double left = simpson(all.first(tail + 1), h);
    const double right = simpson(all.last(tail + 1), h);

    if (std::max(left, right) < kTailTolerance * total) return SusyClass::Unbroken;

    // Mass piling up against an edge: the candidate does not decay there, so
    // it cannot be square-integrable (on the half line it fails to vanish at 0).
    const bool left_grows = left >= kTailTolerance * total && density.front() >= density[tail];
    const bool right_grows =
        right >= kTailTolerance * total && density.back() >= density[n_points - 1 - tail];
    if (left_grows || right_grows) return SusyClass::Broken;

    throw InconclusiveWindow("zero-mode candidate decays too slowly to classify on the window [" +
                             std::to_string(w.domain.x_min) + ", " + std::to_string(w.domain.x_max) +
                             "]");
}

GridFunction ground_state_unbroken(const SusyPotential& w, std::size_t n_points) {
    if (classify_susy(w, n_points) != SusyClass::Unbroken) {
        throw PreconditionError("ground_state_unbroken: SUSY is broken for this potential");
    }
    const std::vector<double> log_psi = log_zero_mode(w, n_points);
    const double peak = *std::max_element(log_psi.begin(), log_psi.end());
    std::vector<double> psi(n_points);
    std::vector<double> sq(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        psi[i] = std::exp(log_psi[i] - peak);
        sq[i] = psi[i] * psi[i];
    }
    const double h = (w.domain.x_max - w.domain.x_min) / static_cast<double>(n_points - 1);
    const double norm = std::sqrt(trapezoid(sq, h));
    for (double& v : psi) v /= norm;
    return GridFunction(w.domain, std::move(psi));
}

}  // namespace cesfp
