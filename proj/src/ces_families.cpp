#include "cesfp/ces_families.hpp"

#include "cesfp/error.hpp"
#include "cesfp/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cesfp {

namespace sf = specfun;

namespace {

constexpr int kMaxGridModeIndex = 50;

void require_positive_x(const CesParams& p, double x) {
    if (p.family == Family::B && !(x > 0.0)) {
        throw DomainError("Family B lives on the half line; got x = " + std::to_string(x));
    }
}

void require_mode_index(int n, int cap) {
    if (n < 0 || n > cap) {
        throw DomainError("mode index " + std::to_string(n) + " outside [0, " + std::to_string(cap) + "]");
    }
}

// Family B: u = e^{-x^2} 1F1(a', c; x^2) with a' = gamma + (b+2)/4, c = gamma + 1/2.
struct KummerParts {
    double g;       // 1F1(a', c; x^2)
    double g_prime; // d/dy 1F1(a', c; y) at y = x^2
};

KummerParts family_b_kummer(const CesParams& p, double x) {
    const double a = p.gamma + (p.b + 2.0) / 4.0;
    const double c = p.gamma + 0.5;
    const double y = x * x;
    return {sf::hyp1f1(a, c, y), sf::hyp1f1_z_derivative(a, c, y)};
}

}  // namespace

const char* to_string(Family f) noexcept { return f == Family::A ? "A" : "B"; }

double beta_bound(double b) {
    if (!(b > -2.0)) return 0.0;
    return 2.0 * std::exp(sf::ln_gamma(b / 4.0 + 1.0) - sf::ln_gamma((b + 2.0) / 4.0));
}

CesParams validate_params(Family family, double b, double beta, double gamma) {
    if (!std::isfinite(b) || !std::isfinite(beta) || !std::isfinite(gamma)) {
        throw BoundViolation("non-finite parameter", 0.0, std::nan(""));
    }
    if (family == Family::A) {
        if (!(b > -2.0)) throw BoundViolation("b <= -2", -2.0, b);
        const double bound = beta_bound(b);
        if (!(std::abs(beta) < bound)) {
            throw BoundViolation("|beta| >= 2*Gamma(b/4+1)/Gamma((b+2)/4)", bound, beta);
        }
        return {Family::A, b, beta, 0.0};
    }
    if (!(gamma > 0.0)) throw BoundViolation("gamma <= 0", 0.0, gamma);
    const double limit = -4.0 * gamma - 2.0;
    if (!(b > limit)) throw BoundViolation("b <= -4*gamma-2", limit, b);
    return {Family::B, b, 0.0, gamma};
}

Domain contract_domain(Family family) {
    return family == Family::A ? Domain::real_line(-8.0, 8.0) : Domain::half_line(1e-4, 10.0);
}

UValue u_value(const CesParams& p, double x) {
    require_positive_x(p, x);
    if (p.family == Family::A) {
        const double z = -x * x;
        const double a1 = -p.b / 4.0;
        double u = sf::hyp1f1(a1, 0.5, z);
        double du = -2.0 * x * sf::hyp1f1_z_derivative(a1, 0.5, z);
        if (p.beta != 0.0) {
            const double a2 = (2.0 - p.b) / 4.0;
            const double f2 = sf::hyp1f1(a2, 1.5, z);
            u += p.beta * x * f2;
            du += p.beta * (f2 - 2.0 * x * x * sf::hyp1f1_z_derivative(a2, 1.5, z));
        }
        return {u, du};
    }
    const KummerParts k = family_b_kummer(p, x);
    const double e = std::exp(-x * x);
    return {e * k.g, e * 2.0 * x * (k.g_prime - k.g)};
}

UValue u_eval(const CesParams& p, double x) {
    const UValue v = u_value(p, x);
    if (!(v.u > 0.0)) throw PositivityLoss(x);
    return v;
}

UFunction::UFunction(const CesParams& p) : params_(p) {
    const Domain d = contract_domain(p.family);
    const double h = (d.x_max - d.x_min) / static_cast<double>(kContractPoints - 1);
    for (std::size_t i = 0; i < kContractPoints; ++i) {
        const double x = d.x_min + static_cast<double>(i) * h;
        if (p.family == Family::B) {
            if (!(family_b_kummer(p, x).g > 0.0)) throw PositivityLoss(x);
        } else {
            u_eval(p, x);
        }
    }
}

double UFunction::log_derivative(double x) const {
    if (params_.family == Family::B) {
        require_positive_x(params_, x);
        const KummerParts k = family_b_kummer(params_, x);
        if (!(k.g > 0.0)) throw PositivityLoss(x);
        return 2.0 * x * (k.g_prime / k.g - 1.0);
    }
    const UValue v = u_eval(params_, x);
    return v.u_prime / v.u;
}

double UFunction::log_u(double x) const {
    if (params_.family == Family::B) {
        require_positive_x(params_, x);
        const KummerParts k = family_b_kummer(params_, x);
        if (!(k.g > 0.0)) throw PositivityLoss(x);
        return -x * x + std::log(k.g);
    }
    return std::log(u_eval(params_, x).u);
}

double seed_phi(const CesParams& p, double x) {
    require_positive_x(p, x);
    return p.family == Family::A ? x : x + p.gamma / x;
}

double seed_phi_prime(const CesParams& p, double x) {
    require_positive_x(p, x);
    return p.family == Family::A ? 1.0 : 1.0 - p.gamma / (x * x);
}

SusyPotential susy_potential(const CesParams& p) {
    const UFunction u(p);
    auto w = [u](double x) { return seed_phi(u.params(), x) + u.log_derivative(x); };
    auto w_prime = [u](double x) {
        const CesParams& q = u.params();
        const double g = u.log_derivative(x);
        const double phi = seed_phi(q, x);
        // u''/u = b - 2 Phi g, hence (u'/u)' = b - 2 Phi g - g^2.
        return seed_phi_prime(q, x) + q.b - 2.0 * phi * g - g * g;
    };
    return {w, w_prime, contract_domain(p.family)};
}

double v_plus(const CesParams& p, double x) {
    require_positive_x(p, x);
    if (p.family == Family::A) return 0.5 * (x * x + p.b + 1.0);
    const double g = p.gamma;
    return 0.5 * x * x + g * (g - 1.0) / (2.0 * x * x) + g + 0.5 * (p.b + 1.0);
}

double v_minus(const CesParams& p, double x) {
    require_positive_x(p, x);
    if (p.family == Family::A) {
        const UValue v = u_eval(p, x);
        const double g = v.u_prime / v.u;
        return 0.5 * x * x - 0.5 * (p.b + 1.0) + g * (2.0 * x + g);
    }
    const KummerParts k = family_b_kummer(p, x);
    if (!(k.g > 0.0)) throw PositivityLoss(x);
    const double g = 2.0 * x * (k.g_prime / k.g - 1.0);
    const double gm = p.gamma;
    return 0.5 * x * x + gm * (gm + 1.0) / (2.0 * x * x) + gm - 0.5 * (p.b + 1.0) +
           g * (2.0 * x + 2.0 * gm / x + g);
}

double drift_potential(const CesParams& p, double x) {
    require_positive_x(p, x);
    if (p.family == Family::A) return 0.5 * x * x + std::log(u_eval(p, x).u);
    const KummerParts k = family_b_kummer(p, x);
    if (!(k.g > 0.0)) throw PositivityLoss(x);
    return -0.5 * x * x + p.gamma * std::log(x) + std::log(k.g);
}

double energy_plus(const CesParams& p, int n) {
    if (n < 0) throw DomainError("energy index must be non-negative");
    if (p.family == Family::A) return n + p.b / 2.0 + 1.0;
    return 2.0 * n + 2.0 * p.gamma + 1.0 + p.b / 2.0;
}

double energy_minus(const CesParams& p, int n) {
    if (n < 0) throw DomainError("energy index must be non-negative");
    if (p.family == Family::A) return n == 0 ? 0.0 : energy_plus(p, n - 1);
    return energy_plus(p, n);
}

SusyClass susy_class(Family f) noexcept {
    return f == Family::A ? SusyClass::Unbroken : SusyClass::Broken;
}

SpectralData::SpectralData(const CesParams& p) : u_(p) {
    if (p.family == Family::A) {
        // int exp(-x^2) / u^2 over the real line; the integrand is below 1e-60 at |x| = 12.
        constexpr double kHalfWidth = 12.0;
        constexpr std::size_t kPoints = 6001;
        const double h = 2.0 * kHalfWidth / static_cast<double>(kPoints - 1);
        std::vector<double> f(kPoints);
        for (std::size_t i = 0; i < kPoints; ++i) {
            const double x = -kHalfWidth + static_cast<double>(i) * h;
            f[i] = std::exp(-x * x - 2.0 * u_.log_u(x));
        }
        ground_norm_ = 1.0 / std::sqrt(simpson(f, h));
    } else {
        log_norm_plus_.resize(kMaxModeIndex + 2);
        for (int n = 0; n <= kMaxModeIndex + 1; ++n) {
            log_norm_plus_[n] = 0.5 * (std::numbers::ln2 + sf::ln_gamma(n + 1.0) -
                                       sf::ln_gamma(n + p.gamma + 0.5));
        }
    }
}

namespace {

// Orthonormal Hermite functions phi_k(x) = [sqrt(pi) 2^k k!]^{-1/2} H_k(x) e^{-x^2/2}.
void hermite_functions(double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (out.size() > 1) out[1] = std::numbers::sqrt2 * x * out[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
    }
}

void laguerre_values(double alpha, double y, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() > 1) out[1] = 1.0 + alpha - y;
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = ((2.0 * kk + 1.0 + alpha - y) * out[k] - (kk + alpha) * out[k - 1]) / (kk + 1.0);
    }
}

}  // namespace

void SpectralData::modes_plus(double x, std::span<double> out) const {
    const CesParams& p = params();
    if (out.size() > static_cast<std::size_t>(kMaxModeIndex) + 1) {
        throw DomainError("at most " + std::to_string(kMaxModeIndex + 1) + " modes");
    }
    if (p.family == Family::A) {
        hermite_functions(x, out);
        return;
    }
    require_positive_x(p, x);
    const double y = x * x;
    laguerre_values(p.gamma - 0.5, y, out);
    const double log_weight = p.gamma * std::log(x) - 0.5 * y;
    for (std::size_t n = 0; n < out.size(); ++n) out[n] *= std::exp(log_norm_plus_[n] + log_weight);
}

void SpectralData::modes_minus(double x, std::span<double> out) const {
    const CesParams& p = params();
    const std::size_t count = out.size();
    if (count == 0) return;
    if (count > static_cast<std::size_t>(kMaxModeIndex) + 1) {
        throw DomainError("at most " + std::to_string(kMaxModeIndex + 1) + " modes");
    }
    const double g = u_.log_derivative(x);

    if (p.family == Family::A) {
        std::vector<double> phi(count);
        hermite_functions(x, phi);
        out[0] = ground_norm_ * std::exp(-0.5 * x * x - u_.log_u(x));
        // psi_{m+1}^- = A^dagger phi_m / sqrt(E_m^+)
        //            = [sqrt(2(m+1)) phi_{m+1} + g phi_m] / sqrt(2 E_m^+).
        for (std::size_t m = 0; m + 1 < count; ++m) {
            const double md = static_cast<double>(m);
            const double e = cesfp::energy_plus(p, static_cast<int>(m));
            out[m + 1] = (std::sqrt(2.0 * (md + 1.0)) * phi[m + 1] + g * phi[m]) / std::sqrt(2.0 * e);
        }
        return;
    }

    // psi_n^- = A^dagger psi_n^+ / sqrt(E_n)
    //         = N_n x^gamma e^{-y/2} [2x L_n^(gamma+1/2)(y) + g L_n^(gamma-1/2)(y)] / sqrt(2 E_n).
    const double y = x * x;
    std::vector<double> lower(count);
    std::vector<double> upper(count);
    laguerre_values(p.gamma - 0.5, y, lower);
    laguerre_values(p.gamma + 0.5, y, upper);
    const double log_weight = p.gamma * std::log(x) - 0.5 * y;
    for (std::size_t n = 0; n < count; ++n) {
        const double e = cesfp::energy_plus(p, static_cast<int>(n));
        out[n] = std::exp(log_norm_plus_[n] + log_weight) * (2.0 * x * upper[n] + g * lower[n]) /
                 std::sqrt(2.0 * e);
    }
}

double SpectralData::psi_minus(int n, double x) const {
    require_mode_index(n, kMaxModeIndex);
    std::vector<double> modes(static_cast<std::size_t>(n) + 1);
    modes_minus(x, modes);
    return modes.back();
}

double SpectralData::psi_plus(int n, double x) const {
    require_mode_index(n, kMaxModeIndex);
    std::vector<double> modes(static_cast<std::size_t>(n) + 1);
    modes_plus(x, modes);
    return modes.back();
}

GridFunction eigenfunction_minus(const CesParams& p, int n, const Domain& domain, std::size_t n_points) {
    require_mode_index(n, kMaxGridModeIndex);
    const SpectralData s(p);
    GridFunction raw = GridFunction::sample(domain, n_points, [&](double x) { return s.psi_minus(n, x); });
    std::vector<double> sq(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) sq[i] = raw[i] * raw[i];
    const double norm = std::sqrt(simpson(sq, raw.spacing()));
    std::vector<double> values(raw.values().begin(), raw.values().end());
    for (double& v : values) v /= norm;
    return GridFunction(domain, std::move(values));
}

GridFunction eigenfunction_plus(const CesParams& p, int n, const Domain& domain, std::size_t n_points) {
    require_mode_index(n, kMaxGridModeIndex);
    const SpectralData s(p);
    return GridFunction::sample(domain, n_points, [&](double x) { return s.psi_plus(n, x); });
}

}  // namespace cesfp
