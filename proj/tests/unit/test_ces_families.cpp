#include "cesfp/ces_families.hpp"
#include "cesfp/error.hpp"
#include "cesfp/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace cesfp;

namespace {

std::vector<CesParams> contract_systems() {
    return {
        validate_params(Family::A, 0.0, 0.0),      validate_params(Family::A, -1.0, 0.3),
        validate_params(Family::A, -1.9, 0.0),     validate_params(Family::A, 2.0, -0.8),
        validate_params(Family::A, 8.0, 1.5),      validate_params(Family::B, -5.5, 0.0, 1.0),
        validate_params(Family::B, -5.05, 0.0, 1.0), validate_params(Family::B, -3.5, 0.0, 0.5),
        validate_params(Family::B, -9.0, 0.0, 2.0), validate_params(Family::B, 8.0, 0.0, 4.0),
    };
}

double inner(const GridFunction& f, const GridFunction& g) {
    std::vector<double> p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p[i] = f[i] * g[i];
    return simpson(p, f.spacing());
}

// max |H psi - E psi| / max |psi| away from the window edges. Half-line modes
// behave like x^(gamma+1), which the three-point stencil only resolves for
// integer gamma; otherwise the window starts at x = 0.05.
double eigen_residual(const CesParams& p, const GridFunction& psi, double e) {
    const GridFunction h_psi = apply_hamiltonian([&p](double x) { return v_minus(p, x); }, psi);
    const bool smooth_edge = p.family == Family::A || p.gamma == std::round(p.gamma);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 5; i + 5 < psi.size(); ++i) {
        scale = std::max(scale, std::abs(psi[i]));
        if (!smooth_edge && psi.x(i) < 0.05) continue;
        worst = std::max(worst, std::abs(h_psi[i] - e * psi[i]));
    }
    return worst / scale;
}

}  // namespace

TEST_SUITE("ces_families") {

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate_params(Family::A, 0.0, 0.0));
    CHECK(beta_bound(0.0) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(beta_bound(0.0) == doctest::Approx(1.128379).epsilon(1e-6));

    try {
        validate_params(Family::A, -2.0, 0.0);
        FAIL("expected a bound violation");
    } catch (const BoundViolation& e) {
        CHECK(e.which() == "b <= -2");
        CHECK(e.limit() == -2.0);
        CHECK(e.given() == -2.0);
    }
    try {
        validate_params(Family::B, -6.0, 0.0, 1.0);
        FAIL("expected a bound violation");
    } catch (const BoundViolation& e) {
        CHECK(e.which() == "b <= -4*gamma-2");
        CHECK(e.limit() == -6.0);
    }
    CHECK_NOTHROW(validate_params(Family::B, -5.5, 0.0, 1.0));
    CHECK_THROWS_AS(validate_params(Family::A, 0.0, 1.2), BoundViolation);
    CHECK_THROWS_AS(validate_params(Family::B, 0.0, 0.0, 0.0), BoundViolation);
    CHECK_THROWS_AS(validate_params(Family::A, std::nan(""), 0.0), BoundViolation);
}

TEST_CASE("u-function values") {
    const CesParams flat = validate_params(Family::A, 0.0, 0.0);
    for (double x : {-3.0, 0.0, 2.5}) {
        CHECK(u_eval(flat, x).u == 1.0);
        CHECK(u_eval(flat, x).u_prime == 0.0);
    }
    const CesParams tilted = validate_params(Family::A, 0.0, 0.5);
    CHECK(u_eval(tilted, 0.0).u == 1.0);
    CHECK(u_eval(tilted, 0.0).u_prime == doctest::Approx(0.5).epsilon(1e-15));

    const CesParams b = validate_params(Family::B, -5.5, 0.0, 1.0);
    const double expected = std::exp(-1.0) * specfun::hyp1f1(0.125, 1.5, 1.0);
    CHECK(u_eval(b, 1.0).u == doctest::Approx(expected).epsilon(1e-14));
    CHECK(u_eval(b, 1.0).u > 0.0);
    CHECK_THROWS_AS(u_eval(b, 0.0), DomainError);
    CHECK_THROWS_AS(u_eval(b, -1.0), DomainError);
}

TEST_CASE("positivity is enforced beyond the bound") {
    const double bound = beta_bound(0.0);
    const CesParams outside{Family::A, 0.0, 1.01 * bound, 0.0};
    CHECK_THROWS_AS(UFunction{outside}, PositivityLoss);
    CHECK_NOTHROW(UFunction{CesParams{Family::A, 0.0, 0.99 * bound, 0.0}});
    CHECK_THROWS_AS(u_eval(outside, -8.0), PositivityLoss);
}

TEST_CASE("u solves u'' + 2 Phi u' - b u = 0") {
    for (const CesParams& p : contract_systems()) {
        const Domain d = contract_domain(p.family);
        double worst = 0.0;
        const double h = 1e-4;
        for (double x = d.x_min + 0.01; x < d.x_max - 0.01; x += 0.0371) {
            const UValue v = u_eval(p, x);
            const double upp = (u_eval(p, x + h).u_prime - u_eval(p, x - h).u_prime) / (2.0 * h);
            const double scale = std::max({1.0, std::abs(v.u), std::abs(v.u_prime)});
            worst = std::max(worst, std::abs(upp + 2.0 * seed_phi(p, x) * v.u_prime - p.b * v.u) / scale);
        }
        INFO(std::string(to_string(p.family)) << " b=" << p.b);
        CHECK(worst <= 1e-5);
    }
}

TEST_CASE("SUSY potential") {
    const SusyPotential flat = susy_potential(validate_params(Family::A, 0.0, 0.0));
    for (double x : {-2.0, 0.0, 3.0}) CHECK(flat.w(x) == x);

    const CesParams near_edge = validate_params(Family::B, -6.0 + 1e-3, 0.0, 1.0);
    const SusyPotential wb = susy_potential(near_edge);
    for (double x : {1e-2, 1e-3, 1e-4}) {
        CHECK(std::abs(wb.w(x) - (x + 1.0 / x)) <= 5.0 * x);
    }

    for (const CesParams& p : contract_systems()) {
        const SusyPotential w = susy_potential(p);
        const Domain d = contract_domain(p.family);
        const double h = 1e-5;
        double worst = 0.0;
        for (double x = std::max(d.x_min, 0.05); x < d.x_max - 0.05; x += 0.113) {
            const double fd = (w.w(x + h) - w.w(x - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - w.w_prime(x)) / std::max(1.0, std::abs(w.w_prime(x))));
        }
        INFO(std::string(to_string(p.family)) << " b=" << p.b);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("partner potentials in closed form") {
    CHECK(v_plus(validate_params(Family::A, 0.0, 0.0), 0.0) == 0.5);
    CHECK(v_plus(validate_params(Family::B, -5.5, 0.0, 1.0), 1.0) == doctest::Approx(-0.75));
    const CesParams flat = validate_params(Family::A, 0.0, 0.0);
    for (double x : {-1.5, 0.0, 2.0}) CHECK(v_minus(flat, x) == doctest::Approx(0.5 * (x * x - 1.0)));

    for (const CesParams& p : contract_systems()) {
        const PartnerPotentials v = partner_potentials(susy_potential(p));
        const Domain d = contract_domain(p.family);
        double worst_plus = 0.0;
        double worst_minus = 0.0;
        for (double x = std::max(d.x_min, 0.05); x < d.x_max; x += 0.097) {
            const double scale = std::max(1.0, std::abs(v_plus(p, x)));
            worst_plus = std::max(worst_plus, std::abs(v.v_plus(x) - v_plus(p, x)) / scale);
            worst_minus = std::max(worst_minus, std::abs(v.v_minus(x) - v_minus(p, x)) / scale);
        }
        INFO(std::string(to_string(p.family)) << " b=" << p.b);
        CHECK(worst_plus <= 1e-6);
        CHECK(worst_minus <= 1e-6);
    }
}

TEST_CASE("double well of V_- near b = -2") {
    const CesParams p = validate_params(Family::A, -1.9, 0.0);
    std::vector<double> minima;
    const double h = 1e-3;
    double prev = v_minus(p, -4.0 + h) - v_minus(p, -4.0);
    for (double x = -4.0 + h; x < 4.0; x += h) {
        const double slope = v_minus(p, x + h) - v_minus(p, x);
        if (prev < 0.0 && slope >= 0.0) minima.push_back(x);
        prev = slope;
    }
    // Two deep outer wells separated by a shallow dip at the origin.
    REQUIRE(minima.size() == 3);
    CHECK(minima[0] == doctest::Approx(-minima[2]).epsilon(1e-2));
    CHECK(std::abs(minima[1]) <= 2.0 * h);
    CHECK(v_minus(p, minima[0]) < v_minus(p, 0.0) - 1.0);
    CHECK(v_minus(p, minima[2]) < v_minus(p, 0.0) - 1.0);
}

TEST_CASE("reflection symmetry") {
    const CesParams even = validate_params(Family::A, -1.0, 0.0);
    for (double x : {0.3, 1.7, 4.2}) {
        CHECK(v_minus(even, x) == v_minus(even, -x));
        CHECK(drift_potential(even, x) == drift_potential(even, -x));
    }
    const CesParams odd = validate_params(Family::A, -1.0, 0.3);
    bool broken = false;
    for (double x = 0.1; x < 5.0; x += 0.1) broken = broken || std::abs(v_minus(odd, x) - v_minus(odd, -x)) > 1e-6;
    CHECK(broken);
}

TEST_CASE("drift potential") {
    const CesParams flat = validate_params(Family::A, 0.0, 0.0);
    for (double x : {-2.0, 1.0, 3.0}) CHECK(drift_potential(flat, x) == doctest::Approx(0.5 * x * x));

    const CesParams p = validate_params(Family::B, -5.5, 0.0, 1.0);
    CHECK(drift_potential(p, 1e-8) / std::log(1e-8) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(drift_potential(p, 1e-12) < drift_potential(p, 1e-8));
    CHECK(drift_potential(p, 25.0) / (0.5 * 625.0) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(drift_potential(p, 25.0) / (0.5 * 625.0) > drift_potential(p, 10.0) / 50.0);
    CHECK(drift_potential(p, 1.0) == doctest::Approx(-0.5 + std::log(specfun::hyp1f1(0.125, 1.5, 1.0))));

    for (const CesParams& q : contract_systems()) {
        const SusyPotential w = susy_potential(q);
        const double h = 1e-5;
        for (double x : {0.5, 1.3, 2.9}) {
            const double fd = (drift_potential(q, x + h) - drift_potential(q, x - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(w.w(x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("spectra") {
    const CesParams a = validate_params(Family::A, 0.0, 0.0);
    for (int n = 0; n < 4; ++n) CHECK(energy_minus(a, n) == n);
    const CesParams b = validate_params(Family::B, -5.5, 0.0, 1.0);
    CHECK(energy_minus(b, 0) == 0.25);
    CHECK(energy_minus(validate_params(Family::B, -6.0 + 1e-9, 0.0, 1.0), 0) > 0.0);
    CHECK(energy_minus(validate_params(Family::B, -6.0 + 1e-9, 0.0, 1.0), 0) < 1e-8);
    for (const CesParams& p : contract_systems()) {
        for (int n = 0; n < 20; ++n) {
            if (p.family == Family::A) {
                CHECK(energy_minus(p, n + 1) == energy_plus(p, n));
            } else {
                CHECK(energy_minus(p, n) == energy_plus(p, n));
            }
        }
    }
    CHECK(susy_class(Family::A) == SusyClass::Unbroken);
    CHECK(susy_class(Family::B) == SusyClass::Broken);
}

TEST_CASE("eigenfunctions of H_+") {
    const CesParams a = validate_params(Family::A, -1.0, 0.3);
    const Domain da = contract_domain(Family::A);
    const GridFunction g0 = eigenfunction_plus(a, 0, da);
    for (std::size_t i = 0; i < g0.size(); i += 97) {
        CHECK(g0[i] == doctest::Approx(std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * g0.x(i) * g0.x(i))));
    }
    const CesParams b = validate_params(Family::B, -5.5, 0.0, 1.0);
    const GridFunction r0 = eigenfunction_plus(b, 0, contract_domain(Family::B));
    CHECK(inner(r0, r0) == doctest::Approx(1.0).epsilon(1e-8));
    for (std::size_t i = 100; i < r0.size(); i += 331) {
        CHECK(r0[i] / (r0.x(i) * std::exp(-0.5 * r0.x(i) * r0.x(i))) == doctest::Approx(r0[200] / (r0.x(200) * std::exp(-0.5 * r0.x(200) * r0.x(200)))));
    }

    for (const CesParams& p : {a, b}) {
        const Domain d = contract_domain(p.family);
        std::vector<GridFunction> modes;
        for (int n = 0; n <= 10; ++n) modes.push_back(eigenfunction_plus(p, n, d));
        for (int m = 0; m <= 10; ++m) {
            for (int n = 0; n <= 10; ++n) {
                CHECK(std::abs(inner(modes[m], modes[n]) - (m == n ? 1.0 : 0.0)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("eigenfunctions of H_-") {
    const CesParams flat = validate_params(Family::A, 0.0, 0.0);
    const Domain da = contract_domain(Family::A);
    const GridFunction first = eigenfunction_minus(flat, 1, da);
    const double c = std::sqrt(2.0) * std::pow(std::numbers::pi, -0.25);
    for (std::size_t i = 0; i < first.size(); i += 101) {
        const double x = first.x(i);
        CHECK(std::abs(std::abs(first[i]) - std::abs(c * x * std::exp(-0.5 * x * x))) <= 1e-7);
    }

    // exp(-x^2/2) (H_{n+1} + H_n u'/u), normalised
    const CesParams p = validate_params(Family::A, -1.0, 0.3);
    for (int n = 0; n <= 5; ++n) {
        const GridFunction psi = eigenfunction_minus(p, n + 1, da);
        const GridFunction raw = GridFunction::sample(da, kContractPoints, [&](double x) {
            const UValue u = u_eval(p, x);
            return std::exp(-0.5 * x * x) *
                   (specfun::hermite_h(n + 1, x) + specfun::hermite_h(n, x) * u.u_prime / u.u);
        });
        const double norm = std::copysign(std::sqrt(inner(raw, raw)), inner(raw, psi));
        double worst = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) worst = std::max(worst, std::abs(raw[i] / norm - psi[i]));
        CHECK(worst <= 1e-5);
    }

    const CesParams b = validate_params(Family::B, -5.5, 0.0, 1.0);
    const Domain db = contract_domain(Family::B);
    CHECK(eigen_residual(b, eigenfunction_minus(b, 0, db), energy_minus(b, 0)) <= 1e-4);

    for (const CesParams& q : contract_systems()) {
        const Domain d = contract_domain(q.family);
        std::vector<GridFunction> modes;
        for (int n = 0; n <= 10; ++n) modes.push_back(eigenfunction_minus(q, n, d));
        for (int n = 0; n <= 10; ++n) {
            INFO(std::string(to_string(q.family)) << " b=" << q.b << " n=" << n);
            const double coarse = eigen_residual(q, modes[n], energy_minus(q, n));
            const double fine = eigen_residual(q, eigenfunction_minus(q, n, d, 2 * kContractPoints - 1), energy_minus(q, n));
            CHECK(fine <= 5e-4);
            CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.125));
            for (int m = 0; m <= n; ++m) {
                CHECK(std::abs(inner(modes[m], modes[n]) - (m == n ? 1.0 : 0.0)) <= 1e-5);
            }
        }
    }
    CHECK_THROWS(eigenfunction_minus(b, 51, db));
}

TEST_CASE("half-line excited states need both Laguerre factors") {
    const CesParams p = validate_params(Family::B, -5.5, 0.0, 1.0);
    const Domain d = contract_domain(Family::B);
    const int n = 2;
    const double g = p.gamma;
    const UFunction u(p);
    auto shape = [&](bool with_second_factor) {
        return GridFunction::sample(d, kContractPoints, [&](double x) {
            const double y = x * x;
            const double ratio = u.log_derivative(x) / (2.0 * x);
            const double second = with_second_factor ? specfun::laguerre_l(n, g - 0.5, y) : 1.0;
            return std::pow(x, g + 1.0) * std::exp(-0.5 * y) * (specfun::laguerre_l(n, g + 0.5, y) + ratio * second);
        });
    };
    CHECK(eigen_residual(p, shape(true), energy_minus(p, n)) <= 5e-4);
    CHECK(eigen_residual(p, shape(false), energy_minus(p, n)) > 1e-2);
}

}
