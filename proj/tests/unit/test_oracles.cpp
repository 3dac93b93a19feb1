#include "cesfp/error.hpp"
#include "cesfp/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

using namespace cesfp;
using namespace cesfp::oracles;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double gaussian(double x, double mu, double var) {
    return std::exp(-(x - mu) * (x - mu) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// det(A - lambda I) of a small symmetric tridiagonal matrix by dense
// Gaussian elimination with partial pivoting.
double dense_characteristic(const TridiagonalOperator& op, double lambda) {
    const std::size_t n = op.dimension();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = op.diagonal[i] - lambda;
        if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = op.off_diagonal[i];
    }
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
        }
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        if (m[c][c] == 0.0) return 0.0;
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

double harmonic_ground(std::size_t n_points) {
    const TridiagonalOperator op =
        discretize_hamiltonian([](double x) { return 0.5 * x * x; }, Domain::real_line(-10.0, 10.0), n_points);
    return lowest_eigenvalues(op, 1)[0];
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("discretisation layout") {
    const TridiagonalOperator op =
        discretize_hamiltonian([](double) { return 0.0; }, Domain::real_line(0.0, 1.0), 101);
    CHECK(op.dimension() == 99);
    CHECK(op.off_diagonal.size() == 98);
    CHECK(op.h == doctest::Approx(0.01));
    CHECK(op.diagonal[0] == doctest::Approx(1e4));
    CHECK(op.off_diagonal[0] == doctest::Approx(-0.5e4));
    CHECK_THROWS_AS(discretize_hamiltonian([](double) { return 0.0; }, Domain::real_line(0.0, 1.0), 50),
                    PreconditionError);
    CHECK_THROWS_AS(discretize_hamiltonian([](double x) { return x > 0.5 ? std::nan("") : 0.0; },
                                           Domain::real_line(0.0, 1.0), 101),
                    DomainError);
}

TEST_CASE("Sturm count on a diagonal matrix") {
    TridiagonalOperator op;
    op.diagonal = {3.0, 1.0, 2.0};
    op.off_diagonal = {0.0, 0.0};
    CHECK(sturm_count(op, 0.5) == 0);
    CHECK(sturm_count(op, 1.5) == 1);
    CHECK(sturm_count(op, 2.5) == 2);
    CHECK(sturm_count(op, 10.0) == 3);
}

TEST_CASE("Sturm counts agree with dense determinants") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (std::size_t dim = 2; dim <= 12; ++dim) {
        TridiagonalOperator op;
        for (std::size_t i = 0; i < dim; ++i) op.diagonal.push_back(coef(rng));
        for (std::size_t i = 0; i + 1 < dim; ++i) op.off_diagonal.push_back(coef(rng));

        // Roots of the characteristic polynomial by scanning and bisection.
        std::vector<double> roots;
        const double step = 1e-3;
        for (double lo = -7.0; lo < 7.0; lo += step) {
            double a = lo;
            double b = lo + step;
            if ((dense_characteristic(op, a) > 0.0) == (dense_characteristic(op, b) > 0.0)) continue;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                ((dense_characteristic(op, a) > 0.0) == (dense_characteristic(op, mid) > 0.0) ? a : b) = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        INFO("dim=" << dim);
        REQUIRE(roots.size() == dim);
        for (std::size_t k = 0; k < dim; ++k) {
            CHECK(sturm_count(op, roots[k] - 1e-10) == k);
            CHECK(sturm_count(op, roots[k] + 1e-10) == k + 1);
        }
    }
}

TEST_CASE("eigenvalues of the discrete Laplacian are exact") {
    const std::size_t n_points = 301;
    const TridiagonalOperator op = discretize_hamiltonian([](double) { return 0.0; }, Domain::real_line(0.0, 1.0), n_points);
    const std::vector<double> ev = lowest_eigenvalues(op, 10);
    const double h2 = op.h * op.h;
    const double dim = static_cast<double>(op.dimension());
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const double exact = (1.0 - std::cos(static_cast<double>(k + 1) * std::numbers::pi / (dim + 1.0))) / h2;
        CHECK(std::abs(ev[k] - exact) <= 1e-9);
    }
    CHECK_THROWS_AS(lowest_eigenvalues(op, 31), PreconditionError);
}

TEST_CASE("particle in a box") {
    const TridiagonalOperator op =
        discretize_hamiltonian([](double) { return 0.0; }, Domain::real_line(0.0, std::numbers::pi), 4001);
    const std::vector<double> ev = lowest_eigenvalues(op, 5);
    for (int n = 1; n <= 5; ++n) CHECK(ev[n - 1] == doctest::Approx(0.5 * n * n).epsilon(1e-5));
}

TEST_CASE("harmonic oscillator") {
    const TridiagonalOperator op =
        discretize_hamiltonian([](double x) { return 0.5 * x * x; }, Domain::real_line(-10.0, 10.0), 4001);
    const std::vector<double> ev = lowest_eigenvalues(op, 10);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(ev[n] - (n + 0.5)) <= 1e-4);
    for (int n = 3; n < 10; ++n) CHECK(std::abs(ev[n] - (n + 0.5)) <= 5e-4);
}

TEST_CASE("second-order convergence") {
    const double coarse = harmonic_ground(401) - 0.5;
    const double fine = harmonic_ground(801) - 0.5;
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("Crank-Nicolson against Ornstein-Uhlenbeck") {
    const Domain d = Domain::real_line(-8.0, 8.0);
    const FokkerPlanckSolution s = crank_nicolson_evolve([](double x) { return x; }, 1.0, 1.0, d, 2001, 400);
    CHECK(std::abs(s.mass - 1.0) <= 1e-10);
    CHECK(s.absorbed == 0.0);
    const double var = 0.5 * (1.0 - std::exp(-2.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < s.density.size(); ++i) {
        worst = std::max(worst, std::abs(s.density[i] - gaussian(s.density.x(i), std::exp(-1.0), var)));
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("Crank-Nicolson against the heat kernel") {
    const Domain d = Domain::real_line(-10.0, 10.0);
    const FokkerPlanckSolution s = crank_nicolson_evolve([](double) { return 0.0; }, 0.0, 1.0, d, 2001, 400);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.density.size(); ++i) {
        worst = std::max(worst, std::abs(s.density[i] - gaussian(s.density.x(i), 0.0, 1.0)));
    }
    CHECK(worst <= 1e-3);
    CHECK(std::abs(s.mass - 1.0) <= 1e-10);
}

TEST_CASE("absorbing half-line edge") {
    const Domain d = Domain::half_line(1e-4, 10.0);
    const FokkerPlanckSolution s = crank_nicolson_evolve([](double) { return 0.0; }, 1.0, 1.0, d, 2001, 400);
    CHECK(s.absorbed > 0.1);
    CHECK(std::abs(s.mass + s.absorbed - 1.0) <= 1e-5);
    // Heat kernel with an image charge.
    const double lost = std::erfc(1.0 / std::sqrt(2.0));
    CHECK(s.absorbed == doctest::Approx(lost).epsilon(1e-2));
    CHECK_THROWS_AS(crank_nicolson_evolve([](double) { return 0.0; }, 20.0, 1.0, d, 2001, 10), PreconditionError);
}

TEST_CASE("Monte Carlo moments") {
    McConfig cfg;
    cfg.n_paths = 20000;
    cfg.dt = 1e-3;
    cfg.seed = 7;
    const Domain d = Domain::real_line(-20.0, 20.0);

    const std::vector<double> ou = euler_maruyama_sample([](double x) { return x; }, 1.0, 1.0, cfg, d);
    REQUIRE(ou.size() == cfg.n_paths);
    const double var = 0.5 * (1.0 - std::exp(-2.0));
    const double se = std::sqrt(var / static_cast<double>(cfg.n_paths));
    CHECK(std::abs(mean(ou) - std::exp(-1.0)) <= 5.0 * se + 1e-3);
    CHECK(variance(ou) == doctest::Approx(var).epsilon(0.05));

    const std::vector<double> free = euler_maruyama_sample([](double) { return 0.0; }, 0.0, 2.0, cfg, d);
    CHECK(std::abs(mean(free)) <= 5.0 * std::sqrt(2.0 / static_cast<double>(cfg.n_paths)));
    CHECK(variance(free) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Euler-Maruyama weak order one") {
    // E[X_n] = x0 (1 - dt)^n for the OU drift, so the bias halves with dt.
    McConfig cfg;
    cfg.n_paths = 50000;
    const Domain d = Domain::real_line(-100.0, 100.0);
    const double x0 = 10.0;
    std::vector<double> bias;
    for (double dt : {0.1, 0.05, 0.025}) {
        cfg.dt = dt;
        bias.push_back(std::abs(mean(euler_maruyama_sample([](double x) { return x; }, x0, 1.0, cfg, d)) -
                                x0 * std::exp(-1.0)));
    }
    CHECK(bias[0] / bias[1] == doctest::Approx(2.0).epsilon(0.15));
    CHECK(bias[1] / bias[2] == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("Monte Carlo reproducibility") {
    McConfig cfg;
    cfg.n_paths = 2000;
    cfg.dt = 1e-2;
    const Domain d = Domain::real_line(-20.0, 20.0);
    auto w = [](double x) { return x; };

    cfg.n_threads = 1;
    const std::vector<double> serial = euler_maruyama_sample(w, 0.0, 1.0, cfg, d);
    cfg.n_threads = 3;
    CHECK(euler_maruyama_sample(w, 0.0, 1.0, cfg, d) == serial);
    CHECK(euler_maruyama_sample(w, 0.0, 1.0, cfg, d) == serial);
    cfg.seed = 43;
    CHECK(euler_maruyama_sample(w, 0.0, 1.0, cfg, d) != serial);

    cfg.seed = 42;
    const TabulatedFunction table(w, [](double) { return 1.0; }, -12.0, 12.0, 2401);
    const std::vector<double> tabulated = euler_maruyama_sample(table, 0.0, 1.0, cfg, d);
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(tabulated[i] == doctest::Approx(serial[i]).epsilon(1e-10));
}

TEST_CASE("Monte Carlo failures") {
    McConfig cfg;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg.n_paths = 10;
    cfg.dt = 0.5;
    CHECK_THROWS_AS(euler_maruyama_sample([](double x) { return -x * x * x; }, 1.0, 20.0, cfg,
                                          Domain::real_line(-1e9, 1e9)),
                    BlowUpError);
}

TEST_CASE("tabulated drift") {
    const TabulatedFunction f([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }, -3.0, 3.0,
                              601);
    for (double x = -2.95; x < 3.0; x += 0.137) CHECK(std::abs(f(x) - std::sin(x)) <= 1e-9);
    CHECK(f(5.0) == std::sin(5.0));
}

TEST_CASE("comparison metrics") {
    const Domain d = Domain::real_line(0.0, 1.0);
    const GridFunction f = GridFunction::sample(d, 101, [](double) { return 1.0; });
    const GridFunction g = GridFunction::sample(d, 101, [](double x) { return 1.0 + x; });
    CHECK(compare::l_inf(f, g) == doctest::Approx(1.0));
    CHECK(compare::l2(f, g) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-3));
    CHECK_THROWS_AS(compare::l_inf(f, GridFunction::zeros(d, 51)), GridMismatch);

    const GridFunction uniform_cdf = GridFunction::sample(d, 101, [](double x) { return x; });
    const std::vector<double> samples{0.1, 0.3, 0.5, 0.7, 0.9};
    CHECK(compare::ks(samples, uniform_cdf) == doctest::Approx(0.1));
    CHECK(compare::ks(std::vector<double>{2.0}, uniform_cdf) == doctest::Approx(1.0));
    CHECK_THROWS_AS(compare::ks(std::vector<double>{}, uniform_cdf), PreconditionError);
}

}
