#include "cesfp/error.hpp"
#include "cesfp/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cesfp;

TEST_SUITE("grid") {

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(Domain::real_line(1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(Domain::half_line(-0.1, 1.0), PreconditionError);
    CHECK_NOTHROW(Domain::half_line(0.0, 1.0));
    CHECK(Domain::real_line() == Domain{DomainKind::RealLine, -8.0, 8.0});
    CHECK(Domain::half_line() == Domain{DomainKind::HalfLine, 1e-4, 10.0});
}

TEST_CASE("grid function layout") {
    const auto f = GridFunction::sample(Domain::real_line(-1.0, 1.0), 5, [](double x) { return x * x; });
    CHECK(f.size() == 5);
    CHECK(f.spacing() == 0.5);
    CHECK(f.x(0) == -1.0);
    CHECK(f.x(4) == 1.0);
    CHECK(f[1] == 0.25);
    CHECK_THROWS_AS(GridFunction::zeros(Domain::real_line(), 2), PreconditionError);
}

TEST_CASE("grid mismatch is reported") {
    const auto a = GridFunction::zeros(Domain::real_line(), 11);
    const auto b = GridFunction::zeros(Domain::real_line(), 13);
    const auto c = GridFunction::zeros(Domain::real_line(-7.0, 8.0), 11);
    CHECK(a.same_grid(a));
    CHECK_FALSE(a.same_grid(b));
    CHECK_THROWS_AS(a.require_same_grid(b), GridMismatch);
    CHECK_THROWS_AS(a.require_same_grid(c), GridMismatch);
}

TEST_CASE("quadrature rules") {
    const Domain d = Domain::real_line(0.0, std::numbers::pi);
    for (std::size_t n : {101u, 102u, 4u, 5u}) {
        const auto f = GridFunction::sample(d, n, [](double x) { return std::sin(x); });
        const double tol = n > 10 ? 1e-7 : 2e-2;
        CHECK(simpson(f.values(), f.spacing()) == doctest::Approx(2.0).epsilon(tol));
    }
    const auto g = GridFunction::sample(d, 1001, [](double x) { return std::sin(x); });
    CHECK(trapezoid(g.values(), g.spacing()) == doctest::Approx(2.0).epsilon(1e-5));
    const auto cum = cumulative_integral(g.values(), g.spacing());
    for (std::size_t i = 0; i < g.size(); i += 50) {
        CHECK(std::abs(cum[i] - (1.0 - std::cos(g.x(i)))) <= 1e-11);
    }
}

TEST_CASE("cubic polynomials integrate exactly") {
    const auto f = GridFunction::sample(Domain::real_line(-1.0, 2.0), 8, [](double x) { return x * x * x - x + 1.0; });
    const double exact = (16.0 / 4.0 - 2.0 + 2.0) - (0.25 - 0.5 - 1.0);
    CHECK(simpson(f.values(), f.spacing()) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(cumulative_integral(f.values(), f.spacing()).back() == doctest::Approx(exact).epsilon(1e-14));
}

}
