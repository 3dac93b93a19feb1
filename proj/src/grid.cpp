#include "cesfp/grid.hpp"

#include "cesfp/error.hpp"

#include <cmath>
#include <string>

namespace cesfp {

void Domain::validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw PreconditionError("domain window must satisfy x_min < x_max");
    }
    if (kind == DomainKind::HalfLine && x_min < 0.0) {
        throw PreconditionError("half-line window must satisfy x_min >= 0");
    }
}

Domain Domain::real_line(double x_min, double x_max) {
    Domain d{DomainKind::RealLine, x_min, x_max};
    d.validate();
    return d;
}

Domain Domain::half_line(double x_min, double x_max) {
    Domain d{DomainKind::HalfLine, x_min, x_max};
    d.validate();
    return d;
}

GridFunction::GridFunction(Domain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)), h_(0.0) {
    domain_.validate();
    if (values_.size() < 3) throw PreconditionError("grid function needs at least 3 points");
    h_ = (domain_.x_max - domain_.x_min) / static_cast<double>(values_.size() - 1);
}

GridFunction GridFunction::sample(const Domain& domain, std::size_t n_points, const RealFunction& f) {
    domain.validate();
    if (n_points < 3) throw PreconditionError("grid function needs at least 3 points");
    const double h = (domain.x_max - domain.x_min) / static_cast<double>(n_points - 1);
    std::vector<double> values(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        values[i] = f(domain.x_min + static_cast<double>(i) * h);
    }
    return GridFunction(domain, std::move(values));
}

GridFunction GridFunction::zeros(const Domain& domain, std::size_t n_points) {
    return GridFunction(domain, std::vector<double>(n_points, 0.0));
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
    return domain_ == other.domain_ && values_.size() == other.values_.size();
}

void GridFunction::require_same_grid(const GridFunction& other) const {
    if (!same_grid(other)) {
        throw GridMismatch("grid functions differ in window or point count (" +
                           std::to_string(size()) + " vs " + std::to_string(other.size()) + ")");
    }
}

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    std::size_t end = n - 1;  // last index covered by the 1/3 rule
    double tail = 0.0;
    if ((n - 1) % 2 == 1) {
        if (n == 4) return 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
        end = n - 4;
        tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    }
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < end; ++i) {
        (i % 2 == 1 ? odd : even) += f[i];
    }
    return h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[end]) + tail;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return h * s;
}

std::vector<double> cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n < 4) {
        for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = out[i] + 0.5 * h * (f[i] + f[i + 1]);
        return out;
    }
    // Each panel [x_i, x_{i+1}] integrates the cubic through four neighbours.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i == 0) {
            panel = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        } else if (i + 2 == n) {
            panel = h / 24.0 * (f[i - 2] - 5.0 * f[i - 1] + 19.0 * f[i] + 9.0 * f[i + 1]);
        } else {
            panel = h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
        }
        out[i + 1] = out[i] + panel;
    }
    return out;
}

}  // namespace cesfp
