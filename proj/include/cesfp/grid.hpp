#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cesfp {

/// Scalar evaluator x -> f(x).
using RealFunction = std::function<double(double)>;

enum class DomainKind { RealLine, HalfLine };

/// Configuration space together with the finite working window [x_min, x_max].
struct Domain {
    DomainKind kind = DomainKind::RealLine;
    double x_min = -8.0;
    double x_max = 8.0;

    /// Throws PreconditionError when the window is empty or a half-line
    /// window reaches below zero.
    void validate() const;

    static Domain real_line(double x_min = -8.0, double x_max = 8.0);
    static Domain half_line(double x_min = 1e-4, double x_max = 10.0);

    bool operator==(const Domain&) const = default;
};

inline constexpr std::size_t kContractPoints = 4001;

/// Uniform grid sampling of a real function. Values are immutable once built.
class GridFunction {
public:
    GridFunction(Domain domain, std::vector<double> values);

    /// Samples `f` at n_points uniformly spaced points of the window.
    static GridFunction sample(const Domain& domain, std::size_t n_points, const RealFunction& f);
    static GridFunction zeros(const Domain& domain, std::size_t n_points);

    const Domain& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return h_; }
    double x(std::size_t i) const noexcept { return domain_.x_min + static_cast<double>(i) * h_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    /// Same domain and number of points.
    bool same_grid(const GridFunction& other) const noexcept;

    /// Throws GridMismatch unless `other` lives on the same grid.
    void require_same_grid(const GridFunction& other) const;

private:
    Domain domain_;
    std::vector<double> values_;
    double h_;
};

/// Composite Simpson rule over equally spaced samples. An even number of
/// samples gets a 3/8-rule closing panel.
double simpson(std::span<const double> values, double h);

/// Composite trapezoidal rule.
double trapezoid(std::span<const double> values, double h);

/// Running integral F_i = int_{x_0}^{x_i} f, fourth-order per panel.
std::vector<double> cumulative_integral(std::span<const double> values, double h);

}  // namespace cesfp
