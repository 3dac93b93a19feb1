#pragma once

#include "cesfp/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cesfp::oracles {

/// Symmetric tridiagonal discretisation of H = -1/2 d^2/dx^2 + V on the
/// interior points of a grid, Dirichlet at both window edges.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size diagonal.size() - 1
    double h = 0.0;
    Domain domain;

    std::size_t dimension() const noexcept { return diagonal.size(); }
};

/// Central-difference matrix: diagonal 1/h^2 + V(x_i), off-diagonal -1/(2h^2).
/// n_points counts the two boundary nodes; at least 101.
TridiagonalOperator discretize_hamiltonian(const RealFunction& v, const Domain& domain,
                                           std::size_t n_points);

/// Number of eigenvalues strictly below `lambda` (Sturm sequence count).
std::size_t sturm_count(const TridiagonalOperator& op, double lambda);

/// The `count` smallest eigenvalues by Sturm bisection to 1e-10 absolute.
/// Requires count <= dimension / 10.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t count);

/// Density after a Crank-Nicolson run together with the probability that
/// left through an absorbing edge.
struct FokkerPlanckSolution {
    GridFunction density;
    double mass;
    double absorbed;
};

/// Evolves dm/dt = 1/2 m'' + (W m)' from a normalised Gaussian of width 4h
/// centred at x0.
///
/// Fluxes use exponential fitting (Scharfetter-Gummel) with W evaluated at
/// cell faces, so the scheme is conservative and keeps e^{-2U} stationary.
/// Real-line windows are closed by zero flux at both ends. Half-line
/// windows hold the density at zero on x_min (absorbing; the outflow is
/// accumulated in `absorbed`) and use zero flux at x_max.
///
/// Throws MassLossError if mass + absorbed drifts from 1 by more than 1e-5.
FokkerPlanckSolution crank_nicolson_evolve(const RealFunction& drift, double x0, double t_final,
                                           const Domain& domain, std::size_t n_points,
                                           std::size_t n_steps);

enum class SdeScheme { EulerMaruyama };

struct McConfig {
    std::size_t n_paths = 100000;
    double dt = 5e-4;
    std::uint64_t seed = 42;
    SdeScheme scheme = SdeScheme::EulerMaruyama;
    unsigned n_threads = 0;  // 0: hardware concurrency

    void validate() const;
};

/// Piecewise cubic Hermite interpolant of f on [x_min, x_max] with direct
/// evaluation outside the table. Speeds up drift evaluation in path sampling.
class TabulatedFunction {
public:
    TabulatedFunction(const RealFunction& f, const RealFunction& f_prime, double x_min, double x_max,
                      std::size_t n_nodes);
    double operator()(double x) const;

private:
    RealFunction fallback_;
    double x_min_;
    double x_max_;
    double h_;
    std::vector<double> value_;
    std::vector<double> slope_;
};

/// Terminal positions of dX = -W(X) dt + dB_t with <dB^2> = dt.
///
/// Path i draws from its own std::mt19937_64 seeded with (seed, i) through
/// std::seed_seq, so results do not depend on the thread count. On a
/// half-line domain the paths are reflected at x_min.
std::vector<double> euler_maruyama_sample(const RealFunction& drift, double x0, double t_final,
                                          const McConfig& cfg, const Domain& domain);

/// Same as above with the interpolated drift inlined into the step loop.
std::vector<double> euler_maruyama_sample(const TabulatedFunction& drift, double x0, double t_final,
                                          const McConfig& cfg, const Domain& domain);

namespace compare {

/// max_i |f_i - g_i|.
double l_inf(const GridFunction& f, const GridFunction& g);

/// (int (f - g)^2 dx)^{1/2} by the trapezoidal rule.
double l2(const GridFunction& f, const GridFunction& g);

/// One-sample Kolmogorov-Smirnov statistic of `samples` against a reference
/// CDF tabulated on a grid (linear interpolation, 0 below and 1 above).
double ks(std::span<const double> samples, const GridFunction& reference_cdf);

}  // namespace compare

}  // namespace cesfp::oracles
