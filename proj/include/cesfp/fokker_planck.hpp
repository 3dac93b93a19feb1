#pragma once

#include "cesfp/ces_families.hpp"
#include "cesfp/grid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cesfp {

/// Spectral transition density m_t(x, x0) of the Fokker-Planck equation with
/// drift potential U and diffusion constant 1/2.
///
/// Unbroken SUSY: [psi_0^-(x)]^2 + e^{U(x0)-U(x)} sum_{n>=1} e^{-t E_n} psi_n(x) psi_n(x0).
/// Broken SUSY:   e^{U(x0)-U(x)} sum_{n>=0} e^{-t E_n} psi_n(x) psi_n(x0).
///
/// The sum keeps modes until e^{-t E_n} |psi_n|_inf^2 < tol/10 for three
/// consecutive n (at most kMaxModeIndex). The neglected tail is bounded by a
/// geometric series with ratio e^{-t dE}, dE = 1 (A) or 2 (B).
class TransitionDensity {
public:
    /// Throws TruncationFailure when `tol` is out of reach for this t.
    TransitionDensity(const CesParams& p, double t, double tol = 1e-10);

    double operator()(double x, double x0) const;

    /// m_t(x_i, x0) for many x with the x0 modes computed once.
    std::vector<double> evaluate(std::span<const double> xs, double x0) const;

    /// Samples m_t(., x0) on a grid.
    GridFunction on_grid(const Domain& domain, std::size_t n_points, double x0) const;

    const CesParams& params() const noexcept { return spectral_.params(); }
    double t() const noexcept { return t_; }
    int truncation_n() const noexcept { return truncation_n_; }
    double tail_bound() const noexcept { return tail_bound_; }

private:
    struct Point {
        std::vector<double> weighted;  // e^{-t E_n} psi_n(x0) (or psi_n(x))
        double drift;                  // U at the point
    };
    Point prepare(double x, bool weighted) const;
    double combine(const Point& at_x, const Point& at_x0, std::span<const double> modes_x) const;

    SpectralData spectral_;
    double t_;
    int first_mode_;
    int truncation_n_ = 0;
    double tail_bound_ = 0.0;
    std::vector<double> decay_;  // e^{-t E_n}
};

/// Convenience wrapper constructing a TransitionDensity for a single value.
double transition_density(const CesParams& p, double t, double x, double x0, double tol = 1e-10);

/// Sup norms of psi_0^- .. psi_{count-1}^- over the contract window.
std::vector<double> mode_sup_norms(const SpectralData& s, int count);

/// Stationary distribution [psi_0^-(x)]^2 of an unbroken (Family A) system.
class StationaryDensity {
public:
    explicit StationaryDensity(const CesParams& p);
    double operator()(double x) const;

    /// int_{-inf}^{x} of the density via the grid quadrature of `domain`.
    std::vector<double> cdf_on_grid(const Domain& domain, std::size_t n_points) const;

private:
    SpectralData spectral_;
};

/// Throws NotStationary for broken SUSY (Family B).
StationaryDensity stationary_density(const CesParams& p);

struct DecayMode {
    double rate;
    GridFunction mode;
};

/// Nonzero eigenvalues of H_- in ascending order with their modes on the contract grid.
std::vector<DecayMode> decay_spectrum(const CesParams& p, int count,
                                      std::size_t n_points = kContractPoints);

/// Decay rates after U -> -U: the spectrum {E_n^+} of H_+.
std::vector<double> inverted_drift_spectrum(const CesParams& p, int count);

enum class DriftShape { Metastable, Unstable };

const char* to_string(DriftShape s) noexcept;

struct ScanRow {
    double b;
    DriftShape shape;
    bool has_local_minimum;
    std::optional<double> min_location;
    std::optional<double> max_location;
};

/// Classifies the Family B drift potential for each b by the sign changes of
/// U' = W on (0, x_max]. Metastable iff a local maximum and a local minimum
/// both exist at finite x > 0.
std::vector<ScanRow> metastability_scan(double gamma, std::span<const double> b_grid,
                                        double x_max = 10.0, std::size_t n_points = kContractPoints);

/// Bisects for the b at which the classification switches from metastable
/// (at b_lo) to unstable (at b_hi). Throws PreconditionError if the bracket
/// does not straddle the switch.
double metastability_crossover(double gamma, double b_lo, double b_hi, double b_tol = 1e-10,
                               double x_max = 10.0, std::size_t n_points = kContractPoints);

}  // namespace cesfp
