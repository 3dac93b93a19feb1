#pragma once

#include "cesfp/grid.hpp"
#include "cesfp/susy.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cesfp {

/// The two conditionally exactly solvable families built on a shape-invariant seed.
///
/// Family A: seed W = x on the real line (harmonic oscillator partner,
/// unbroken SUSY). Family B: seed W = x + gamma/x on the half line (radial
/// oscillator partner, broken SUSY).
enum class Family { A, B };

const char* to_string(Family f) noexcept;

/// Parameters of one system. `beta` is used by Family A only, `gamma` by Family B only.
/// Build through validate_params(); the aggregate is public so that bound
/// studies can evaluate deliberately invalid points with u_value().
struct CesParams {
    Family family = Family::A;
    double b = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Largest admissible |beta| for Family A: 2 Gamma(b/4+1) / Gamma((b+2)/4).
double beta_bound(double b);

/// Checks the positivity bounds. Throws BoundViolation naming the first
/// violated bound together with its limit and the offending value.
CesParams validate_params(Family family, double b, double beta = 0.0, double gamma = 0.0);

/// Working window used by the quadratures and checks of each family:
/// [-8, 8] for A, [1e-4, 10] for B.
Domain contract_domain(Family family);

struct UValue {
    double u;
    double u_prime;
};

/// u and u' without any positivity check (Family B requires x > 0).
UValue u_value(const CesParams& p, double x);

/// u and u'; throws PositivityLoss if u(x) <= 0.
UValue u_eval(const CesParams& p, double x);

/// The positive solution u of u'' + 2 Phi u' - b u = 0 for validated parameters.
class UFunction {
public:
    /// Verifies u > 0 on the contract window (4001 points).
    explicit UFunction(const CesParams& p);

    const CesParams& params() const noexcept { return params_; }
    UValue operator()(double x) const { return u_eval(params_, x); }

    /// u'(x) / u(x).
    double log_derivative(double x) const;

    /// log u(x), evaluated without forming u on the half line.
    double log_u(double x) const;

private:
    CesParams params_;
};

/// Seed potential Phi and its derivative.
double seed_phi(const CesParams& p, double x);
double seed_phi_prime(const CesParams& p, double x);

/// W = Phi + u'/u; W' is taken from the ODE for u (no second derivative of 1F1).
SusyPotential susy_potential(const CesParams& p);

/// Closed-form V_+: (x^2+b+1)/2 for A, x^2/2 + gamma(gamma-1)/(2x^2) + gamma + (b+1)/2 for B.
double v_plus(const CesParams& p, double x);

/// Closed-form V_- built from u'/u.
double v_minus(const CesParams& p, double x);

/// Drift potential U with U' = W: x^2/2 + log u for A,
/// -x^2/2 + gamma log x + log 1F1(gamma+(b+2)/4; gamma+1/2; x^2) for B.
double drift_potential(const CesParams& p, double x);

/// Eigenvalues of H_- and H_+.
double energy_minus(const CesParams& p, int n);
double energy_plus(const CesParams& p, int n);

SusyClass susy_class(Family f) noexcept;

/// Largest mode index the pointwise evaluators support.
inline constexpr int kMaxModeIndex = 200;

/// Closed-form spectral data of H_- and H_+ for one validated system.
///
/// H_+ eigenfunctions are the oscillator (A) or radial-oscillator (B)
/// states. H_- eigenfunctions are A^dagger psi_n^+ / sqrt(E_n^+), with the
/// zero mode exp(-x^2/2)/u for Family A.
class SpectralData {
public:
    explicit SpectralData(const CesParams& p);

    const CesParams& params() const noexcept { return u_.params(); }
    const UFunction& u() const noexcept { return u_; }
    SusyClass susy_class() const noexcept { return cesfp::susy_class(params().family); }

    double energy_minus(int n) const { return cesfp::energy_minus(params(), n); }
    double energy_plus(int n) const { return cesfp::energy_plus(params(), n); }

    double psi_minus(int n, double x) const;
    double psi_plus(int n, double x) const;

    /// Fills out[n] = psi_n^-(x) for n = 0 .. out.size()-1 in one recurrence pass.
    void modes_minus(double x, std::span<double> out) const;
    void modes_plus(double x, std::span<double> out) const;

private:
    UFunction u_;
    double ground_norm_ = 0.0;          // Family A zero-mode normalisation
    std::vector<double> log_norm_plus_;  // Family B log normalisation of psi_n^+
};

/// psi_n^- sampled on a grid and normalised by quadrature (n <= 50).
GridFunction eigenfunction_minus(const CesParams& p, int n, const Domain& domain,
                                 std::size_t n_points = kContractPoints);

/// Closed-form psi_n^+ sampled on a grid (n <= 50).
GridFunction eigenfunction_plus(const CesParams& p, int n, const Domain& domain,
                                std::size_t n_points = kContractPoints);

}  // namespace cesfp
