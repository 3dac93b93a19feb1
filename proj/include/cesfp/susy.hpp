#pragma once

#include "cesfp/grid.hpp"

#include <cstddef>

namespace cesfp {

/// SUSY potential W with its derivative, defined on a configuration space.
struct SusyPotential {
    RealFunction w;
    RealFunction w_prime;
    Domain domain;
};

/// V_+ and V_- generated by a SUSY potential.
struct PartnerPotentials {
    RealFunction v_plus;
    RealFunction v_minus;
};

enum class SusyClass { Unbroken, Broken };

const char* to_string(SusyClass c) noexcept;

/// V_pm = (W^2 pm W') / 2.
PartnerPotentials partner_potentials(const SusyPotential& w);

/// Number of values at each end of a supercharge result computed with
/// second-order stencils; everything in between is fourth order.
inline constexpr std::size_t kSuperchargeEdgePoints = 2;

/// (A f)(x) = (f'(x) + W(x) f(x)) / sqrt(2). Needs at least 5 points.
GridFunction apply_supercharge_a(const SusyPotential& w, const GridFunction& f);

/// (A^dagger f)(x) = (-f'(x) + W(x) f(x)) / sqrt(2).
GridFunction apply_supercharge_adagger(const SusyPotential& w, const GridFunction& f);

/// H f = -f''/2 + V f with the second-order Laplacian and zero values
/// assumed just outside the window.
GridFunction apply_hamiltonian(const RealFunction& v, const GridFunction& f);

/// Decides whether exp(-int W) is square-integrable on the working window.
///
/// Throws InconclusiveWindow if the candidate zero mode still carries more
/// than 1e-8 of its mass in the outer 10% of the window yet decays there.
SusyClass classify_susy(const SusyPotential& w, std::size_t n_points = kContractPoints);

/// L2-normalised zero mode exp(-int_{x_ref}^x W) of H_-; x_ref = 0 on the real
/// line and 1 on the half line (or the nearest window edge).
GridFunction ground_state_unbroken(const SusyPotential& w, std::size_t n_points = kContractPoints);

}  // namespace cesfp
