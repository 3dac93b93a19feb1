#include "cesfp/oracles.hpp"

#include "cesfp/error.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

namespace cesfp::oracles {

TridiagonalOperator discretize_hamiltonian(const RealFunction& v, const Domain& domain,
                                           std::size_t n_points) {
    domain.validate();
    if (n_points < 101) throw PreconditionError("discretize_hamiltonian: need at least 101 points");
    TridiagonalOperator op;
    op.domain = domain;
    op.h = (domain.x_max - domain.x_min) / static_cast<double>(n_points - 1);
    const double inv_h2 = 1.0 / (op.h * op.h);
    const std::size_t dim = n_points - 2;
    op.diagonal.resize(dim);
    op.off_diagonal.assign(dim - 1, -0.5 * inv_h2);
    for (std::size_t i = 0; i < dim; ++i) {
        const double x = domain.x_min + static_cast<double>(i + 1) * op.h;
        const double vx = v(x);
        if (!std::isfinite(vx)) {
            throw DomainError("discretize_hamiltonian: V(" + std::to_string(x) + ") is not finite");
        }
        op.diagonal[i] = inv_h2 + vx;
    }
    return op;
}

std::size_t sturm_count(const TridiagonalOperator& op, double lambda) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < op.dimension(); ++i) {
        const double e2 = i > 0 ? op.off_diagonal[i - 1] * op.off_diagonal[i - 1] : 0.0;
        q = op.diagonal[i] - lambda - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) q = -1e-300;  // perturb off an exact pivot zero
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t count) {
    if (count > op.dimension() / 10) {
        throw PreconditionError("lowest_eigenvalues: count must not exceed dimension/10");
    }
    // Gershgorin bracket.
    double lo = op.diagonal[0];
    double hi = op.diagonal[0];
    for (std::size_t i = 0; i < op.dimension(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(op.off_diagonal[i - 1]);
        if (i + 1 < op.dimension()) r += std::abs(op.off_diagonal[i]);
        lo = std::min(lo, op.diagonal[i] - r);
        hi = std::max(hi, op.diagonal[i] + r);
    }
    constexpr double kTol = 1e-10;
    std::vector<double> out(count);
    double floor = lo;
    for (std::size_t k = 0; k < count; ++k) {
        double a = floor;
        double b = hi;
        // Invariant: sturm_count(a) <= k < sturm_count(b).
        while (b - a > kTol) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(op, mid) <= k) {
                a = mid;
            } else {
                b = mid;
            }
        }
        out[k] = 0.5 * (a + b);
        floor = a;
    }
    return out;
}

namespace {

// Bernoulli function z / (e^z - 1).
double bernoulli(double z) {
    if (std::abs(z) < 1e-10) return 1.0 - 0.5 * z;
    return z / std::expm1(z);
}

// Solves a tridiagonal system in place (Thomas algorithm); `rhs` receives the solution.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n);
    double denom = diag[0];
    c[0] = n > 1 ? upper[0] / denom : 0.0;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - lower[i] * c[i - 1];
        c[i] = i + 1 < n ? upper[i] / denom : 0.0;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace

FokkerPlanckSolution crank_nicolson_evolve(const RealFunction& drift, double x0, double t_final,
                                           const Domain& domain, std::size_t n_points,
                                           std::size_t n_steps) {
    domain.validate();
    if (n_points < 5 || n_steps < 1 || !(t_final > 0.0)) {
        throw PreconditionError("crank_nicolson_evolve: need n_points >= 5, n_steps >= 1, t > 0");
    }
    constexpr double kDiffusion = 0.5;
    const double h = (domain.x_max - domain.x_min) / static_cast<double>(n_points - 1);
    const double dt = t_final / static_cast<double>(n_steps);
    const bool absorbing = domain.kind == DomainKind::HalfLine;
    const std::size_t first = absorbing ? 1 : 0;  // first unknown node
    const std::size_t n = n_points - first;
    auto x_at = [&](std::size_t i) { return domain.x_min + static_cast<double>(i) * h; };

    // Face i sits between nodes i-1 and i (face 0 is the absorbing edge when present).
    // J_face = (D/h) [B(z) m_left - B(-z) m_right],  z = 2 h W(face).
    std::vector<double> b_pos(n_points, 0.0);
    std::vector<double> b_neg(n_points, 0.0);
    for (std::size_t f = 1; f < n_points; ++f) {
        const double z = 2.0 * h * drift(x_at(f) - 0.5 * h);
        if (!std::isfinite(z)) throw DomainError("crank_nicolson_evolve: drift is not finite");
        b_pos[f] = bernoulli(z);
        b_neg[f] = bernoulli(-z);
    }

    // L m for unknown k (node i = first + k).
    const double c = kDiffusion / (h * h);
    std::vector<double> lower(n, 0.0);
    std::vector<double> diag(n, 0.0);
    std::vector<double> upper(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = first + k;
        if (i > 0) {  // face between i-1 and i
            diag[k] -= c * b_neg[i];
            if (k > 0) lower[k] = c * b_pos[i];
        }
        if (i + 1 < n_points) {  // face between i and i+1
            diag[k] -= c * b_pos[i + 1];
            upper[k] = c * b_neg[i + 1];
        }
    }

    std::vector<double> m(n);
    const double sigma = 4.0 * h;
    double mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = (x_at(first + k) - x0) / sigma;
        m[k] = std::exp(-0.5 * d * d);
        mass += h * m[k];
    }
    if (!(mass > 0.0)) throw PreconditionError("crank_nicolson_evolve: x0 outside the window");
    for (double& v : m) v /= mass;

    std::vector<double> lhs_lower(n), lhs_diag(n), lhs_upper(n), rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
        lhs_lower[k] = -0.5 * dt * lower[k];
        lhs_diag[k] = 1.0 - 0.5 * dt * diag[k];
        lhs_upper[k] = -0.5 * dt * upper[k];
    }
    const double outflow_rate = absorbing ? c * h * b_neg[1] : 0.0;  // -J at face 1 per unit m_1
    double absorbed = 0.0;
    for (std::size_t step = 0; step < n_steps; ++step) {
        for (std::size_t k = 0; k < n; ++k) {
            double lm = diag[k] * m[k];
            if (k > 0) lm += lower[k] * m[k - 1];
            if (k + 1 < n) lm += upper[k] * m[k + 1];
            rhs[k] = m[k] + 0.5 * dt * lm;
        }
        const double before = m[0];
        solve_tridiagonal(lhs_lower, lhs_diag, lhs_upper, rhs);
        m.swap(rhs);
        absorbed += 0.5 * dt * outflow_rate * (before + m[0]);
    }

    std::vector<double> values(n_points, 0.0);
    mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        values[first + k] = m[k];
        mass += h * m[k];
    }
    if (std::abs(mass + absorbed - 1.0) > 1e-5) {
        throw MassLossError("crank_nicolson_evolve: mass + absorbed = " + std::to_string(mass + absorbed));
    }
    return {GridFunction(domain, std::move(values)), mass, absorbed};
}

void McConfig::validate() const {
    if (n_paths < 1 || !(dt > 0.0)) throw PreconditionError("McConfig: need n_paths >= 1 and dt > 0");
}

TabulatedFunction::TabulatedFunction(const RealFunction& f, const RealFunction& f_prime, double x_min,
                                     double x_max, std::size_t n_nodes)
    : fallback_(f), x_min_(x_min), x_max_(x_max), h_((x_max - x_min) / static_cast<double>(n_nodes - 1)) {
    if (n_nodes < 2 || !(x_min < x_max)) throw PreconditionError("TabulatedFunction: bad table");
    value_.resize(n_nodes);
    slope_.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double x = x_min + static_cast<double>(i) * h_;
        value_[i] = f(x);
        slope_[i] = f_prime(x);
    }
}

double TabulatedFunction::operator()(double x) const {
    if (!(x >= x_min_ && x < x_max_)) return fallback_(x);
    const double pos = (x - x_min_) / h_;
    const auto i = std::min(static_cast<std::size_t>(pos), value_.size() - 2);
    const double s = pos - static_cast<double>(i);
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * value_[i] + (s3 - 2.0 * s2 + s) * h_ * slope_[i] +
           (-2.0 * s3 + 3.0 * s2) * value_[i + 1] + (s3 - s2) * h_ * slope_[i + 1];
}

namespace {

template <typename Drift>
std::vector<double> sample_paths(const Drift& drift, double x0, double t_final, const McConfig& cfg,
                                 const Domain& domain) {
    cfg.validate();
    if (!(t_final > 0.0)) throw PreconditionError("euler_maruyama_sample: need t_final > 0");
    const auto n_steps = static_cast<std::size_t>(std::llround(t_final / cfg.dt));
    const double sqrt_dt = std::sqrt(cfg.dt);
    const bool reflect = domain.kind == DomainKind::HalfLine;
    const double wall = domain.x_min;
    constexpr double kBlowUp = 1e6;

    std::vector<double> out(cfg.n_paths);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t path = begin; path < end; ++path) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
            std::mt19937_64 rng(seq);
            normal.reset();
            double x = x0;
            for (std::size_t s = 0; s < n_steps; ++s) {
                x += -drift(x) * cfg.dt + sqrt_dt * normal(rng);
                if (reflect && x < wall) x = 2.0 * wall - x;
                if (!(std::abs(x) <= kBlowUp)) {
                    throw BlowUpError("euler_maruyama_sample: path " + std::to_string(path) + " diverged");
                }
            }
            out[path] = x;
        }
    };

    unsigned threads = cfg.n_threads != 0 ? cfg.n_threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n_paths));
    if (threads <= 1) {
        run_range(0, cfg.n_paths);
        return out;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = (cfg.n_paths + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(cfg.n_paths, t * chunk);
        const std::size_t end = std::min(cfg.n_paths, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

std::vector<double> euler_maruyama_sample(const RealFunction& drift, double x0, double t_final,
                                          const McConfig& cfg, const Domain& domain) {
    return sample_paths(drift, x0, t_final, cfg, domain);
}

std::vector<double> euler_maruyama_sample(const TabulatedFunction& drift, double x0, double t_final,
                                          const McConfig& cfg, const Domain& domain) {
    return sample_paths(drift, x0, t_final, cfg, domain);
}

namespace compare {

double l_inf(const GridFunction& f, const GridFunction& g) {
    f.require_same_grid(g);
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
    return d;
}

double l2(const GridFunction& f, const GridFunction& g) {
    f.require_same_grid(g);
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = (f[i] - g[i]) * (f[i] - g[i]);
    return std::sqrt(trapezoid(sq, f.spacing()));
}

double ks(std::span<const double> samples, const GridFunction& reference_cdf) {
    if (samples.empty()) throw PreconditionError("ks: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const Domain& d = reference_cdf.domain();
    const double h = reference_cdf.spacing();
    auto cdf = [&](double x) {
        if (x < d.x_min) return 0.0;
        if (x >= d.x_max) return 1.0;
        const double pos = (x - d.x_min) / h;
        const auto i = std::min(static_cast<std::size_t>(pos), reference_cdf.size() - 2);
        const double s = pos - static_cast<double>(i);
        return (1.0 - s) * reference_cdf[i] + s * reference_cdf[i + 1];
    };
    const double n = static_cast<double>(sorted.size());
    double stat = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        stat = std::max({stat, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return stat;
}

}  // namespace compare

}  // namespace cesfp::oracles
