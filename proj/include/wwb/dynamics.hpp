// Time integration of the truncated water-waves flow and of the integrable
// normal-form flow, with invariant tracking and blowup guards.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wwb/birkhoff.hpp"
#include "wwb/spectral.hpp"

namespace wwb {

struct IntegratorConfig {
    enum class Scheme { RK4, ImplicitMidpoint };
    Scheme scheme = Scheme::ImplicitMidpoint;
    double dt = 0.01;
    double T = 1.0;
    int record_every = 10;
    std::vector<double> norm_s = {0.0};
    bool record_actions = false;
    double fp_tol = 1e-13;  // midpoint fixed-point residual
    int fp_maxit = 50;
    double blowup_factor = 10.0;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::vector<double>> norms;  // norms[i][j]: norm_s[i] at times[j]
    std::vector<double> energy;
    std::vector<double> momentum;  // sum_k k |u_k|^2
    std::vector<int> action_modes;
    std::vector<std::vector<double>> actions;  // actions[j][i]: |u_{mode i}|^2 at times[j]
    bool aborted = false;
    std::string abort_reason;
    ComplexPair last_state;
};

// Flow of the degree-(<= degree) truncated Hamiltonian.  degree=2 integrates
// the bare linear flow (test hook); 3 and 4 add the cubic/quartic terms.
TrajectoryRecord integrate_ww(const ComplexPair& initial, int degree,
                              const IntegratorConfig& cfg);

// z_n(T) = exp(-i Omega_n(I) T) z_n(0) with the conserved initial actions.
ComplexPair integrate_zd_exact(const ComplexPair& initial, double T);

// Numerical integration of X_{H_C^(2) + H_ZD^(4)}.
TrajectoryRecord integrate_zd_numeric(const ComplexPair& initial,
                                      const IntegratorConfig& cfg);

struct NormGrowthSummary {
    double ratio_max = 1.0;  // sup_t ||u(t)||_s / ||u(0)||_s
    double t_reached = 0.0;
    double t_target = 0.0;
    bool aborted = false;
};

// Exploratory long-horizon run from a random datum of size eps; never a hard
// assert.  Stops at min(horizon, eps^-3), blowup or the wall-clock budget.
NormGrowthSummary norm_growth_experiment(double eps, double s, int M, double horizon,
                                         IntegratorConfig cfg,
                                         double wall_budget_seconds);

// |u_k| proportional to eps * exp(-|k|/4) with seeded pseudorandom phases,
// normalized so the homogeneous H^s norm equals eps.
ComplexPair random_field(int M, double eps, double s, std::uint64_t seed);

// Columns: t, one norm column per configured s, energy, momentum, then
// optional per-mode action columns I_<k>.
void write_trajectory_csv(const TrajectoryRecord& rec, const IntegratorConfig& cfg,
                          std::ostream& os);

}  // namespace wwb
