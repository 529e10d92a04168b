#include "wwb/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include "wwb/expansion.hpp"

namespace wwb {

namespace {

using Vec = std::vector<cpx>;
using Rhs = std::function<void(const Vec&, Vec&)>;

double sup_abs(const Vec& v) {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void rk4_step(const Rhs& f, Vec& y, double dt, Vec& k1, Vec& k2, Vec& k3, Vec& k4, Vec& tmp) {
    const std::size_t n = y.size();
    f(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

bool midpoint_step(const Rhs& f, Vec& y, double dt, double tol, int maxit, Vec& w, Vec& fw) {
    const std::size_t n = y.size();
    // solve w = y + (dt/2) f(w) by fixed point, then y <- 2w - y
    f(y, fw);
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + 0.5 * dt * fw[i];
    double res = 1e300;
    for (int it = 0; it < maxit; ++it) {
        f(w, fw);
        res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cpx wn = y[i] + 0.5 * dt * fw[i];
            res = std::max(res, std::abs(wn - w[i]));
            w[i] = wn;
        }
        if (res <= tol) break;
    }
    if (res > tol) return false;
    for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * w[i] - y[i];
    return true;
}

struct Recorder {
    const IntegratorConfig& cfg;
    int M;
    TrajectoryRecord rec;

    Recorder(const IntegratorConfig& c, int M_) : cfg(c), M(M_) {
        rec.norms.resize(cfg.norm_s.size());
        if (cfg.record_actions)
            for (int k = -M; k <= M; ++k)
                if (k) rec.action_modes.push_back(k);
    }

    void push(double t, const ComplexPair& c, double energy) {
        rec.times.push_back(t);
        for (std::size_t i = 0; i < cfg.norm_s.size(); ++i)
            rec.norms[i].push_back(sobolev_norm(c.u, cfg.norm_s[i]));
        rec.energy.push_back(energy);
        double mom = 0;
        for (int k = -M; k <= M; ++k)
            if (k) mom += (double)k * std::norm(c.u.at(k));
        rec.momentum.push_back(mom);
        if (cfg.record_actions) {
            std::vector<double> act;
            act.reserve(rec.action_modes.size());
            for (int k : rec.action_modes) act.push_back(std::norm(c.u.at(k)));
            rec.actions.push_back(std::move(act));
        }
    }
};

// Generic driver; `state_to_pair` converts the flat state to the complex
// field for recording, `energy_of` evaluates the conserved Hamiltonian.
TrajectoryRecord drive(Vec y, int M, const Rhs& rhs, const IntegratorConfig& cfg,
                       const std::function<ComplexPair(const Vec&)>& state_to_pair,
                       const std::function<double(const Vec&)>& energy_of,
                       double wall_budget_seconds = 0.0, double* t_reached = nullptr) {
    if (cfg.dt <= 0 || cfg.T <= 0 || cfg.dt >= cfg.T)
        throw std::invalid_argument("integrate: need 0 < dt < T");
    const long nsteps = std::lround(cfg.T / cfg.dt);
    Recorder recorder(cfg, M);

    const ComplexPair c0 = state_to_pair(y);
    const double guard0 = sobolev_norm(c0.u, cfg.norm_s.empty() ? 0.0 : cfg.norm_s[0]);
    recorder.push(0.0, c0, energy_of(y));

    Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    Vec last_valid = y;
    const auto t_start = std::chrono::steady_clock::now();

    for (long step = 1; step <= nsteps; ++step) {
        if (cfg.scheme == IntegratorConfig::Scheme::RK4) {
            rk4_step(rhs, y, cfg.dt, k1, k2, k3, k4, tmp);
        } else {
            if (!midpoint_step(rhs, y, cfg.dt, cfg.fp_tol, cfg.fp_maxit, k1, k2)) {
                recorder.rec.aborted = true;
                recorder.rec.abort_reason = "implicit midpoint failed to converge";
                y = last_valid;
                break;
            }
        }
        const double t = step * cfg.dt;
        if (t_reached) *t_reached = t;
        const bool at_record = (step % cfg.record_every == 0) || step == nsteps;
        if (!at_record) continue;

        if (!std::isfinite(sup_abs(y))) {
            recorder.rec.aborted = true;
            recorder.rec.abort_reason = "non-finite state";
            y = last_valid;
            break;
        }
        const ComplexPair c = state_to_pair(y);
        const double g = sobolev_norm(c.u, cfg.norm_s.empty() ? 0.0 : cfg.norm_s[0]);
        if (g > cfg.blowup_factor * guard0) {
            recorder.rec.aborted = true;
            recorder.rec.abort_reason = "norm guard exceeded";
            break;
        }
        recorder.push(t, c, energy_of(y));
        last_valid = y;
        if (wall_budget_seconds > 0) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                    .count();
            if (elapsed > wall_budget_seconds) break;
        }
    }
    recorder.rec.last_state = state_to_pair(y);
    return recorder.rec;
}

// flat layout for the real flow: [eta modes..., psi modes...]
Vec pack(const RealPair& p) {
    Vec y(p.eta.raw().size() + p.psi.raw().size());
    std::copy(p.eta.raw().begin(), p.eta.raw().end(), y.begin());
    std::copy(p.psi.raw().begin(), p.psi.raw().end(), y.begin() + p.eta.raw().size());
    return y;
}

RealPair unpack(const Vec& y, int M) {
    RealPair p{SpectralField(M), SpectralField(M)};
    std::copy(y.begin(), y.begin() + 2 * M, p.eta.raw().begin());
    std::copy(y.begin() + 2 * M, y.end(), p.psi.raw().begin());
    return p;
}

}  // namespace

TrajectoryRecord integrate_ww(const ComplexPair& initial, int degree,
                              const IntegratorConfig& cfg) {
    const int M = initial.u.truncation();
    const double n0 = sobolev_norm(initial.u, 0.0);
    if (n0 > 0.5) throw std::invalid_argument("integrate_ww: amplitude guard (norm <= 0.5)");
    const RealPair p0 = from_complex(initial);

    const Rhs rhs = [M, degree](const Vec& y, Vec& dy) {
        const RealPair d = ww_rhs(unpack(y, M), degree);
        dy = pack(d);
    };
    const auto to_pair = [M](const Vec& y) { return to_complex(unpack(y, M)); };
    const auto energy = [M, degree](const Vec& y) { return ww_energy(unpack(y, M), degree); };
    return drive(pack(p0), M, rhs, cfg, to_pair, energy);
}

ComplexPair integrate_zd_exact(const ComplexPair& initial, double T) {
    const int M = initial.u.truncation();
    std::map<int, double> actions;
    for (int k = -M; k <= M; ++k)
        if (k) actions[k] = std::norm(initial.u.at(k));
    const auto freqs = zd_frequencies(actions, M);
    ComplexPair out{SpectralField(M)};
    for (const auto& [n, om] : freqs)
        out.u.set(n, initial.u.at(n) * std::polar(1.0, -om * T));
    return out;
}

TrajectoryRecord integrate_zd_numeric(const ComplexPair& initial,
                                      const IntegratorConfig& cfg) {
    const int M = initial.u.truncation();
    PolyHamiltonian H = build_hamiltonian(M, 2);
    H += explicit_hzd4(M);
    const VectorField X = hamiltonian_vector_field(H, M);

    const Rhs rhs = [M, &X](const Vec& y, Vec& dy) {
        ComplexPair c{SpectralField(M)};
        c.u.raw() = y;
        dy = X.apply(c).raw();
    };
    const auto to_pair = [M](const Vec& y) {
        ComplexPair c{SpectralField(M)};
        c.u.raw() = y;
        return c;
    };
    const auto energy = [M, &H](const Vec& y) {
        ComplexPair c{SpectralField(M)};
        c.u.raw() = y;
        return evaluate(H, c).real();
    };
    return drive(initial.u.raw(), M, rhs, cfg, to_pair, energy);
}

ComplexPair random_field(int M, double eps, double s, std::uint64_t seed) {
    std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
    const auto next = [&state]() {
        std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return (double)((x ^ (x >> 31)) >> 11) * 0x1.0p-53;
    };
    ComplexPair c{SpectralField(M)};
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        c.u.set(k, std::polar(std::exp(-std::abs((double)k) / 4.0), two_pi * next()));
    }
    const double nrm = sobolev_norm(c.u, s);
    c.u *= eps / nrm;
    return c;
}

NormGrowthSummary norm_growth_experiment(double eps, double s, int M, double horizon,
                                         IntegratorConfig cfg,
                                         double wall_budget_seconds) {
    if (eps < 0 || eps > 0.1)
        throw std::invalid_argument("norm_growth_experiment: eps in [0, 0.1]");
    NormGrowthSummary sum;
    if (eps == 0.0) {
        sum.ratio_max = 1.0;
        return sum;
    }
    const ComplexPair u0 = random_field(M, eps, s, 0x77feedULL);
    sum.t_target = std::min(horizon, std::pow(eps, -3.0));
    cfg.T = sum.t_target;
    cfg.norm_s = {s};

    const RealPair p0 = from_complex(u0);
    const Rhs rhs = [M](const Vec& y, Vec& dy) { dy = pack(ww_rhs(unpack(y, M), 4)); };
    const auto to_pair = [M](const Vec& y) { return to_complex(unpack(y, M)); };
    const auto energy = [M](const Vec& y) { return ww_energy(unpack(y, M), 4); };

    double t_reached = 0.0;
    TrajectoryRecord rec =
        drive(pack(p0), M, rhs, cfg, to_pair, energy, wall_budget_seconds, &t_reached);
    const double base = rec.norms[0].front();
    for (double v : rec.norms[0]) sum.ratio_max = std::max(sum.ratio_max, v / base);
    sum.t_reached = rec.times.back();
    sum.aborted = rec.aborted;
    return sum;
}

void write_trajectory_csv(const TrajectoryRecord& rec, const IntegratorConfig& cfg,
                          std::ostream& os) {
    os << "t";
    for (double s : cfg.norm_s) {
        char buf[48];
        std::snprintf(buf, sizeof buf, ",norm_%g", s);
        os << buf;
    }
    os << ",energy,momentum";
    for (int k : rec.action_modes) os << ",I_" << k;
    os << '\n';
    char buf[64];
    for (std::size_t j = 0; j < rec.times.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", rec.times[j]);
        os << buf;
        for (std::size_t i = 0; i < rec.norms.size(); ++i) {
            std::snprintf(buf, sizeof buf, ",%.17g", rec.norms[i][j]);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g", rec.energy[j], rec.momentum[j]);
        os << buf;
        if (!rec.actions.empty())
            for (double a : rec.actions[j]) {
                std::snprintf(buf, sizeof buf, ",%.17g", a);
                os << buf;
            }
        os << '\n';
    }
}

}  // namespace wwb
