#include "wwb/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wwb {

namespace {

constexpr double pi = 3.14159265358979323846264338328;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t& state) {
    return (double)(splitmix64(state) >> 11) * 0x1.0p-53;
}

ComplexPair random_small_field(int M, double amp, std::uint64_t& state) {
    ComplexPair c{SpectralField(M)};
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        const double r = amp * uniform01(state);
        const double th = two_pi * uniform01(state);
        c.u.set(k, std::polar(r, th));
    }
    return c;
}

}  // namespace

PolyHamiltonian compute_normal_form(int M) {
    if (M < 2) throw std::invalid_argument("compute_normal_form: M >= 2");
    const PolyHamiltonian H3 = build_hamiltonian(2 * M, 3);
    const PolyHamiltonian F3 = solve_cohomological(H3);
    PolyHamiltonian quartic = poisson_bracket(F3, H3, /*max_out_mode=*/M);
    quartic *= 0.5;
    quartic += build_hamiltonian(M, 4);
    PolyHamiltonian nf = project_kernel(quartic);
    nf.prune();
    return nf;
}

PolyHamiltonian explicit_hzd4(int M) {
    if (M < 1) throw std::invalid_argument("explicit_hzd4: M >= 1");
    PolyHamiltonian H;
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        const double k3 = std::pow(std::abs((double)k), 3.0);
        H.add(Monomial{{+1, k}, {+1, k}, {-1, k}, {-1, k}}, k3 / (4.0 * pi));
        // the k and -k summands accumulate onto the same canonical monomial,
        // so the |z_k|^2 |z_{-k}|^2 pair ends up with coefficient -|k|^3/pi
        H.add(Monomial{{+1, k}, {-1, k}, {+1, -k}, {-1, -k}}, -2.0 * k3 / (4.0 * pi));
    }
    for (int k1 = -M; k1 <= M; ++k1) {
        if (k1 == 0) continue;
        for (int k2 = -M; k2 <= M; ++k2) {
            if (k2 == 0 || (k1 > 0) != (k2 > 0) || std::abs(k2) >= std::abs(k1)) continue;
            const double w = std::abs((double)k1) * (double)k2 * k2 / pi;
            H.add(Monomial{{+1, -k1}, {-1, -k1}, {+1, k2}, {-1, k2}}, -w);
            H.add(Monomial{{+1, k1}, {-1, k1}, {+1, k2}, {-1, k2}}, w);
        }
    }
    return H;
}

std::vector<BfCoefficient> null_condition_of(const PolyHamiltonian& nf, int M) {
    std::vector<BfCoefficient> out;
    for (long b = 1; (b * b + b + 1) * (b * b + b + 1) <= M; ++b) {
        for (long lam = 1; lam * (b * b + b + 1) * (b * b + b + 1) <= M; ++lam) {
            for (long sign : {+1L, -1L}) {
                const auto t = resonance::benjamin_feir(sign * lam, b);
                SignedMode fs[4];
                for (int i = 0; i < 4; ++i) fs[i] = {t.e[i].sigma, t.e[i].mode};
                const Monomial m = Monomial::from_factors(fs, 4);
                out.push_back({sign * lam, b, std::abs(nf.coeff(m))});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const BfCoefficient& a, const BfCoefficient& x) {
        return std::pair(a.b, a.lambda) < std::pair(x.b, x.lambda);
    });
    return out;
}

std::vector<BfCoefficient> verify_null_condition(int M) {
    return null_condition_of(compute_normal_form(M), M);
}

NormalFormReport compare_with_explicit(const PolyHamiltonian& nf, int M, double tol) {
    NormalFormReport rep;
    rep.M = M;
    const PolyHamiltonian ex = explicit_hzd4(M);
    const double scale = std::max(ex.max_abs_coeff(), 1e-300);

    for (const auto& [m, c] : ex.terms()) {
        const double err = std::abs(nf.coeff(m) - c) / std::abs(c);
        rep.max_resonant_coeff_error = std::max(rep.max_resonant_coeff_error, err);
    }
    for (const auto& [m, c] : nf.terms()) {
        if (ex.coeff(m) != cpx(0, 0)) continue;
        rep.max_offresonant_leak = std::max(rep.max_offresonant_leak, std::abs(c) / scale);
    }

    std::uint64_t state = 0x5eedULL;
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexPair c = random_small_field(M, 0.1, state);
        const cpx a = evaluate(nf, c), b = evaluate(ex, c);
        const double denom = std::max({std::abs(a), std::abs(b), 1e-300});
        rep.max_value_mismatch =
            std::max(rep.max_value_mismatch, std::abs(a - b) / denom);
    }

    rep.bf = null_condition_of(nf, M);
    rep.pass = rep.max_resonant_coeff_error <= tol && rep.max_offresonant_leak <= tol &&
               rep.max_value_mismatch <= std::max(tol, 1e-12);
    return rep;
}

NormalFormReport verify_identity(int M, double tol) {
    if (tol < 0) throw std::invalid_argument("verify_identity: tol >= 0");
    return compare_with_explicit(compute_normal_form(M), M, tol);
}

double zd_frequency(int n, const std::map<int, double>& actions, int M) {
    if (n == 0) throw std::invalid_argument("zd_frequency: zero mode");
    int Mx = std::abs(n);
    for (const auto& [k, v] : actions) Mx = std::max(Mx, std::abs(k));
    if (M > 0) {
        if (M < Mx) throw std::invalid_argument("zd_frequency: actions beyond truncation");
        Mx = M;
    }
    const auto freqs = zd_frequencies(actions, Mx);
    for (const auto& [k, om] : freqs)
        if (k == n) return om;
    throw std::logic_error("zd_frequency: mode not found");
}

std::vector<std::pair<int, double>> zd_frequencies(const std::map<int, double>& actions, int M) {
    const PolyHamiltonian H4 = explicit_hzd4(M);
    const auto action_of = [&](int k) {
        auto it = actions.find(k);
        return it == actions.end() ? 0.0 : it->second;
    };
    std::vector<std::pair<int, double>> out;
    for (int n = -M; n <= M; ++n) {
        if (n == 0) continue;
        double om = omega(n);
        for (const auto& [m, c] : gradient_terms(H4, -1, n)) {
            // gradient monomial = u_n * prod_j (u_j conj(u_j)); its value at the
            // phase-zeroed configuration divided by z_n is c * prod I_j
            const int d = m.degree();
            std::vector<SignedMode> rest;
            bool stripped = false;
            for (int i = 0; i < d; ++i) {
                const SignedMode f = m.factor(i);
                if (!stripped && f.sigma == +1 && f.mode == n) {
                    stripped = true;
                    continue;
                }
                rest.push_back(f);
            }
            if (!stripped) throw std::logic_error("zd_frequencies: field is not diagonal");
            if (rest.size() % 2 != 0) throw std::logic_error("zd_frequencies: odd remainder");
            // remaining factors must pair as (+,j),(-,j)
            double prod = 1.0;
            std::vector<bool> used(rest.size(), false);
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (used[i]) continue;
                bool found = false;
                for (std::size_t j = i + 1; j < rest.size(); ++j) {
                    if (used[j]) continue;
                    if (rest[j].mode == rest[i].mode && rest[j].sigma == -rest[i].sigma) {
                        used[i] = used[j] = true;
                        prod *= action_of(rest[i].mode);
                        found = true;
                        break;
                    }
                }
                if (!found) throw std::logic_error("zd_frequencies: unpaired factor");
            }
            om += c.real() * prod;
        }
        out.push_back({n, om});
    }
    return out;
}

double zeta_value(const ComplexPair& c) {
    const int M = c.u.truncation();
    double z = 0.0;
    for (int n = -M; n <= M; ++n) {
        if (n == 0) continue;
        z += (double)n * std::abs((double)n) * std::norm(c.u.at(n));
    }
    return z / pi;
}

double zeta_value(const std::map<int, double>& actions) {
    double z = 0.0;
    for (const auto& [n, I] : actions) z += (double)n * std::abs((double)n) * I;
    return z / pi;
}

}  // namespace wwb
