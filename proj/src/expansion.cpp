#include "wwb/expansion.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace wwb {

namespace {

const double inv_s2pi = 1.0 / std::sqrt(two_pi);

// Dense line spectrum over modes -K..K, zero mode included.  Intermediate
// products carry a zero mode (e.g. the mean of eta^2) that must not be
// dropped before the final Galerkin projection.
struct Line {
    int K = 0;
    std::vector<cpx> c;

    explicit Line(int K_) : K(K_), c(2 * K_ + 1, cpx(0, 0)) {}
    cpx at(int k) const { return std::abs(k) > K ? cpx(0, 0) : c[k + K]; }
    void set(int k, cpx v) { c[k + K] = v; }
};

Line from_field(const SpectralField& f, int K) {
    Line l(K);
    const int M = f.truncation();
    for (int k = -M; k <= M; ++k)
        if (k) l.set(k, f.at(k));
    return l;
}

SpectralField to_field(const Line& l, int M) {
    SpectralField f(M);
    for (int k = -M; k <= M; ++k)
        if (k) f.set(k, l.at(k));
    return f;
}

template <class Mult>
Line mul(const Line& a, Mult m) {
    Line out(a.K);
    for (int k = -a.K; k <= a.K; ++k) out.set(k, m(k) * a.at(k));
    return out;
}

Line d_x(const Line& a) {
    return mul(a, [](int k) { return cpx(0, k); });
}
Line absD(const Line& a) {
    return mul(a, [](int k) { return cpx(std::abs(k), 0); });
}
Line d2(const Line& a) {  // D^2 = -d_xx, symbol k^2
    return mul(a, [](int k) { return cpx((double)k * k, 0); });
}
// (fg)_k = (2pi)^{-1/2} sum_{i+j=k} f_i g_j, exact.
Line conv(const Line& a, const Line& b, int Kout) {
    Line out(Kout);
    for (int k = -Kout; k <= Kout; ++k) {
        cpx acc(0, 0);
        const int ilo = std::max(-a.K, k - b.K), ihi = std::min(a.K, k + b.K);
        for (int i = ilo; i <= ihi; ++i) acc += a.at(i) * b.at(k - i);
        out.set(k, inv_s2pi * acc);
    }
    return out;
}

Line axpy(double alpha, const Line& a, const Line& b) {
    Line out(std::max(a.K, b.K));
    for (int k = -out.K; k <= out.K; ++k) out.set(k, alpha * a.at(k) + b.at(k));
    return out;
}

// Bony-Weyl paraproduct with a sharp admissible cutoff.  Every coefficient
// identity probed below is independent of the cutoff profile: the relevant
// entries have |xi'| comparable to <xi>, where any admissible chi vanishes.
constexpr double kParaDelta = 0.25;

Line op_bw(const Line& b, const Line& f, int Kout) {
    Line out(Kout);
    for (int k = -Kout; k <= Kout; ++k) {
        cpx acc(0, 0);
        for (int j = -f.K; j <= f.K; ++j) {
            const int m = k - j;
            if (std::abs(m) > b.K) continue;
            const double xi = 0.5 * (k + j);
            if (std::abs((double)m) > kParaDelta * std::sqrt(1.0 + xi * xi)) continue;
            acc += b.at(m) * f.at(j);
        }
        out.set(k, inv_s2pi * acc);
    }
    return out;
}

}  // namespace

SpectralField dn_apply(int order, const SpectralField& eta, const SpectralField& psi) {
    if (eta.truncation() != psi.truncation())
        throw std::invalid_argument("dn_apply: truncation mismatch");
    const int M = eta.truncation();
    if (order == 0) return apply_multiplier(psi, [](int k) { return cpx(std::abs(k), 0); });

    const int K = 2 * M;
    const Line leta = from_field(eta, M);
    const Line lpsi = from_field(psi, M);
    const Line Dpsi = absD(lpsi);

    if (order == 1) {
        // -d_x(eta d_x psi) - |D|(eta |D| psi)
        const Line t1 = d_x(conv(leta, d_x(lpsi), M));
        const Line t2 = absD(conv(leta, Dpsi, M));
        Line out(M);
        for (int k = -M; k <= M; ++k) out.set(k, -t1.at(k) - t2.at(k));
        return to_field(out, M);
    }
    if (order == 2) {
        const Line eta2 = conv(leta, leta, K);
        const Line p = d2(conv(eta2, Dpsi, M));
        const Line q = absD(conv(eta2, d2(lpsi), M));
        const Line inner = absD(conv(leta, Dpsi, K));
        const Line r = absD(conv(leta, inner, M));
        Line out(M);
        for (int k = -M; k <= M; ++k)
            out.set(k, -0.5 * (p.at(k) + q.at(k) - 2.0 * r.at(k)));
        return to_field(out, M);
    }
    throw std::invalid_argument("dn_apply: order must be 0, 1 or 2");
}

namespace {

struct UbarFactor {
    cpx coeff;
    SignedMode sm;
};

// eta_k = |k|^{1/4} (u_k + conj(u_{-k}))/sqrt2 ; psi_k = -i|k|^{-1/4}(u_k - conj(u_{-k}))/sqrt2
UbarFactor eta_part(int k, int s, double qr) {
    const double a = qr / std::sqrt(2.0);
    if (s > 0) return {cpx(a, 0), {+1, k}};
    return {cpx(a, 0), {-1, -k}};
}

UbarFactor psi_part(int k, int s, double qr) {
    const double a = 1.0 / (qr * std::sqrt(2.0));
    if (s > 0) return {cpx(0, -a), {+1, k}};
    return {cpx(0, a), {-1, -k}};
}

}  // namespace

PolyHamiltonian build_hamiltonian(int M, int degree) {
    if (M < 1) throw std::invalid_argument("build_hamiltonian: M >= 1");
    PolyHamiltonian H;

    if (degree == 2) {
        for (int j = -M; j <= M; ++j) {
            if (j == 0) continue;
            H.add(Monomial{{+1, j}, {-1, j}}, omega(j));
        }
        return H;
    }

    std::vector<double> qroot(M + 1);
    for (int k = 1; k <= M; ++k) qroot[k] = std::pow((double)k, 0.25);
    const auto qr = [&](int k) { return qroot[std::abs(k)]; };

    if (degree == 3) {
        // 1/2 int eta (psi_x^2 - (|D|psi)^2) dx: the bilinear symbol
        // -(k2 k3 + |k2 k3|) vanishes unless k2 k3 > 0.
        for (int k2 = -M; k2 <= M; ++k2) {
            if (k2 == 0) continue;
            for (int k3 = k2 > 0 ? 1 : -M; k3 <= (k2 > 0 ? M : -1); ++k3) {
                const int k1 = -k2 - k3;
                if (k1 == 0 || std::abs(k1) > M) continue;
                const double base = -inv_s2pi * (double)k2 * (double)k3;
                for (int s1 : {+1, -1})
                    for (int s2 : {+1, -1})
                        for (int s3 : {+1, -1}) {
                            const auto f1 = eta_part(k1, s1, qr(k1));
                            const auto f2 = psi_part(k2, s2, qr(k2));
                            const auto f3 = psi_part(k3, s3, qr(k3));
                            const SignedMode fs[3] = {f1.sm, f2.sm, f3.sm};
                            H.add(Monomial::from_factors(fs, 3),
                                  base * f1.coeff * f2.coeff * f3.coeff);
                        }
            }
        }
        H.prune();
        return H;
    }

    if (degree == 4) {
        // 1/2 int psi G2(eta) psi dx =
        //  -(1/4)(2pi)^{-1} sum [ k1^2|k4| + |k1|k4^2 - 2|k1||k4||k1+k2| ]
        //                        psi_{k1} eta_{k2} eta_{k3} psi_{k4}
        const double pref = -0.25 / two_pi;
        for (int k1 = -M; k1 <= M; ++k1) {
            if (k1 == 0) continue;
            for (int k2 = -M; k2 <= M; ++k2) {
                if (k2 == 0) continue;
                for (int k3 = -M; k3 <= M; ++k3) {
                    if (k3 == 0) continue;
                    const int k4 = -(k1 + k2 + k3);
                    if (k4 == 0 || std::abs(k4) > M) continue;
                    const double a1 = std::abs((double)k1), a4 = std::abs((double)k4);
                    const double mid = std::abs((double)(k1 + k2));
                    const double sym = (double)k1 * k1 * a4 + a1 * (double)k4 * k4 -
                                       2.0 * a1 * a4 * mid;
                    if (sym == 0.0) continue;
                    const double base = pref * sym;
                    for (int s1 : {+1, -1})
                        for (int s2 : {+1, -1})
                            for (int s3 : {+1, -1})
                                for (int s4 : {+1, -1}) {
                                    const auto f1 = psi_part(k1, s1, qr(k1));
                                    const auto f2 = eta_part(k2, s2, qr(k2));
                                    const auto f3 = eta_part(k3, s3, qr(k3));
                                    const auto f4 = psi_part(k4, s4, qr(k4));
                                    const SignedMode fs[4] = {f1.sm, f2.sm, f3.sm, f4.sm};
                                    H.add(Monomial::from_factors(fs, 4),
                                          base * f1.coeff * f2.coeff * f3.coeff * f4.coeff);
                                }
                }
            }
        }
        H.prune();
        return H;
    }
    throw std::invalid_argument("build_hamiltonian: degree must be 2, 3 or 4");
}

RealPair ww_rhs(const RealPair& p, int degree) {
    if (degree < 2 || degree > 4) throw std::invalid_argument("ww_rhs: degree in {2,3,4}");
    const int M = p.eta.truncation();
    const int K = 2 * M;
    const Line leta = from_field(p.eta, M);
    const Line lpsi = from_field(p.psi, M);
    const Line Dpsi = absD(lpsi);

    Line etadot(M), psidot(M);
    for (int k = -M; k <= M; ++k) {
        etadot.set(k, (double)std::abs(k) * lpsi.at(k));  // G0 psi
        psidot.set(k, -leta.at(k));
    }
    if (degree >= 3) {
        const Line g1a = d_x(conv(leta, d_x(lpsi), M));
        const Line g1b = absD(conv(leta, Dpsi, M));
        const Line px2 = conv(d_x(lpsi), d_x(lpsi), M);
        const Line dp2 = conv(Dpsi, Dpsi, M);
        for (int k = -M; k <= M; ++k) {
            etadot.set(k, etadot.at(k) - g1a.at(k) - g1b.at(k));
            psidot.set(k, psidot.at(k) - 0.5 * px2.at(k) + 0.5 * dp2.at(k));
        }
    }
    if (degree >= 4) {
        const Line eta2 = conv(leta, leta, K);
        const Line d2psi = d2(lpsi);
        const Line g2p = d2(conv(eta2, Dpsi, M));
        const Line g2q = absD(conv(eta2, d2psi, M));
        const Line dinner = absD(conv(leta, Dpsi, K));
        const Line g2r = absD(conv(leta, dinner, M));
        // dH4/deta = -eta (D^2 psi)(|D|psi) + (|D|psi) |D|(eta |D|psi)
        const Line cross = conv(d2psi, Dpsi, K);
        const Line va = conv(leta, cross, M);
        const Line vb = conv(Dpsi, dinner, M);
        for (int k = -M; k <= M; ++k) {
            etadot.set(k, etadot.at(k) - 0.5 * (g2p.at(k) + g2q.at(k) - 2.0 * g2r.at(k)));
            psidot.set(k, psidot.at(k) + va.at(k) - vb.at(k));
        }
    }
    return {to_field(etadot, M), to_field(psidot, M)};
}

RealPair rhs_quadratic(const RealPair& p) { return ww_rhs(p, 3); }

double ww_energy(const RealPair& p, int degree) {
    const int M = p.eta.truncation();
    SpectralField g = dn_apply(0, p.eta, p.psi);
    if (degree >= 3) g += dn_apply(1, p.eta, p.psi);
    if (degree >= 4) g += dn_apply(2, p.eta, p.psi);
    double acc = 0.0;
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        acc += 0.5 * (p.psi.at(k) * std::conj(g.at(k))).real();
        acc += 0.5 * std::norm(p.eta.at(k));
    }
    return acc;
}

namespace {

struct ProbeFields {
    Line eta, psi;
    ProbeFields(int K) : eta(K), psi(K) {}
};

// (eta, psi) of the probe with u supported on the given modes.
ProbeFields probe_fields(int K, const std::vector<std::pair<int, cpx>>& umodes) {
    Line u(K);
    for (auto [k, v] : umodes) u.set(k, v);
    ProbeFields f(K);
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        const double a = std::pow(std::abs((double)k), 0.25);
        const cpx uk = u.at(k), ubark = std::conj(u.at(-k));
        f.eta.set(k, a * (uk + ubark) / std::sqrt(2.0));
        f.psi.set(k, cpx(0, -1) * (uk - ubark) / (a * std::sqrt(2.0)));
    }
    return f;
}

Line functional_value(CoeffTag tag, const ProbeFields& f, int Kout, bool quadratic) {
    const Line& eta = f.eta;
    const Line& psi = f.psi;
    switch (tag) {
        case CoeffTag::V: {
            if (!quadratic) return d_x(psi);
            // d_x( OpBW(|D|psi) eta ) - (|D|psi) eta_x
            const Line t1 = d_x(op_bw(absD(psi), eta, Kout));
            const Line t2 = conv(absD(psi), d_x(eta), Kout);
            Line out(Kout);
            for (int k = -Kout; k <= Kout; ++k) out.set(k, t1.at(k) - t2.at(k));
            return out;
        }
        case CoeffTag::A: {
            if (!quadratic) return mul(absD(eta), [](int) { return cpx(-0.5, 0); });
            const Line Dpsi = absD(psi);
            Line out(Kout);
            const Line t1 = conv(eta, d2(eta), Kout);
            const Line t2 = absD(conv(eta, absD(eta), Kout));
            const Line t3 = absD(axpy(1.0, conv(d_x(psi), d_x(psi), Kout),
                                      conv(Dpsi, Dpsi, Kout)));
            const Line t4 = conv(Dpsi, d2(psi), Kout);
            const Line t5 = conv(d_x(psi), d_x(absD(psi)), Kout);
            for (int k = -Kout; k <= Kout; ++k)
                out.set(k, -0.5 * t1.at(k) + 0.5 * t2.at(k) - 0.25 * t3.at(k) +
                               0.5 * t4.at(k) + 0.5 * t5.at(k));
            return out;
        }
        case CoeffTag::F2: {
            if (!quadratic) throw std::invalid_argument("F2 has no linear part");
            const Line Dpsi = absD(psi);
            Line br1(Kout);
            {
                const Line t1 = absD(op_bw(Dpsi, eta, Kout));
                const Line t2 = d_x(conv(eta, d_x(psi), Kout));
                const Line t3 = absD(conv(eta, Dpsi, Kout));
                for (int k = -Kout; k <= Kout; ++k)
                    br1.set(k, t1.at(k) - t2.at(k) - t3.at(k));
            }
            Line br2(Kout);
            {
                const Line t1 = conv(d_x(psi), d_x(psi), Kout);
                const Line t2 = conv(Dpsi, Dpsi, Kout);
                const Line t3 = op_bw(absD(eta), eta, Kout);
                const Line t4 = op_bw(Dpsi, Dpsi, Kout);
                for (int k = -Kout; k <= Kout; ++k)
                    br2.set(k, -0.5 * t1.at(k) + 0.5 * t2.at(k) + t3.at(k) - t4.at(k));
            }
            Line ifv(Kout);
            const double is2 = 1.0 / std::sqrt(2.0);
            for (int k = -Kout; k <= Kout; ++k) {
                if (k == 0) {
                    ifv.set(k, cpx(0, 0));
                    continue;
                }
                const double a = std::pow(std::abs((double)k), 0.25);
                ifv.set(k, is2 * br1.at(k) / a + cpx(0, 1) * is2 * a * br2.at(k));
            }
            // the displayed field is i F2; the coefficient tables are for F2
            return mul(ifv, [](int) { return cpx(0, -1); });
        }
    }
    throw std::logic_error("functional_value: unknown tag");
}

}  // namespace

cpx extract_linear(CoeffTag tag, int sigma, int n) {
    if (n == 0) throw std::invalid_argument("extract_linear: zero mode");
    const int K = 2 * std::abs(n) + 2;
    const auto f = probe_fields(K, {{n, cpx(1, 0)}});
    const Line out = functional_value(tag, f, K, false);
    // linear expansion carries e^{i sigma n x}/sqrt(2pi): table entry equals
    // the standard output coefficient at mode sigma*n
    return out.at(sigma > 0 ? n : -n);
}

cpx extract_bilinear(CoeffTag tag, int n1, int sigma1, int n2, int sigma2) {
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("extract_bilinear: zero mode");
    const int K = 2 * (std::abs(n1) + std::abs(n2)) + 2;
    const int mout = sigma1 * n1 + sigma2 * n2;

    const int P = 5;  // separates theta signatures in [-2,2]
    cpx acc(0, 0);
    if (n1 == n2) {
        // single-mode probe; target signature is sigma1+sigma2
        const int sig = sigma1 + sigma2;
        for (int a = 0; a < P; ++a) {
            const double th = two_pi * a / P;
            const auto f = probe_fields(K, {{n1, std::polar(1.0, th)}});
            const Line out = functional_value(tag, f, K, true);
            acc += out.at(mout) * std::polar(1.0, -sig * th);
        }
        acc /= (double)P;
    } else {
        for (int a = 0; a < P; ++a)
            for (int b = 0; b < P; ++b) {
                const double t1 = two_pi * a / P, t2 = two_pi * b / P;
                const auto f = probe_fields(
                    K, {{n1, std::polar(1.0, t1)}, {n2, std::polar(1.0, t2)}});
                const Line out = functional_value(tag, f, K, true);
                acc += out.at(mout) * std::polar(1.0, -(sigma1 * t1 + sigma2 * t2));
            }
        acc /= (double)(P * P);
    }
    // quadratic expansion carries e^{imx}/(2pi) = (2pi)^{-1/2} e^{imx}/sqrt(2pi)
    return std::sqrt(two_pi) * acc;
}

}  // namespace wwb
