#include "wwb/spectral.hpp"

#include <cmath>
#include <cstdlib>

namespace wwb {

double omega(int k) {
    if (k == 0) throw std::invalid_argument("omega: zero mode");
    return std::sqrt(std::abs((double)k));
}

SpectralField::SpectralField(int truncation) : trunc_(truncation) {
    if (truncation < 1) throw std::invalid_argument("SpectralField: truncation must be >= 1");
    a_.assign(2 * truncation, cpx(0.0, 0.0));
}

int SpectralField::index_of(int k) const {
    return k < 0 ? k + trunc_ : k + trunc_ - 1;
}

cpx SpectralField::at(int k) const {
    if (k == 0) throw std::invalid_argument("SpectralField: zero mode is excluded");
    if (std::abs(k) > trunc_) return cpx(0.0, 0.0);
    return a_[index_of(k)];
}

void SpectralField::set(int k, cpx v) {
    if (k == 0) throw std::invalid_argument("SpectralField: zero mode is excluded");
    if (std::abs(k) > trunc_) throw std::out_of_range("SpectralField: mode beyond truncation");
    a_[index_of(k)] = v;
}

void SpectralField::add(int k, cpx v) {
    if (k == 0) throw std::invalid_argument("SpectralField: zero mode is excluded");
    if (std::abs(k) > trunc_) throw std::out_of_range("SpectralField: mode beyond truncation");
    a_[index_of(k)] += v;
}

bool SpectralField::conjugate_symmetric(double tol) const {
    for (int k = 1; k <= trunc_; ++k)
        if (std::abs(at(-k) - std::conj(at(k))) > tol) return false;
    return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (o.trunc_ != trunc_) throw std::invalid_argument("SpectralField: truncation mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (o.trunc_ != trunc_) throw std::invalid_argument("SpectralField: truncation mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& v : a_) v *= a;
    return *this;
}

SpectralField operator+(SpectralField f, const SpectralField& g) { return f += g; }
SpectralField operator-(SpectralField f, const SpectralField& g) { return f -= g; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0.0;
    const int M = f.truncation();
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        const double w = std::pow(std::abs((double)k), 2.0 * s);
        acc += w * std::norm(f.at(k));
    }
    return std::sqrt(acc);
}

SpectralField apply_multiplier(const SpectralField& f, const std::function<cpx(int)>& m) {
    const int M = f.truncation();
    SpectralField out(M);
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        out.set(k, m(k) * f.at(k));
    }
    return out;
}

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g,
                                int out_truncation) {
    const int Mf = f.truncation(), Mg = g.truncation();
    // Content of f*g lives in |k| <= Mf+Mg; analyzing mode k on an N-point
    // grid folds in the true modes k +- N, so N > Mf+Mg+out keeps the band clean.
    const int N = Mf + Mg + out_truncation + 1;
    std::vector<cpx> fx(N), gx(N);
    const double inv_s2p = 1.0 / std::sqrt(two_pi);
    for (int j = 0; j < N; ++j) {
        const double x = two_pi * j / N;
        cpx sf(0, 0), sg(0, 0);
        for (int k = -Mf; k <= Mf; ++k)
            if (k) sf += f.at(k) * std::polar(1.0, k * x);
        for (int k = -Mg; k <= Mg; ++k)
            if (k) sg += g.at(k) * std::polar(1.0, k * x);
        fx[j] = inv_s2p * sf;
        gx[j] = inv_s2p * sg;
    }
    SpectralField out(out_truncation);
    const double w = std::sqrt(two_pi) / N;
    for (int k = -out_truncation; k <= out_truncation; ++k) {
        if (k == 0) continue;
        cpx acc(0, 0);
        for (int j = 0; j < N; ++j) {
            const double x = two_pi * j / N;
            acc += fx[j] * gx[j] * std::polar(1.0, -k * x);
        }
        out.set(k, w * acc);
    }
    return out;
}

ComplexPair to_complex(const RealPair& p) {
    if (p.eta.truncation() != p.psi.truncation())
        throw std::invalid_argument("to_complex: truncation mismatch");
    const int M = p.eta.truncation();
    ComplexPair c{SpectralField(M)};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        const double a = std::pow(std::abs((double)k), 0.25);
        c.u.set(k, inv_sqrt2 * (p.eta.at(k) / a + cpx(0, 1) * a * p.psi.at(k)));
    }
    return c;
}

RealPair from_complex(const ComplexPair& c) {
    const int M = c.u.truncation();
    RealPair p{SpectralField(M), SpectralField(M)};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        const double a = std::pow(std::abs((double)k), 0.25);
        const cpx u = c.u.at(k), ubar = std::conj(c.u.at(-k));
        p.eta.set(k, inv_sqrt2 * a * (u + ubar));
        p.psi.set(k, cpx(0, -1) * inv_sqrt2 * (u - ubar) / a);
    }
    return p;
}

}  // namespace wwb
