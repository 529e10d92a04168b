#include "wwb/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wwb {

namespace {

constexpr int kMaxMode = 16383;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint16_t Monomial::encode(SignedMode f) {
    if (f.mode == 0) throw std::invalid_argument("Monomial: zero mode");
    if (std::abs(f.mode) > kMaxMode) throw std::out_of_range("Monomial: mode too large");
    if (f.sigma != 1 && f.sigma != -1) throw std::invalid_argument("Monomial: sigma must be +-1");
    const std::uint32_t pos = f.mode > 0 ? 2u * f.mode - 1u : 2u * (std::uint32_t)(-f.mode);
    return (std::uint16_t)((pos << 1) | (f.sigma < 0 ? 1u : 0u));
}

SignedMode Monomial::decode(std::uint16_t code) {
    const int sigma = (code & 1u) ? -1 : 1;
    const std::uint32_t pos = code >> 1;
    const int mode = (pos & 1u) ? (int)((pos + 1) / 2) : -(int)(pos / 2);
    return {sigma, mode};
}

Monomial::Monomial(std::initializer_list<SignedMode> fs) {
    codes_.fill(0);
    if ((int)fs.size() > max_degree) throw std::invalid_argument("Monomial: degree too large");
    int i = max_degree - (int)fs.size();
    for (const auto& f : fs) codes_[i++] = encode(f);
    std::sort(codes_.begin(), codes_.end());
}

Monomial Monomial::from_factors(const SignedMode* f, int n) {
    if (n > max_degree) throw std::invalid_argument("Monomial: degree too large");
    Monomial m;
    for (int i = 0; i < n; ++i) m.codes_[max_degree - n + i] = encode(f[i]);
    std::sort(m.codes_.begin(), m.codes_.end());
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto c : codes_)
        if (c) ++d;
    return d;
}

SignedMode Monomial::factor(int i) const {
    const int d = degree();
    if (i < 0 || i >= d) throw std::out_of_range("Monomial: factor index");
    return decode(codes_[max_degree - d + i]);
}

long Monomial::momentum() const {
    long m = 0;
    for (auto c : codes_) {
        if (!c) continue;
        const SignedMode f = decode(c);
        m += (long)f.sigma * f.mode;
    }
    return m;
}

double Monomial::sigma_omega() const {
    double s = 0.0;
    for (auto c : codes_) {
        if (!c) continue;
        const SignedMode f = decode(c);
        s += f.sigma * omega(f.mode);
    }
    return s;
}

Monomial Monomial::conjugate_flip() const {
    Monomial m;
    int i = 0;
    for (auto c : codes_) {
        if (!c) continue;
        SignedMode f = decode(c);
        f.sigma = -f.sigma;
        m.codes_[i++] = encode(f);
    }
    // move the filled prefix to the tail and sort
    std::rotate(m.codes_.begin(), m.codes_.begin() + i, m.codes_.end());
    std::sort(m.codes_.begin(), m.codes_.end());
    return m;
}

resonance::SignedTuple Monomial::tuple() const {
    resonance::SignedTuple t;
    for (auto c : codes_) {
        if (!c) continue;
        const SignedMode f = decode(c);
        t.e.push_back({f.sigma, f.mode});
    }
    return t;
}

int Monomial::max_abs_mode() const {
    int mx = 0;
    for (auto c : codes_) {
        if (!c) continue;
        mx = std::max(mx, std::abs(decode(c).mode));
    }
    return mx;
}

bool Monomial::operator<(const Monomial& o) const { return codes_ < o.codes_; }

std::uint64_t Monomial::hash_value() const {
    std::uint64_t lo = 0, hi = 0;
    for (int i = 0; i < 4; ++i) lo = (lo << 16) | codes_[i];
    for (int i = 4; i < max_degree; ++i) hi = (hi << 16) | codes_[i];
    return splitmix64(lo) ^ (splitmix64(hi + 0x632be59bd9b4e019ULL) << 1);
}

void PolyHamiltonian::add(const Monomial& m, cpx c) {
    if (m.degree() == 0) throw std::invalid_argument("PolyHamiltonian: empty monomial");
    if (m.momentum() != 0)
        throw std::invalid_argument("PolyHamiltonian: monomial violates momentum conservation");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
}

void PolyHamiltonian::prune(double eps) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < eps)
            it = terms_.erase(it);
        else
            ++it;
    }
}

cpx PolyHamiltonian::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cpx(0, 0) : it->second;
}

std::vector<int> PolyHamiltonian::degrees() const {
    std::vector<int> ds;
    for (const auto& [m, c] : terms_) {
        const int d = m.degree();
        if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int PolyHamiltonian::max_abs_mode() const {
    int mx = 0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, m.max_abs_mode());
    return mx;
}

double PolyHamiltonian::max_abs_coeff() const {
    double mx = 0.0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, std::abs(c));
    return mx;
}

PolyHamiltonian PolyHamiltonian::restricted(int M) const {
    PolyHamiltonian out;
    for (const auto& [m, c] : terms_)
        if (m.max_abs_mode() <= M) out.add(m, c);
    return out;
}

PolyHamiltonian PolyHamiltonian::conjugate_flipped() const {
    PolyHamiltonian out;
    for (const auto& [m, c] : terms_) out.add(m.conjugate_flip(), std::conj(c));
    return out;
}

bool PolyHamiltonian::is_real(double tol) const {
    const double scale = std::max(1.0, max_abs_coeff());
    for (const auto& [m, c] : terms_) {
        if (std::abs(coeff(m.conjugate_flip()) - std::conj(c)) > tol * scale) return false;
    }
    return true;
}

PolyHamiltonian& PolyHamiltonian::operator+=(const PolyHamiltonian& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

PolyHamiltonian& PolyHamiltonian::operator*=(double a) {
    for (auto& [m, c] : terms_) c *= a;
    return *this;
}

std::vector<std::pair<Monomial, cpx>> PolyHamiltonian::sorted_terms() const {
    std::vector<std::pair<Monomial, cpx>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

PolyHamiltonian operator+(PolyHamiltonian a, const PolyHamiltonian& b) { return a += b; }
PolyHamiltonian operator*(double a, PolyHamiltonian h) { return h *= a; }

cpx evaluate(const PolyHamiltonian& H, const ComplexPair& c) {
    const int M = c.u.truncation();
    cpx acc(0, 0);
    for (const auto& [m, co] : H.terms()) {
        cpx prod = co;
        const int d = m.degree();
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            if (std::abs(f.mode) > M)
                throw std::out_of_range("evaluate: monomial mode beyond field truncation");
            const cpx u = c.u.at(f.mode);
            prod *= (f.sigma > 0) ? u : std::conj(u);
        }
        acc += prod;
    }
    return acc;
}

cpx gradient(const PolyHamiltonian& H, const ComplexPair& c, int sigma, int k) {
    const int M = c.u.truncation();
    cpx acc(0, 0);
    for (const auto& [m, co] : H.terms()) {
        const int d = m.degree();
        int mult = 0;
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            if (f.sigma == sigma && f.mode == k) ++mult;
        }
        if (!mult) continue;
        cpx prod = co * (double)mult;
        bool skipped = false;
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            if (!skipped && f.sigma == sigma && f.mode == k) {
                skipped = true;
                continue;
            }
            if (std::abs(f.mode) > M)
                throw std::out_of_range("gradient: monomial mode beyond field truncation");
            const cpx u = c.u.at(f.mode);
            prod *= (f.sigma > 0) ? u : std::conj(u);
        }
        acc += prod;
    }
    return acc;
}

TermList gradient_terms(const PolyHamiltonian& H, int sigma, int k) {
    TermList out;
    for (const auto& [m, co] : H.terms()) {
        const int d = m.degree();
        int mult = 0;
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            if (f.sigma == sigma && f.mode == k) ++mult;
        }
        if (!mult) continue;
        SignedMode rest[Monomial::max_degree];
        int n = 0;
        bool skipped = false;
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            if (!skipped && f.sigma == sigma && f.mode == k) {
                skipped = true;
                continue;
            }
            rest[n++] = f;
        }
        out.emplace_back(Monomial::from_factors(rest, n), co * (double)mult);
    }
    return out;
}

PolyHamiltonian poisson_bracket(const PolyHamiltonian& F, const PolyHamiltonian& H,
                                int max_out_mode) {
    // Index the terms of H by contained factor code.
    struct Ref {
        const Monomial* m;
        cpx c;
    };
    std::unordered_map<std::uint16_t, std::vector<Ref>> index;
    for (const auto& [mh, ch] : H.terms()) {
        const int d = mh.degree();
        std::uint16_t last = 0;
        for (int i = 0; i < d; ++i) {
            const std::uint16_t code = Monomial::encode(mh.factor(i));
            if (code == last) continue;  // distinct codes only
            last = code;
            index[code].push_back({&mh, ch});
        }
    }

    PolyHamiltonian out;
    const cpx minus_i(0, -1);
    SignedMode merged[2 * Monomial::max_degree];

    for (const auto& [mf, cf] : F.terms()) {
        const int df = mf.degree();
        std::uint16_t lastcode = 0;
        for (int i = 0; i < df; ++i) {
            const SignedMode f = mf.factor(i);
            const std::uint16_t fcode = Monomial::encode(f);
            if (fcode == lastcode) continue;
            lastcode = fcode;
            int multf = 0;
            for (int j = 0; j < df; ++j) {
                const SignedMode g = mf.factor(j);
                if (g.sigma == f.sigma && g.mode == f.mode) ++multf;
            }
            const SignedMode partner{-f.sigma, f.mode};
            auto it = index.find(Monomial::encode(partner));
            if (it == index.end()) continue;
            const double sgn = f.sigma > 0 ? 1.0 : -1.0;
            for (const Ref& ref : it->second) {
                const Monomial& mh = *ref.m;
                const int dh = mh.degree();
                int multh = 0;
                for (int j = 0; j < dh; ++j) {
                    const SignedMode g = mh.factor(j);
                    if (g.sigma == partner.sigma && g.mode == partner.mode) ++multh;
                }
                // assemble merged monomial, dropping one contracted factor each
                int n = 0;
                int maxmode = 0;
                bool skipped = false;
                for (int j = 0; j < df; ++j) {
                    const SignedMode g = mf.factor(j);
                    if (!skipped && g.sigma == f.sigma && g.mode == f.mode) {
                        skipped = true;
                        continue;
                    }
                    merged[n++] = g;
                    maxmode = std::max(maxmode, std::abs(g.mode));
                }
                skipped = false;
                for (int j = 0; j < dh; ++j) {
                    const SignedMode g = mh.factor(j);
                    if (!skipped && g.sigma == partner.sigma && g.mode == partner.mode) {
                        skipped = true;
                        continue;
                    }
                    merged[n++] = g;
                    maxmode = std::max(maxmode, std::abs(g.mode));
                }
                if (maxmode > max_out_mode) continue;
                if (n > Monomial::max_degree)
                    throw std::invalid_argument("poisson_bracket: merged degree too large");
                const cpx coeff = minus_i * sgn * (double)multf * (double)multh * cf * ref.c;
                out.add(Monomial::from_factors(merged, n), coeff);
            }
        }
    }
    out.prune();
    return out;
}

const TermList& VectorField::component_plus(int k) const {
    if (k == 0 || std::abs(k) > M_) throw std::out_of_range("VectorField: mode");
    return comp_[k < 0 ? k + M_ : k + M_ - 1];
}

TermList VectorField::component(int sigma, int k) const {
    if (sigma > 0) return component_plus(k);
    TermList out;
    for (const auto& [m, c] : component_plus(k)) out.emplace_back(m.conjugate_flip(), std::conj(c));
    return out;
}

void VectorField::add_term(int k, const Monomial& m, cpx c) {
    if (k == 0 || std::abs(k) > M_) throw std::out_of_range("VectorField: mode");
    comp_[k < 0 ? k + M_ : k + M_ - 1].emplace_back(m, c);
}

SpectralField VectorField::apply(const ComplexPair& c) const {
    if (c.u.truncation() != M_) throw std::invalid_argument("VectorField: truncation mismatch");
    SpectralField out(M_);
    for (int k = -M_; k <= M_; ++k) {
        if (k == 0) continue;
        cpx acc(0, 0);
        for (const auto& [m, co] : component_plus(k)) {
            cpx prod = co;
            const int d = m.degree();
            for (int i = 0; i < d; ++i) {
                const SignedMode f = m.factor(i);
                const cpx u = c.u.at(f.mode);
                prod *= (f.sigma > 0) ? u : std::conj(u);
            }
            acc += prod;
        }
        out.set(k, acc);
    }
    return out;
}

VectorField hamiltonian_vector_field(const PolyHamiltonian& H, int truncation) {
    const int M = truncation > 0 ? truncation : H.max_abs_mode();
    VectorField X(M);
    const cpx minus_i(0, -1);
    for (int k = -M; k <= M; ++k) {
        if (k == 0) continue;
        for (auto& [m, c] : gradient_terms(H, -1, k)) X.add_term(k, m, minus_i * c);
    }
    return X;
}

PolyHamiltonian project_kernel(const PolyHamiltonian& H) {
    PolyHamiltonian out;
    for (const auto& [m, c] : H.terms()) {
        const int d = m.degree();
        if (d != 3 && d != 4)
            throw std::invalid_argument("project_kernel: degree must be 3 or 4");
        if (resonance::is_exact_zero(m.tuple())) out.add(m, c);
    }
    return out;
}

PolyHamiltonian solve_cohomological(const PolyHamiltonian& H3) {
    PolyHamiltonian F3;
    for (const auto& [m, c] : H3.terms()) {
        if (m.degree() != 3) throw std::invalid_argument("solve_cohomological: degree 3 required");
        const double div = m.sigma_omega();
        // momentum-conserving cubic phases are bounded below by 2/(2+sqrt 2)
        if (std::abs(div) < 1e-9)
            throw std::logic_error("solve_cohomological: vanishing cubic divisor");
        F3.add(m, c / (cpx(0, 1) * div));
    }
    return F3;
}

void dump_terms(const PolyHamiltonian& H, std::ostream& os) {
    char buf[64];
    for (const auto& [m, c] : H.sorted_terms()) {
        const int d = m.degree();
        os << d;
        for (int i = 0; i < d; ++i) {
            const SignedMode f = m.factor(i);
            os << ' ' << (f.sigma > 0 ? '+' : '-') << ' ' << f.mode;
        }
        std::snprintf(buf, sizeof buf, " %.17g %.17g", c.real(), c.imag());
        os << buf << '\n';
    }
}

PolyHamiltonian parse_terms(std::istream& is) {
    PolyHamiltonian H;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int d;
        if (!(ls >> d)) throw std::runtime_error("parse_terms: bad degree");
        SignedMode fs[Monomial::max_degree];
        for (int i = 0; i < d; ++i) {
            char s;
            int k;
            if (!(ls >> s >> k)) throw std::runtime_error("parse_terms: bad factor");
            fs[i] = {s == '+' ? 1 : -1, k};
        }
        double re, im;
        if (!(ls >> re >> im)) throw std::runtime_error("parse_terms: bad coefficient");
        H.add(Monomial::from_factors(fs, d), cpx(re, im));
    }
    return H;
}

}  // namespace wwb
