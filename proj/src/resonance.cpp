#include "wwb/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace wwb::resonance {

long SignedTuple::momentum() const {
    long m = 0;
    for (const auto& s : e) m += (long)s.sigma * s.mode;
    return m;
}

double SignedTuple::phase() const {
    double p = 0.0;
    for (const auto& s : e) p += s.sigma * std::sqrt(std::abs((double)s.mode));
    return p;
}

SquareFree squarefree_decompose(long n) {
    if (n <= 0) throw std::invalid_argument("squarefree_decompose: need n >= 1");
    long c = 1, r = n;
    for (long p = 2; p * p <= r; ++p) {
        while (r % (p * p) == 0) {
            r /= p * p;
            c *= p;
        }
    }
    return {c, r};
}

bool is_exact_zero(const SignedTuple& t) {
    // Accumulate the signed integer coefficient of each radical sqrt(r).
    std::map<long, long> radical;
    for (const auto& s : t.e) {
        const auto sf = squarefree_decompose(std::labs((long)s.mode));
        radical[sf.r] += s.sigma * sf.c;
    }
    for (const auto& [r, c] : radical)
        if (c != 0) return false;
    return true;
}

SignedTuple benjamin_feir(long lambda, long b) {
    if (lambda == 0) throw std::invalid_argument("benjamin_feir: lambda must be nonzero");
    if (b < 1) throw std::invalid_argument("benjamin_feir: b must be >= 1");
    const long big = (b * b + b + 1) * (b * b + b + 1);
    if (b > 10000 || std::labs(lambda) > (1L << 30) / big)
        throw std::out_of_range("benjamin_feir: parameters exceed the mode range");
    SignedTuple t;
    t.e = {{+1, (int)(-lambda * b * b)},
           {-1, (int)(lambda * (b + 1) * (b + 1))},
           {+1, (int)(lambda * big)},
           {-1, (int)(lambda * b * b * (b + 1) * (b + 1))}};
    if (t.momentum() != 0 || !is_exact_zero(t))
        throw std::logic_error("benjamin_feir: family member failed momentum/phase check");
    return t;
}

namespace {

// Canonical form: plus-slot modes sorted, minus-slot modes sorted, then the
// lexicographic minimum of the tuple and its conjugate (all sigmas flipped).
struct Canon {
    std::vector<int> plus, minus;

    bool operator<(const Canon& o) const {
        if (plus != o.plus) return plus < o.plus;
        return minus < o.minus;
    }
    bool operator==(const Canon& o) const { return plus == o.plus && minus == o.minus; }
};

Canon canonical_of(const SignedTuple& t) {
    Canon a;
    for (const auto& s : t.e) (s.sigma > 0 ? a.plus : a.minus).push_back(s.mode);
    std::sort(a.plus.begin(), a.plus.end());
    std::sort(a.minus.begin(), a.minus.end());
    Canon b{a.minus, a.plus};  // conjugate flips every sigma
    return std::min(a, b);
}

SignedTuple tuple_of(const Canon& c) {
    SignedTuple t;
    for (int m : c.plus) t.e.push_back({+1, m});
    for (int m : c.minus) t.e.push_back({-1, m});
    return t;
}

bool magnitudes_pair_off(const SignedTuple& t) {
    std::map<long, long> bal;  // |mode| -> sigma balance
    for (const auto& s : t.e) bal[std::labs((long)s.mode)] += s.sigma;
    for (const auto& [m, v] : bal)
        if (v != 0) return false;
    return true;
}

}  // namespace

Classification classify(const SignedTuple& t) {
    if (t.degree() == 4 && magnitudes_pair_off(t)) return {ResClass::Trivial};
    if (t.degree() == 4) {
        long maxabs = 0, minabs = 0;
        for (const auto& s : t.e) {
            maxabs = std::max(maxabs, std::labs((long)s.mode));
            minabs = minabs == 0 ? std::labs((long)s.mode)
                                 : std::min(minabs, std::labs((long)s.mode));
        }
        const Canon ct = canonical_of(t);
        for (long b = 1; b * b <= minabs; ++b) {
            if (minabs % (b * b) != 0) continue;
            const long lam = minabs / (b * b);
            const long big = (b * b + b + 1) * (b * b + b + 1) * lam;
            if (big != maxabs) continue;  // largest family magnitude must match
            for (long sign : {+1L, -1L}) {
                const long l = sign * lam;
                if (canonical_of(benjamin_feir(l, b)) == ct)
                    return {ResClass::BenjaminFeir, l, b};
            }
        }
    }
    return {ResClass::Other};
}

std::vector<EnumEntry> enumerate_quartic(int N, int threads) {
    if (N < 1) throw std::invalid_argument("enumerate_quartic: N >= 1");
    // Sign patterns with zero phase need at least two minuses after the global
    // flip: an all-plus phase is a sum of positive square roots.  Patterns
    // (+,+,+,-) are scanned anyway; momentum rules their zeros out, and the
    // scan is the evidence.
    const auto sf = [&] {
        std::vector<SquareFree> v(N + 1);
        for (int n = 1; n <= N; ++n) v[n] = squarefree_decompose(n);
        return v;
    }();
    const auto zero22 = [&](int a1, int a2, int b1, int b2) {
        std::map<long, long> rad;
        rad[sf[std::abs(a1)].r] += sf[std::abs(a1)].c;
        rad[sf[std::abs(a2)].r] += sf[std::abs(a2)].c;
        rad[sf[std::abs(b1)].r] -= sf[std::abs(b1)].c;
        rad[sf[std::abs(b2)].r] -= sf[std::abs(b2)].c;
        for (const auto& [r, c] : rad)
            if (c) return false;
        return true;
    };

    std::set<Canon> found;
    std::mutex mtx;

    const int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) {
        pool.emplace_back([&, tid] {
            std::set<Canon> local;
            for (int a1 = -N; a1 <= N; ++a1) {
                if (a1 == 0) continue;
                if (((a1 + N) % nthreads) != tid) continue;
                // pattern (+,+,-,-): plus slots a1 <= a2, minus slots b1 <= b2
                for (int a2 = a1; a2 <= N; ++a2) {
                    if (a2 == 0) continue;
                    for (int b1 = -N; b1 <= N; ++b1) {
                        if (b1 == 0) continue;
                        const int b2 = a1 + a2 - b1;
                        if (b2 == 0 || b2 < b1 || std::abs(b2) > N) continue;
                        if (!zero22(a1, a2, b1, b2)) continue;
                        local.insert(canonical_of(
                            SignedTuple{{{+1, a1}, {+1, a2}, {-1, b1}, {-1, b2}}}));
                    }
                }
                // pattern (+,+,+,-): a1 <= a2 <= a3, minus slot b
                for (int a2 = a1; a2 <= N; ++a2) {
                    if (a2 == 0) continue;
                    for (int a3 = a2; a3 <= N; ++a3) {
                        if (a3 == 0) continue;
                        const int b = a1 + a2 + a3;
                        if (b == 0 || std::abs(b) > N) continue;
                        SignedTuple t{{{+1, a1}, {+1, a2}, {+1, a3}, {-1, b}}};
                        if (!is_exact_zero(t)) continue;
                        local.insert(canonical_of(t));
                    }
                }
            }
            std::lock_guard<std::mutex> lk(mtx);
            found.merge(local);
        });
    }
    for (auto& th : pool) th.join();

    std::vector<EnumEntry> out;
    out.reserve(found.size());
    for (const auto& c : found) {
        SignedTuple t = tuple_of(c);
        out.push_back({t, classify(t)});
    }
    return out;
}

CubicScanResult min_cubic_phase(int N) {
    if (N < 1) throw std::invalid_argument("min_cubic_phase: N >= 1");
    std::vector<double> root(N + 1);
    for (int n = 1; n <= N; ++n) root[n] = std::sqrt((double)n);

    CubicScanResult best{1e300, {}};
    // sigma_1 = + fixed by the global flip; remaining patterns scanned fully.
    for (int s2 : {+1, -1}) {
        for (int s3 : {+1, -1}) {
            for (int n1 = -N; n1 <= N; ++n1) {
                if (n1 == 0) continue;
                for (int n2 = -N; n2 <= N; ++n2) {
                    if (n2 == 0) continue;
                    const long rem = -((long)n1 + (long)s2 * n2);
                    const long n3 = s3 * rem;
                    if (n3 == 0 || std::labs(n3) > N) continue;
                    const double p = std::abs(root[std::abs(n1)] + s2 * root[std::abs(n2)] +
                                              s3 * root[std::labs(n3)]);
                    if (p < best.min_abs_phase) {
                        best.min_abs_phase = p;
                        best.argmin = SignedTuple{{{+1, n1}, {s2, n2}, {s3, (int)n3}}};
                    }
                }
            }
        }
    }
    return best;
}

DivisorScanResult small_divisor_scan(int N, int threads) {
    if (N < 4) throw std::invalid_argument("small_divisor_scan: N >= 4");
    std::vector<SquareFree> sf(N + 1);
    std::vector<double> root(N + 1);
    for (int n = 1; n <= N; ++n) {
        sf[n] = squarefree_decompose(n);
        root[n] = std::sqrt((double)n);
    }

    struct Bucket {
        double minp = 1e300;
        std::int64_t count = 0;
    };
    const int nthreads = std::max(1, threads);
    std::vector<std::vector<Bucket>> partials(nthreads, std::vector<Bucket>(N + 1));

    auto run = [&](int tid) {
        auto& buckets = partials[tid];
        auto visit = [&](int m1, int m2, int m3, int m4, double p) {
            const int mx = std::max(std::max(m1, m2), std::max(m3, m4));
            auto& b = buckets[mx];
            b.count++;
            const double ap = std::abs(p);
            if (ap < b.minp) b.minp = ap;
        };
        for (int a1 = -N; a1 <= N; ++a1) {
            if (a1 == 0) continue;
            if (((a1 + N) % nthreads) != tid) continue;
            for (int a2 = a1; a2 <= N; ++a2) {
                if (a2 == 0) continue;
                // (+,+,-,-)
                for (int b1 = -N; b1 <= N; ++b1) {
                    if (b1 == 0) continue;
                    const int b2 = a1 + a2 - b1;
                    if (b2 == 0 || b2 < b1 || std::abs(b2) > N) continue;
                    const int m1 = std::abs(a1), m2 = std::abs(a2);
                    const int m3 = std::abs(b1), m4 = std::abs(b2);
                    std::map<long, long> rad;
                    rad[sf[m1].r] += sf[m1].c;
                    rad[sf[m2].r] += sf[m2].c;
                    rad[sf[m3].r] -= sf[m3].c;
                    rad[sf[m4].r] -= sf[m4].c;
                    bool zero = true;
                    for (const auto& [r, c] : rad)
                        if (c) {
                            zero = false;
                            break;
                        }
                    if (zero) continue;
                    visit(m1, m2, m3, m4, root[m1] + root[m2] - root[m3] - root[m4]);
                }
                // (+,+,+,-)
                for (int a3 = a2; a3 <= N; ++a3) {
                    if (a3 == 0) continue;
                    const int b = a1 + a2 + a3;
                    if (b == 0 || std::abs(b) > N) continue;
                    const int m1 = std::abs(a1), m2 = std::abs(a2);
                    const int m3 = std::abs(a3), m4 = std::abs(b);
                    SignedTuple t{{{+1, m1}, {+1, m2}, {+1, m3}, {-1, m4}}};
                    if (is_exact_zero(t)) continue;
                    visit(m1, m2, m3, m4, root[m1] + root[m2] + root[m3] - root[m4]);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(run, tid);
    for (auto& th : pool) th.join();

    DivisorScanResult out;
    for (int mx = 1; mx <= N; ++mx) {
        Bucket merged;
        for (const auto& part : partials) {
            merged.count += part[mx].count;
            merged.minp = std::min(merged.minp, part[mx].minp);
        }
        if (merged.count > 0) out.rows.push_back({mx, merged.minp, merged.count});
    }

    // least squares: log(min) ~ logc - n0 * log(max)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : out.rows) {
        if (r.min_abs_phase <= 0) continue;
        const double x = std::log((double)r.max_mode), y = std::log(r.min_abs_phase);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    out.fitted_n0 = -slope;
    out.fitted_logc = n ? (sy - slope * sx) / n : 0.0;
    return out;
}

}  // namespace wwb::resonance
