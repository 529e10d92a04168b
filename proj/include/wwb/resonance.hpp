// Exact classification of cubic/quartic resonances of omega(k) = sqrt|k|
// under momentum conservation, the Benjamin-Feir family, and small-divisor
// scans.  Zero-phase decisions are made in integer arithmetic only.

#pragma once

#include <cstdint>
#include <vector>

namespace wwb::resonance {

struct SignedEntry {
    int sigma;  // +1 or -1
    int mode;   // nonzero integer
};

struct SignedTuple {
    std::vector<SignedEntry> e;

    long momentum() const;
    double phase() const;  // sum sigma_i sqrt(|n_i|), floating
    int degree() const { return (int)e.size(); }
};

enum class ResClass { Trivial, BenjaminFeir, Other };

struct Classification {
    ResClass cls;
    long lambda = 0;  // set for BenjaminFeir
    long b = 0;
};

// n = c^2 * r with r squarefree.
struct SquareFree {
    long c;
    long r;
};
SquareFree squarefree_decompose(long n);

// True iff sum sigma_i sqrt(|n_i|) = 0 exactly.  Writing each |n_i| = c_i^2 r_i
// with r_i squarefree, the phase is sum_i (sigma_i c_i) sqrt(r_i); square roots
// of distinct squarefree integers are linearly independent over Q, so the sum
// vanishes iff the integer coefficient of every radical sqrt(r) cancels.
bool is_exact_zero(const SignedTuple& t);

// n1 = -lambda b^2, n2 = lambda (b+1)^2, n3 = lambda (b^2+b+1)^2,
// n4 = lambda b^2 (b+1)^2, signs (+,-,+,-).  Momentum and phase vanish.
SignedTuple benjamin_feir(long lambda, long b);

Classification classify(const SignedTuple& t);

struct EnumEntry {
    SignedTuple tuple;  // canonical: plus slots sorted, minus slots sorted
    Classification cls;
};

// All momentum-conserving, exactly phase-resonant quartic tuples with
// max |n_i| <= N, deduplicated up to permutation within equal-sign slots
// and global conjugation.
std::vector<EnumEntry> enumerate_quartic(int N, int threads = 1);

struct CubicScanResult {
    double min_abs_phase;
    SignedTuple argmin;
};

// Minimum of |phase| over momentum-conserving cubic tuples, max |n_i| <= N.
CubicScanResult min_cubic_phase(int N);

struct DivisorRow {
    int max_mode;
    double min_abs_phase;
    std::int64_t count;  // scanned canonical sign/mode combinations in the bucket
};

struct DivisorScanResult {
    std::vector<DivisorRow> rows;
    double fitted_n0;    // least-squares slope of -log(min phase) vs log(max)
    double fitted_logc;  // intercept
};

// Per-bucket minima of |phase| over momentum-conserving, non-exactly-resonant
// quartic tuples with max |n_i| <= N, bucketed by max |n_i|.
DivisorScanResult small_divisor_scan(int N, int threads = 1);

}  // namespace wwb::resonance
