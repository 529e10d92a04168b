// Quartic Birkhoff normal form of the truncated water-waves Hamiltonian,
// its comparison against the closed-form integrable Hamiltonian, the
// null condition on the Benjamin-Feir family, and the action-dependent
// frequencies of the integrable flow.

#pragma once

#include <map>
#include <vector>

#include "wwb/expansion.hpp"
#include "wwb/poly.hpp"

namespace wwb {

struct BfCoefficient {
    long lambda;
    long b;
    double coeff_abs;
};

struct NormalFormReport {
    int M = 0;
    double max_resonant_coeff_error = 0;  // relative, over closed-form monomials
    double max_offresonant_leak = 0;      // relative to the largest coefficient
    double max_value_mismatch = 0;        // relative, random-field evaluation check
    std::vector<BfCoefficient> bf;
    bool pass = false;
};

// Pi_ker( H4 + 1/2 {F3, H3} ) with H3, F3 built at the enlarged truncation 2M
// and the bracket restricted to monomials supported in |k| <= M.  Degree-3 x
// degree-3 contractions feeding a monomial inside M have their internal mode
// bounded by 2M, so the enlarged build makes the restriction exact.
PolyHamiltonian compute_normal_form(int M);

// The closed-form integrable quartic Hamiltonian restricted to |k| <= M.
PolyHamiltonian explicit_hzd4(int M);

NormalFormReport compare_with_explicit(const PolyHamiltonian& nf, int M, double tol);
NormalFormReport verify_identity(int M, double tol);

// |coefficient| of every Benjamin-Feir monomial whose modes fit in |k| <= M.
std::vector<BfCoefficient> null_condition_of(const PolyHamiltonian& nf, int M);
std::vector<BfCoefficient> verify_null_condition(int M);

// Frequency Omega_n(I) with z_n' = -i Omega_n(I) z_n under the flow of
// H_C^(2) + explicit_hzd4: the action derivative of the Hamiltonian.
double zd_frequency(int n, const std::map<int, double>& actions, int M = 0);

// All frequencies for modes |n| <= M at once (one Hamiltonian build).
std::vector<std::pair<int, double>> zd_frequencies(const std::map<int, double>& actions, int M);

// zeta = (1/pi) sum_n n |n| |u_n|^2
double zeta_value(const ComplexPair& c);
double zeta_value(const std::map<int, double>& actions);

}  // namespace wwb
