// Dirichlet-Neumann Taylor expansion (orders G0, G1, G2), the water-waves
// Hamiltonian to quartic order in the complex mode variables, the quadratic
// truncation of the equations of motion, and probe extraction of the linear
// and quadratic coefficients of the functions V, a and of the quadratic
// vector field F2.

#pragma once

#include "wwb/poly.hpp"
#include "wwb/spectral.hpp"

namespace wwb {

// order 0: |D| psi
// order 1: G1(eta)psi = -d_x(eta d_x psi) - |D|(eta |D| psi)
// order 2: G2(eta)psi = -1/2 [ D^2(eta^2 |D| psi) + |D|(eta^2 D^2 psi)
//                              - 2 |D|(eta |D|(eta |D| psi)) ]
// Products are evaluated alias-free; the result is Galerkin-projected onto
// the common truncation.
SpectralField dn_apply(int order, const SpectralField& eta, const SpectralField& psi);

// H = 1/2 int psi G(eta) psi + 1/2 int eta^2 pushed to the complex variable:
//   degree 2: sum_j omega_j u_j conj(u_j)
//   degree 3: complex form of 1/2 int eta (psi_x^2 - (|D| psi)^2) dx
//   degree 4: complex form of 1/2 int psi G2(eta) psi dx
// Monomials are kept iff every mode satisfies |k| <= M.
PolyHamiltonian build_hamiltonian(int M, int degree);

// Quadratic truncation of the equations of motion:
//   eta_t = |D|psi - d_x(eta d_x psi) - |D|(eta |D| psi)
//   psi_t = -eta - 1/2 psi_x^2 + 1/2 (|D| psi)^2
RealPair rhs_quadratic(const RealPair& p);

// Right-hand side of the flow of the degree-(2..degree) truncated
// Hamiltonian; degree 3 equals rhs_quadratic, degree 4 adds the G2 terms
// and the quartic pressure contribution.
RealPair ww_rhs(const RealPair& p, int degree);

// Energy 1/2 int (psi G_{<=degree-2}(eta) psi + eta^2) of the truncated flow.
double ww_energy(const RealPair& p, int degree);

enum class CoeffTag { V, A, F2 };

// Linear coefficient (tag_1)^sigma_n in the expansion
//   f(x) = (2pi)^{-1/2} sum (f_1)^sigma_n u_n^sigma e^{i sigma n x}.
cpx extract_linear(CoeffTag tag, int sigma, int n);

// Quadratic coefficient (tag_2)^{sigma1 sigma2}_{n1,n2} in the expansion
//   f(x) = sum (f_2)^{ss}_{n1,n2} u^s_{n1} u^s_{n2} e^{i s(n1+n2)x}/(2pi)
//        + sum (f_2)^{+-}_{n1,n2} u_{n1} conj(u_{n2}) e^{i(n1-n2)x}/(2pi),
// obtained by evaluating the displayed functional on single-mode probe
// fields and isolating the requested signature by phase polarization.
cpx extract_bilinear(CoeffTag tag, int n1, int sigma1, int n2, int sigma2);

}  // namespace wwb
