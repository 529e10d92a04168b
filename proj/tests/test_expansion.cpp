#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wwb/expansion.hpp"

using namespace wwb;

namespace {

const double kAmpCos = std::sqrt(oracle::pi / 2.0);

SpectralField cosine(int M, int mode, double scale = 1.0) {
    SpectralField f(M);
    f.set(mode, scale * kAmpCos);
    f.set(-mode, scale * kAmpCos);
    return f;
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("dn_apply order 0") {
    SpectralField psi(5);
    psi.set(3, cpx(0.2, -0.4));
    const auto g = dn_apply(0, SpectralField(5), psi);
    CHECK(std::abs(g.at(3) - 3.0 * psi.at(3)) < 1e-15);
}

TEST_CASE("dn_apply order 1 fixtures") {
    const int M = 6;
    SUBCASE("eta = cos x, psi = cos x vanishes") {
        const auto g = dn_apply(1, cosine(M, 1), cosine(M, 1));
        for (int k = -M; k <= M; ++k)
            if (k) CHECK(std::abs(g.at(k)) < 1e-14);
    }
    SUBCASE("eta = cos 2x, psi = cos x gives -cos x") {
        const auto g = dn_apply(1, cosine(M, 2), cosine(M, 1));
        CHECK(g.at(1).real() == doctest::Approx(-kAmpCos).epsilon(1e-13));
        CHECK(g.at(-1).real() == doctest::Approx(-kAmpCos).epsilon(1e-13));
        for (int k = -M; k <= M; ++k) {
            if (k == 0 || std::abs(k) == 1) continue;
            CHECK(std::abs(g.at(k)) < 1e-14);
        }
    }
    SUBCASE("truncation mismatch is rejected") {
        CHECK_THROWS_AS(dn_apply(1, cosine(4, 1), cosine(5, 1)), std::invalid_argument);
    }
    SUBCASE("real fields give real output") {
        std::uint64_t s = 2;
        const auto eta = oracle::random_real_field(M, s);
        const auto psi = oracle::random_real_field(M, s);
        CHECK(dn_apply(1, eta, psi).conjugate_symmetric(1e-12));
        CHECK(dn_apply(2, eta, psi).conjugate_symmetric(1e-12));
    }
}

TEST_CASE("built Hamiltonians are real and momentum conserving") {
    for (int deg : {2, 3, 4}) {
        const auto H = build_hamiltonian(6, deg);
        CHECK(H.is_real(1e-13));
        for (const auto& [m, c] : H.terms()) {
            CHECK(m.momentum() == 0);
            CHECK(m.degree() == deg);
            CHECK(m.max_abs_mode() <= 6);
        }
    }
}

TEST_CASE("H2 coefficients") {
    const auto H2 = build_hamiltonian(4, 2);
    CHECK(H2.size() == 8);  // one diagonal monomial per nonzero mode
    CHECK(H2.coeff(Monomial{{+1, 4}, {-1, 4}}).real() == doctest::Approx(2.0));
    CHECK(H2.coeff(Monomial{{+1, -3}, {-1, -3}}).real() ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("H3 fixture value and analytic coefficient") {
    const int M = 4;
    const auto H3 = build_hamiltonian(M, 3);
    SUBCASE("eta = cos 2x, psi = cos x evaluates to -pi/2") {
        RealPair p{cosine(M, 2), cosine(M, 1)};
        const cpx v = evaluate(H3, to_complex(p));
        CHECK(v.real() == doctest::Approx(-oracle::pi / 2).epsilon(1e-13));
        CHECK(std::abs(v.imag()) < 1e-13);
        CHECK(rel_err(v.real(), oracle::quad_h3(p.eta, p.psi)) < 1e-12);
    }
    SUBCASE("coefficient of u_1 u_1 ubar_2 from the convolution") {
        // single contributing tuple (k1,k2,k3)=(-2,1,1):
        // -(2pi)^{-1/2} * k2 k3 * (|2|^{1/4}/sqrt2) * (-i/sqrt2)^2
        const double want = std::pow(2.0, 0.25) / (std::pow(2.0, 1.5) * std::sqrt(2 * oracle::pi));
        const cpx got = H3.coeff(Monomial{{+1, 1}, {+1, 1}, {-1, 2}});
        CHECK(got.real() == doctest::Approx(want).epsilon(1e-14));
        CHECK(std::abs(got.imag()) < 1e-16);
    }
}

TEST_CASE("H3 and H4 match the quadrature oracles on random fields") {
    const int M = 8;
    const auto H3 = build_hamiltonian(M, 3);
    const auto H4 = build_hamiltonian(M, 4);
    std::uint64_t s = 2024;
    for (int trial = 0; trial < 10; ++trial) {
        RealPair p{oracle::random_real_field(M, s, 0.3), oracle::random_real_field(M, s, 0.3)};
        const ComplexPair c = to_complex(p);
        CHECK(rel_err(evaluate(H3, c).real(), oracle::quad_h3(p.eta, p.psi)) < 1e-10);
        CHECK(rel_err(evaluate(H4, c).real(), oracle::quad_h4(p.eta, p.psi)) < 1e-10);
        // the integrated-by-parts cubic form agrees with 1/2 int psi G1 psi
        CHECK(rel_err(oracle::quad_h3(p.eta, p.psi), oracle::quad_h3_g1(p.eta, p.psi)) < 1e-11);
    }
}

TEST_CASE("rhs_quadratic fixtures") {
    const int M = 5;
    SUBCASE("zero input") {
        RealPair p{SpectralField(M), SpectralField(M)};
        const auto d = rhs_quadratic(p);
        CHECK(sobolev_norm(d.eta, 0) == 0.0);
        CHECK(sobolev_norm(d.psi, 0) == 0.0);
    }
    SUBCASE("eta = cos x only") {
        RealPair p{cosine(M, 1), SpectralField(M)};
        const auto d = rhs_quadratic(p);
        CHECK(sobolev_norm(d.eta, 0) < 1e-14);
        CHECK(d.psi.at(1).real() == doctest::Approx(-kAmpCos).epsilon(1e-14));
        CHECK(d.psi.at(-1).real() == doctest::Approx(-kAmpCos).epsilon(1e-14));
    }
    SUBCASE("psi = cos x only") {
        RealPair p{SpectralField(M), cosine(M, 1)};
        const auto d = rhs_quadratic(p);
        // etadot = cos x, psidot = 1/2 cos 2x (its zero average part)
        CHECK(d.eta.at(1).real() == doctest::Approx(kAmpCos).epsilon(1e-14));
        CHECK(d.psi.at(2).real() == doctest::Approx(0.5 * kAmpCos).epsilon(1e-13));
        CHECK(std::abs(d.psi.at(1)) < 1e-14);
    }
}

TEST_CASE("operator rhs equals the Hamiltonian vector field") {
    const int M = 8;
    std::uint64_t s = 555;
    for (int degree : {3, 4}) {
        PolyHamiltonian H = build_hamiltonian(M, 2);
        H += build_hamiltonian(M, 3);
        if (degree == 4) H += build_hamiltonian(M, 4);
        const auto X = hamiltonian_vector_field(H, M);
        for (int trial = 0; trial < 5; ++trial) {
            RealPair p{oracle::random_real_field(M, s, 0.1),
                       oracle::random_real_field(M, s, 0.1)};
            const ComplexPair c = to_complex(p);
            const SpectralField udot = X.apply(c);
            // back to real variables
            RealPair want = ww_rhs(p, degree);
            for (int k = -M; k <= M; ++k) {
                if (k == 0) continue;
                const double a = std::pow(std::abs((double)k), 0.25);
                const cpx ud = udot.at(k), udbar = std::conj(udot.at(-k));
                const cpx etadot = a * (ud + udbar) / std::sqrt(2.0);
                const cpx psidot = cpx(0, -1) * (ud - udbar) / (a * std::sqrt(2.0));
                const double scale =
                    std::max({std::abs(etadot), std::abs(psidot), 1e-3});
                CHECK(std::abs(etadot - want.eta.at(k)) / scale < 1e-10);
                CHECK(std::abs(psidot - want.psi.at(k)) / scale < 1e-10);
            }
        }
    }
}

TEST_CASE("probe-extracted coefficients match the closed forms") {
    const double s2 = std::sqrt(2.0);
    for (int n = 1; n <= 8; ++n) {
        const double dn = n;
        CHECK(std::abs(extract_linear(CoeffTag::V, +1, n) -
                       cpx(dn * std::pow(dn, -0.25) / s2, 0)) < 1e-10);
        CHECK(std::abs(extract_linear(CoeffTag::V, -1, n) -
                       cpx(dn * std::pow(dn, -0.25) / s2, 0)) < 1e-10);
        CHECK(std::abs(extract_linear(CoeffTag::A, +1, n) -
                       cpx(-std::pow(dn, 1.25) / (2 * s2), 0)) < 1e-10);
        CHECK(std::abs(extract_bilinear(CoeffTag::V, n, +1, n, -1) - cpx(dn * dn, 0)) <
              1e-10);
        CHECK(std::abs(extract_bilinear(CoeffTag::V, n, +1, -n, -1)) < 1e-10);
        CHECK(std::abs(extract_bilinear(CoeffTag::A, n, +1, n, -1) -
                       cpx(0.5 * std::pow(dn, 2.5), 0)) < 1e-10);
        CHECK(std::abs(extract_bilinear(CoeffTag::F2, n, +1, -n, -1) -
                       cpx(std::pow(2.0, -0.25) * std::pow(dn, 1.75), 0)) < 1e-10);
    }
    // negative-mode entries follow the same formulas
    CHECK(std::abs(extract_linear(CoeffTag::V, +1, -3) -
                   cpx(-3.0 * std::pow(3.0, -0.25) / s2, 0)) < 1e-10);
    CHECK_THROWS(extract_bilinear(CoeffTag::F2, 0, +1, 1, -1));
}
