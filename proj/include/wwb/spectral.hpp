// Truncated Fourier representation of zero-average 2pi-periodic fields.
//
// Convention used throughout:  u(x) = sum_{0<|k|<=M} u_k e^{ikx}/sqrt(2pi),
// u_k = (2pi)^{-1/2} \int_T u(x) e^{-ikx} dx.  The zero mode is excluded
// everywhere; attempts to address it throw.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wwb {

using cpx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Linear frequency of mode k for deep-water gravity waves.
double omega(int k);

class SpectralField {
  public:
    SpectralField() : trunc_(0) {}
    explicit SpectralField(int truncation);

    int truncation() const { return trunc_; }

    // Amplitude of mode k.  Returns 0 beyond the truncation; k == 0 throws.
    cpx at(int k) const;
    void set(int k, cpx v);
    void add(int k, cpx v);

    // eta real  <=>  eta_{-k} = conj(eta_k)
    bool conjugate_symmetric(double tol = 1e-12) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

    const std::vector<cpx>& raw() const { return a_; }
    std::vector<cpx>& raw() { return a_; }

    // Position of mode k in raw(); modes -M..-1 first, then 1..M.
    int index_of(int k) const;

  private:
    int trunc_;
    std::vector<cpx> a_;
};

SpectralField operator+(SpectralField f, const SpectralField& g);
SpectralField operator-(SpectralField f, const SpectralField& g);
SpectralField operator*(double a, SpectralField f);

double sobolev_norm(const SpectralField& f, double s);

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cpx(int)>& m);

// Alias-free product: result_k = (2pi)^{-1/2} sum_{k1+k2=k} f_{k1} g_{k2}
// for 0 < |k| <= out_truncation, computed on a grid large enough that no
// wrap-around mode reaches the requested output band.
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g,
                                int out_truncation);

struct RealPair {
    SpectralField eta;
    SpectralField psi;
};

// One complex field u; the conjugate variables u_k^- = conj(u_k) are implied.
struct ComplexPair {
    SpectralField u;
};

// u = (|D|^{-1/4} eta + i |D|^{1/4} psi)/sqrt(2) and its inverse.
ComplexPair to_complex(const RealPair& p);
RealPair from_complex(const ComplexPair& c);

}  // namespace wwb
