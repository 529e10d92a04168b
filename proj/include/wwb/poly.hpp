// Sparse algebra of momentum-conserving polynomial Hamiltonians in the
// complex mode variables u_k, conj(u_k): evaluation, gradients, Poisson
// brackets, Hamiltonian vector fields, resonant-kernel projection and the
// cohomological solve.
//
// Bracket orientation: {F,H} is the derivative of F along the flow of H,
//   {F,H} = (1/i) sum_k ( d_{u_k}F d_{conj u_k}H - d_{conj u_k}F d_{u_k}H ).

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <initializer_list>
#include <limits>
#include <unordered_map>
#include <vector>

#include "wwb/resonance.hpp"
#include "wwb/spectral.hpp"

namespace wwb {

struct SignedMode {
    int sigma;  // +1: factor u_k, -1: factor conj(u_k)
    int mode;   // nonzero
};

// Canonically ordered multiset of up to six signed modes.  Ordered degrees
// above four only occur transiently (nested brackets in property checks).
class Monomial {
  public:
    static constexpr int max_degree = 6;

    Monomial() { codes_.fill(0); }
    Monomial(std::initializer_list<SignedMode> fs);
    static Monomial from_factors(const SignedMode* f, int n);

    int degree() const;
    SignedMode factor(int i) const;  // i in [0, degree)
    long momentum() const;
    double sigma_omega() const;  // sum sigma_i omega(mode_i)
    Monomial conjugate_flip() const;
    resonance::SignedTuple tuple() const;
    int max_abs_mode() const;

    bool operator==(const Monomial& o) const { return codes_ == o.codes_; }
    bool operator<(const Monomial& o) const;

    static std::uint16_t encode(SignedMode f);
    static SignedMode decode(std::uint16_t code);

    std::uint64_t hash_value() const;

    struct Hash {
        std::size_t operator()(const Monomial& m) const { return (std::size_t)m.hash_value(); }
    };

  private:
    std::array<std::uint16_t, max_degree> codes_;  // ascending, zeros lead
};

class PolyHamiltonian {
  public:
    using Map = std::unordered_map<Monomial, cpx, Monomial::Hash>;

    // Accumulates c onto monomial m; every admitted monomial must have zero
    // momentum.
    void add(const Monomial& m, cpx c);
    void prune(double eps = 1e-15);

    const Map& terms() const { return terms_; }
    cpx coeff(const Monomial& m) const;
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    std::vector<int> degrees() const;
    int max_abs_mode() const;
    double max_abs_coeff() const;

    PolyHamiltonian restricted(int M) const;
    PolyHamiltonian conjugate_flipped() const;
    bool is_real(double tol = 1e-12) const;

    PolyHamiltonian& operator+=(const PolyHamiltonian& o);
    PolyHamiltonian& operator*=(double a);

    // Deterministic (sorted) term order for output and diffing.
    std::vector<std::pair<Monomial, cpx>> sorted_terms() const;

  private:
    Map terms_;
};

PolyHamiltonian operator+(PolyHamiltonian a, const PolyHamiltonian& b);
PolyHamiltonian operator*(double a, PolyHamiltonian h);

// Throws std::out_of_range if H carries a mode beyond the truncation of c.
cpx evaluate(const PolyHamiltonian& H, const ComplexPair& c);

// Formal partial derivative with respect to u_k^sigma, evaluated at c.
cpx gradient(const PolyHamiltonian& H, const ComplexPair& c, int sigma, int k);

// The same derivative as a term list (not momentum conserving on its own).
using TermList = std::vector<std::pair<Monomial, cpx>>;
TermList gradient_terms(const PolyHamiltonian& H, int sigma, int k);

// {F,H} with the orientation stated above; monomials whose largest mode
// exceeds max_out_mode are discarded during accumulation.
PolyHamiltonian poisson_bracket(const PolyHamiltonian& F, const PolyHamiltonian& H,
                                int max_out_mode = std::numeric_limits<int>::max());

// Per-mode components of X_H in complex coordinates: the component on u_k
// is -i d_{conj u_k} H; components on conj(u_k) follow by conjugation.
class VectorField {
  public:
    VectorField() : M_(0) {}
    VectorField(int truncation) : M_(truncation), comp_(2 * truncation) {}

    int truncation() const { return M_; }

    // sigma=+1 components are stored; sigma=-1 is the conjugate flip.
    const TermList& component_plus(int k) const;
    TermList component(int sigma, int k) const;

    // du_k/dt for all modes; throws on truncation mismatch.
    SpectralField apply(const ComplexPair& c) const;

    void add_term(int k, const Monomial& m, cpx c);

  private:
    int M_;
    std::vector<TermList> comp_;  // index: k<0 -> k+M, k>0 -> k+M-1
};

VectorField hamiltonian_vector_field(const PolyHamiltonian& H, int truncation = 0);

// Retains exactly the monomials with exactly zero phase (decided by the
// integer test of wwb::resonance).  Input degrees must lie in {3,4}.
PolyHamiltonian project_kernel(const PolyHamiltonian& H);

// F3 with coefficient H3[m] / (i sum sigma_i omega(k_i)); then
// {F3, H_C^(2)} + H3 = 0 term by term.  Cubic divisors never vanish.
PolyHamiltonian solve_cohomological(const PolyHamiltonian& H3);

// Line format: "deg s1 k1 ... sd kd re im", one term per line.
void dump_terms(const PolyHamiltonian& H, std::ostream& os);
PolyHamiltonian parse_terms(std::istream& is);

}  // namespace wwb
