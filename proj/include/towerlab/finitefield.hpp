#ifndef TOWERLAB_FINITEFIELD_HPP
#define TOWERLAB_FINITEFIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerlab {

// Element of GF(p^k), encoded as an integer in [0, q): the base-p digits are
// the coefficients of the residue polynomial, least significant digit first.
using Elt = std::uint32_t;

// Exact arithmetic in GF(p^k) for p^k <= 10^6, k <= 12.
//
// The modulus is the lexicographically least monic irreducible polynomial of
// degree k over GF(p), ordering candidates by the numeric code
// sum a_i p^i of the non-leading coefficients.  This makes every derived
// quantity (root lists, point sets, counts) byte-reproducible.
class FieldCtx {
public:
    FieldCtx(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }

    // Modulus coefficients a_0..a_{k-1} (the monic leading term is implicit).
    // Empty for k = 1.
    const std::vector<std::uint32_t>& modulus() const { return mod_; }
    std::string modulus_str() const;

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    // Image of a rational integer under Z -> GF(p^k).
    Elt from_int(long long n) const;

    Elt add(Elt a, Elt b) const;
    Elt sub(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt mul(Elt a, Elt b) const;
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const;
    Elt pow(Elt a, std::uint64_t e) const;

private:
    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> mod_;

    std::vector<std::uint32_t> digits(Elt a) const;
    Elt undigits(const std::vector<std::uint32_t>& d) const;
    bool irreducible(const std::vector<std::uint32_t>& a) const;
    void find_modulus();
};

// Univariate polynomial over a FieldCtx, stored low-degree-first.
// The zero polynomial is an empty vector.
struct UniPoly {
    std::vector<Elt> c;

    bool is_zero() const;
    int degree() const;  // -1 for the zero polynomial
    static UniPoly from_coeffs(std::vector<Elt> v);
    Elt eval(const FieldCtx& f, Elt x) const;
    UniPoly mul(const FieldCtx& f, const UniPoly& o) const;
    // Exact division by (x - r); the remainder must vanish.
    UniPoly div_linear(const FieldCtx& f, Elt r) const;
};

// All roots of f in the field, with multiplicities, by exhaustive scan and
// repeated division.  The sum of multiplicities is at most deg f.
std::vector<std::pair<Elt, int>> uni_roots(const UniPoly& f, const FieldCtx& ctx);

}  // namespace towerlab

#endif
