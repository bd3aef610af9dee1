#ifndef TOWERLAB_QEXPANSION_HPP
#define TOWERLAB_QEXPANSION_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace towerlab {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Truncated Laurent series in q with exponents on the 1/24 grid: the map key e
// stands for q^{e/24}.  prec is the exclusive upper bound on stored grid
// exponents; arithmetic propagates precision by the usual min rule and never
// silently extends it.
class QSeries {
public:
    QSeries() : prec_(0) {}
    explicit QSeries(long prec) : prec_(prec) {}

    long prec() const { return prec_; }
    // Valuation: least grid exponent with nonzero coefficient.
    std::optional<long> lead() const;
    Rat coeff(long e) const;
    // Coefficient of the integral power q^n.
    Rat qcoeff(long n) const { return coeff(24 * n); }
    const std::map<long, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // True if every exponent is a multiple of 24 (an integral q-expansion).
    bool integral() const;

    void set(long e, const Rat& v);

    static QSeries constant(const Rat& v, long prec);

    QSeries add(const QSeries& o) const;
    QSeries sub(const QSeries& o) const;
    QSeries mul(const QSeries& o) const;
    QSeries div(const QSeries& o) const;
    QSeries pow(long n) const;  // n may be negative
    QSeries scale(const Rat& s) const;
    QSeries shift(const Rat& s) const;  // add a constant
    // q -> q^m: multiplies every grid exponent and the precision by m.
    QSeries substitute(long m) const;

    QSeries truncated(long prec) const;

    std::string str(int max_terms = 8) const;

private:
    long prec_;
    std::map<long, Rat> c_;  // grid exponent -> coefficient, all < prec_
};

// q^{M/24} * prod_{r>=1} (1 - q^{Mr}) truncated at grid exponent prec,
// expanded by Euler's pentagonal number theorem.
QSeries eta_series(long M, long prec);

// An eta quotient prod eta(M_i tau)^{r_i}, optionally post-composed with the
// affine map x -> shift + scale * x.
struct EtaQuotient {
    std::vector<std::pair<long, long>> factors;  // (multiplier M, exponent r)
    Rat scale = 1;
    Rat shift = 0;

    long lead_exponent() const;  // sum r*M, the grid exponent of the product's leading term
    QSeries series(long prec) const;
};

// Registry names: xi4 h2 xi9 h3 xi25 h5 xi16 h4 xi36 gamma36 h6 h6p xi12.
const std::vector<std::string>& hauptmodul_names();
const EtaQuotient& hauptmodul_quotient(const std::string& name);
QSeries hauptmodul_series(const std::string& name, long prec);

struct QIdentityReport {
    std::string id;
    bool pass;
    // Grid exponent of the leading nonzero residual term, when failing.
    std::optional<long> residual_lead;
    long prec;
};

// Registry: h2_from_xi h3_level h4_level h5_level weierstrass36 h6_level h6p_level.
const std::vector<std::string>& qidentity_names();
QIdentityReport verify_qidentity(const std::string& id, long prec);

// ---------------------------------------------------------------------------
// Exact polynomial identities over the rationals.

// Dense univariate polynomial over Q, low degree first.
struct UniQ {
    std::vector<Rat> c;

    static UniQ from(std::vector<Rat> v);
    static UniQ x();
    bool is_zero() const;
    int degree() const;
    UniQ add(const UniQ& o) const;
    UniQ sub(const UniQ& o) const;
    UniQ mul(const UniQ& o) const;
    UniQ scale(const Rat& s) const;
    UniQ pow(long n) const;
    bool operator==(const UniQ& o) const;
};

// Sparse bivariate polynomial over Q.
struct BiQ {
    std::map<std::pair<int, int>, Rat> c;  // (x-degree, y-degree) -> coeff

    static BiQ term(int i, int j, const Rat& v);
    bool is_zero() const;
    int xdeg() const;
    int ydeg() const;
    BiQ add(const BiQ& o) const;
    BiQ sub(const BiQ& o) const;
    BiQ mul(const BiQ& o) const;
    BiQ scale(const Rat& s) const;
    BiQ pow(long n) const;
    bool operator==(const BiQ& o) const { return c == o.c; }
    // True if this == r * o for some nonzero rational r (returned via r).
    bool proportional(const BiQ& o, Rat& r) const;
    std::string str() const;
};

struct TowerData;

// The frozen correspondence polynomial Phi(x, y) of a catalog tower as a BiQ.
BiQ correspondence_poly(const TowerData& td);
// Numerator of the defining relation R(x, z) after substituting the tower's
// involution z = (a y + b)/(c y + d) and clearing (c y + d)^l.  For the
// elliptic tower the relation is already polynomial and is returned as is.
BiQ relation_numerator(const TowerData& td);

struct RationalIdentityReport {
    std::string id;
    bool pass;
    std::string witness;  // the nonzero difference when failing, else empty
};

// Registry: dihedral5, invol_sq_<tower> (8), phi_consistency_<tower> (8),
// equiv_form_3x2, w3_commute.
const std::vector<std::string>& rational_identity_names();
RationalIdentityReport verify_rational_identity(const std::string& id);

}  // namespace towerlab

#endif
