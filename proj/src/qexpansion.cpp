#include "towerlab/qexpansion.hpp"

#include "towerlab/towerdata.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace towerlab {

// ---------------------------------------------------------------------------
// QSeries

std::optional<long> QSeries::lead() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

Rat QSeries::coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
}

bool QSeries::integral() const {
    for (const auto& [e, v] : c_)
        if (e % 24 != 0) return false;
    return true;
}

void QSeries::set(long e, const Rat& v) {
    if (e >= prec_) return;
    if (v == 0)
        c_.erase(e);
    else
        c_[e] = v;
}

QSeries QSeries::constant(const Rat& v, long prec) {
    QSeries s(prec);
    s.set(0, v);
    return s;
}

QSeries QSeries::add(const QSeries& o) const {
    QSeries r(std::min(prec_, o.prec_));
    for (const auto& [e, v] : c_) r.set(e, v);
    for (const auto& [e, v] : o.c_) r.set(e, r.coeff(e) + v);
    return r;
}

QSeries QSeries::sub(const QSeries& o) const {
    QSeries r(std::min(prec_, o.prec_));
    for (const auto& [e, v] : c_) r.set(e, v);
    for (const auto& [e, v] : o.c_) r.set(e, r.coeff(e) - v);
    return r;
}

QSeries QSeries::mul(const QSeries& o) const {
    // a known mod q^{Na/24} with valuation va, b likewise: the product is
    // trustworthy below min(Na + vb, Nb + va)
    long va = lead().value_or(prec_);
    long vb = o.lead().value_or(o.prec_);
    long prec = std::min(prec_ + vb, o.prec_ + va);
    QSeries r(prec);
    for (const auto& [ea, ca] : c_) {
        if (ea + vb >= prec) break;
        for (const auto& [eb, cb] : o.c_) {
            long e = ea + eb;
            if (e >= prec) break;
            r.set(e, r.coeff(e) + ca * cb);
        }
    }
    return r;
}

QSeries QSeries::div(const QSeries& o) const {
    auto vbo = o.lead();
    if (!vbo) throw std::domain_error("division by series with no visible leading term");
    long vb = *vbo;
    long va = lead().value_or(prec_);
    // quotient valuation va - vb; long division is reliable below
    // min(prec(a) - vb, prec(b) + va - 2 vb)
    long prec = std::min(prec_ - vb, o.prec_ + va - 2 * vb);
    QSeries rem = *this;
    QSeries quo(prec);
    Rat blead = o.coeff(vb);
    while (true) {
        auto vr = rem.lead();
        if (!vr) break;
        long e = *vr - vb;
        if (e >= prec) break;
        Rat c = rem.coeff(*vr) / blead;
        quo.set(e, c);
        // rem -= c q^{e/24} * o
        for (const auto& [eb, cb] : o.c_) {
            long er = e + eb;
            if (er >= rem.prec()) break;
            rem.set(er, rem.coeff(er) - c * cb);
        }
    }
    return quo;
}

QSeries QSeries::pow(long n) const {
    if (n < 0) return QSeries::constant(1, prec_ - 2 * lead().value_or(0)).div(*this).pow(-n);
    QSeries r = QSeries::constant(1, prec_ + (n > 0 ? (n - 1) * lead().value_or(0) : 0));
    QSeries base = *this;
    // simple repeated multiplication keeps the precision rule transparent
    for (long i = 0; i < n; ++i) r = r.mul(base);
    return r;
}

QSeries QSeries::scale(const Rat& s) const {
    QSeries r(prec_);
    if (s == 0) return r;
    for (const auto& [e, v] : c_) r.set(e, v * s);
    return r;
}

QSeries QSeries::shift(const Rat& s) const {
    QSeries r = *this;
    r.set(0, r.coeff(0) + s);
    return r;
}

QSeries QSeries::substitute(long m) const {
    if (m < 1) throw std::invalid_argument("substitute requires m >= 1");
    QSeries r(prec_ * m);
    for (const auto& [e, v] : c_) r.set(e * m, v);
    return r;
}

QSeries QSeries::truncated(long prec) const {
    QSeries r(std::min(prec, prec_));
    for (const auto& [e, v] : c_) {
        if (e >= r.prec()) break;
        r.set(e, v);
    }
    return r;
}

std::string QSeries::str(int max_terms) const {
    std::ostringstream os;
    int n = 0;
    for (const auto& [e, v] : c_) {
        if (n++ == max_terms) {
            os << " + ...";
            break;
        }
        if (n > 1) os << " + ";
        os << v.str();
        if (e != 0) {
            os << "*q^";
            if (e % 24 == 0)
                os << e / 24;
            else
                os << "(" << e << "/24)";
        }
    }
    os << " + O(q^(" << prec_ << "/24))";
    return os.str();
}

// ---------------------------------------------------------------------------
// Eta products

QSeries eta_series(long M, long prec) {
    if (M < 1 || M > 36) throw std::invalid_argument("eta multiplier out of range [1,36]");
    if (prec <= M) throw std::invalid_argument("precision too small to hold the leading eta term");
    QSeries s(prec);
    // q^{M/24} sum_j (-1)^j q^{M j(3j-1)/2}; grid exponent M + 24 M j(3j-1)/2
    for (long j = 0;; ++j) {
        bool any = false;
        for (long sgn : {1L, -1L}) {
            long jj = sgn * j;
            if (j == 0 && sgn < 0) continue;
            long g = jj * (3 * jj - 1) / 2;
            long e = M + 24 * M * g;
            if (e < prec) {
                s.set(e, s.coeff(e) + ((j % 2 == 0) ? 1 : -1));
                any = true;
            }
        }
        if (!any && j > 0) break;
    }
    return s;
}

long EtaQuotient::lead_exponent() const {
    long e = 0;
    for (auto [M, r] : factors) e += r * M;
    return e;
}

QSeries EtaQuotient::series(long prec) const {
    // numerator and denominator eta products, computed with enough padding so
    // that the quotient reaches the requested precision
    long lead_den = 0;
    for (auto [M, r] : factors)
        if (r < 0) lead_den += -r * M;
    long pad = prec + 2 * lead_den + 48;
    QSeries num = QSeries::constant(1, pad);
    QSeries den = QSeries::constant(1, pad);
    for (auto [M, r] : factors) {
        QSeries e = eta_series(M, pad);
        for (long i = 0; i < std::labs(r); ++i) {
            if (r > 0)
                num = num.mul(e);
            else
                den = den.mul(e);
        }
        num = num.truncated(pad);
        den = den.truncated(pad);
    }
    QSeries s = num.div(den);
    if (scale != 1) s = s.scale(scale);
    if (shift != 0) s = s.shift(shift);
    QSeries out = s.truncated(prec);
    if (out.prec() < prec)
        throw std::logic_error("eta quotient did not reach requested precision");
    return out;
}

// ---------------------------------------------------------------------------
// Hauptmodul registry

namespace {

struct RegistryEntry {
    std::string name;
    EtaQuotient eq;
};

const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> reg = [] {
        std::vector<RegistryEntry> r;
        auto add = [&](const std::string& n, std::vector<std::pair<long, long>> f,
                       Rat scale = 1, Rat shift = 0) {
            r.push_back({n, EtaQuotient{std::move(f), scale, shift}});
        };
        add("xi4", {{1, 8}, {4, -8}}, Rat(1, 8), 1);
        add("h2", {{1, 24}, {2, -24}});
        add("xi9", {{1, 3}, {9, -3}}, Rat(1, 3), 1);
        add("h3", {{1, 12}, {3, -12}});
        add("xi25", {{1, 1}, {25, -1}}, 1, 1);
        add("h5", {{1, 6}, {5, -6}});
        add("xi16", {{1, 2}, {8, 1}, {2, -1}, {16, -2}}, Rat(1, 2), 1);
        add("h4", {{1, 8}, {4, -8}});
        add("xi36", {{12, 1}, {18, 3}, {6, -1}, {36, -3}});
        add("gamma36", {{12, 4}, {18, 2}, {6, -2}, {36, -4}});
        add("h6", {{1, 5}, {3, 1}, {2, -1}, {6, -5}});
        add("h6p", {{2, 3}, {3, 9}, {1, -3}, {6, -9}});
        add("xi12", {{4, 4}, {6, 2}, {2, -2}, {12, -4}});
        return r;
    }();
    return reg;
}

}  // namespace

const std::vector<std::string>& hauptmodul_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& e : registry()) n.push_back(e.name);
        return n;
    }();
    return names;
}

const EtaQuotient& hauptmodul_quotient(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return e.eq;
    throw std::invalid_argument("unknown hauptmodul: " + name);
}

QSeries hauptmodul_series(const std::string& name, long prec) {
    if (prec < 10 * 24) throw std::invalid_argument("hauptmodul precision below 10*24");
    return hauptmodul_quotient(name).series(prec);
}

// ---------------------------------------------------------------------------
// q-identity suite

namespace {

// LHS - RHS of a registered identity as a QSeries with precision >= prec.
QSeries qidentity_residual(const std::string& id, long prec) {
    auto H = [&](const std::string& n, long p) { return hauptmodul_series(n, p); };
    long pad = prec + 240;
    if (id == "h2_from_xi") {
        // h2 (xi+1) = 8 (xi-1)^2, multiplied out to avoid a division; this is
        // the degree-2 map with the continued-fraction form h2 = 8x - 24 + 32/(x+1)
        QSeries xi = H("xi4", pad), h2 = H("h2", pad);
        QSeries lhs = h2.mul(xi.shift(1));
        QSeries rhs = xi.shift(-1).pow(2).scale(8);
        return lhs.sub(rhs).truncated(prec);
    }
    if (id == "h3_level") {
        QSeries xi = H("xi9", pad), h3 = H("h3", pad);
        return h3.substitute(3).sub(xi.pow(3).shift(-1).scale(27)).truncated(prec);
    }
    if (id == "h4_level") {
        QSeries xi = H("xi16", pad), h4 = H("h4", pad);
        return h4.substitute(4).sub(xi.pow(4).shift(-1).scale(16)).truncated(prec);
    }
    if (id == "h5_level") {
        QSeries xi = H("xi25", pad), h5 = H("h5", pad);
        // P(X) = X^5 + 5X^3 + 5X - 11
        QSeries P = xi.pow(5).add(xi.pow(3).scale(5)).add(xi.scale(5)).shift(-11);
        return h5.substitute(5).sub(P).truncated(prec);
    }
    if (id == "weierstrass36") {
        QSeries xi = H("xi36", pad), ga = H("gamma36", pad);
        return ga.pow(2).sub(xi.pow(3).shift(1)).truncated(prec);
    }
    if (id == "h6_level") {
        QSeries xi = H("xi36", pad), h6 = H("h6", pad);
        return h6.substitute(6).sub(xi.pow(3).shift(-8)).truncated(prec);
    }
    if (id == "h6p_level") {
        QSeries xi = H("xi12", pad), h6p = H("h6p", pad);
        return h6p.substitute(2).sub(xi.pow(2).shift(-1)).truncated(prec);
    }
    throw std::invalid_argument("unknown q-identity: " + id);
}

}  // namespace

const std::vector<std::string>& qidentity_names() {
    static const std::vector<std::string> n = {
        "h2_from_xi", "h3_level", "h4_level", "h5_level",
        "weierstrass36", "h6_level", "h6p_level"};
    return n;
}

QIdentityReport verify_qidentity(const std::string& id, long prec) {
    if (prec < 120 * 24) throw std::invalid_argument("q-identity precision below 120*24");
    QSeries res = qidentity_residual(id, prec);
    QIdentityReport rep{id, res.is_zero(), std::nullopt, res.prec()};
    if (!rep.pass) rep.residual_lead = res.lead();
    return rep;
}

// ---------------------------------------------------------------------------
// Exact polynomials over Q

UniQ UniQ::from(std::vector<Rat> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return UniQ{std::move(v)};
}

UniQ UniQ::x() { return UniQ{{0, 1}}; }

bool UniQ::is_zero() const { return c.empty(); }

int UniQ::degree() const { return static_cast<int>(c.size()) - 1; }

UniQ UniQ::add(const UniQ& o) const {
    std::vector<Rat> v(std::max(c.size(), o.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return from(std::move(v));
}

UniQ UniQ::sub(const UniQ& o) const { return add(o.scale(-1)); }

UniQ UniQ::mul(const UniQ& o) const {
    if (is_zero() || o.is_zero()) return UniQ{};
    std::vector<Rat> v(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    return from(std::move(v));
}

UniQ UniQ::scale(const Rat& s) const {
    if (s == 0) return UniQ{};
    std::vector<Rat> v = c;
    for (auto& x : v) x *= s;
    return UniQ{std::move(v)};
}

UniQ UniQ::pow(long n) const {
    UniQ r{{1}};
    for (long i = 0; i < n; ++i) r = r.mul(*this);
    return r;
}

bool UniQ::operator==(const UniQ& o) const { return c == o.c; }

BiQ BiQ::term(int i, int j, const Rat& v) {
    BiQ b;
    if (v != 0) b.c[{i, j}] = v;
    return b;
}

bool BiQ::is_zero() const { return c.empty(); }

int BiQ::xdeg() const {
    int d = -1;
    for (const auto& [k, v] : c) d = std::max(d, k.first);
    return d;
}

int BiQ::ydeg() const {
    int d = -1;
    for (const auto& [k, v] : c) d = std::max(d, k.second);
    return d;
}

BiQ BiQ::add(const BiQ& o) const {
    BiQ r = *this;
    for (const auto& [k, v] : o.c) {
        auto it = r.c.find(k);
        if (it == r.c.end()) {
            r.c[k] = v;
        } else {
            it->second += v;
            if (it->second == 0) r.c.erase(it);
        }
    }
    return r;
}

BiQ BiQ::sub(const BiQ& o) const { return add(o.scale(-1)); }

BiQ BiQ::mul(const BiQ& o) const {
    BiQ r;
    for (const auto& [ka, va] : c)
        for (const auto& [kb, vb] : o.c) {
            std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
            auto it = r.c.find(k);
            if (it == r.c.end()) {
                Rat v = va * vb;
                if (v != 0) r.c[k] = v;
            } else {
                it->second += va * vb;
                if (it->second == 0) r.c.erase(it);
            }
        }
    return r;
}

BiQ BiQ::scale(const Rat& s) const {
    BiQ r;
    if (s == 0) return r;
    for (const auto& [k, v] : c) r.c[k] = v * s;
    return r;
}

BiQ BiQ::pow(long n) const {
    BiQ r = term(0, 0, 1);
    for (long i = 0; i < n; ++i) r = r.mul(*this);
    return r;
}

bool BiQ::proportional(const BiQ& o, Rat& r) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (c.size() != o.c.size()) return false;
    auto ia = c.begin();
    auto ib = o.c.begin();
    r = ia->second / ib->second;
    for (; ia != c.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second != r * ib->second) return false;
    }
    return true;
}

std::string BiQ::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        if (it->first.first) os << "*x^" << it->first.first;
        if (it->first.second) os << "*y^" << it->first.second;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace towerlab
