#include "towerlab/qexpansion.hpp"
#include "towerlab/towerdata.hpp"

#include <sstream>
#include <stdexcept>

namespace towerlab {

namespace {

// --- univariate rational functions over Q, for the elliptic involution check

std::pair<UniQ, UniQ> divmod(const UniQ& a, const UniQ& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    UniQ r = a;
    std::vector<Rat> q(std::max<int>(0, a.degree() - b.degree() + 1), 0);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        Rat c = r.c.back() / b.c.back();
        q[d] = c;
        // r -= c x^d b
        std::vector<Rat> v = r.c;
        for (int i = 0; i <= b.degree(); ++i) v[i + d] -= c * b.c[i];
        r = UniQ::from(std::move(v));
    }
    return {UniQ::from(std::move(q)), r};
}

UniQ gcd(UniQ a, UniQ b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a.scale(1 / a.c.back());  // monic
    return a;
}

// Rational function num/den, kept reduced with monic denominator.
struct RF {
    UniQ num, den;

    static RF of(UniQ n, UniQ d) {
        if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
        UniQ g = gcd(n, d);
        if (g.degree() >= 1) {
            n = divmod(n, g).first;
            d = divmod(d, g).first;
        }
        if (!d.is_zero() && d.c.back() != 1) {
            Rat lc = d.c.back();
            n = n.scale(1 / lc);
            d = d.scale(1 / lc);
        }
        return RF{std::move(n), std::move(d)};
    }
    static RF poly(UniQ p) { return of(std::move(p), UniQ{{1}}); }
    static RF constant(const Rat& v) { return poly(UniQ::from({v})); }

    RF add(const RF& o) const { return of(num.mul(o.den).add(o.num.mul(den)), den.mul(o.den)); }
    RF sub(const RF& o) const { return of(num.mul(o.den).sub(o.num.mul(den)), den.mul(o.den)); }
    RF mul(const RF& o) const { return of(num.mul(o.num), den.mul(o.den)); }
    RF div(const RF& o) const { return of(num.mul(o.den), den.mul(o.num)); }
    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RF& o) const { return num == o.num && den == o.den; }
};

// Element a + b*y of Q(x)[y] / (y^2 - x^3 - 1).
struct FF {
    RF a, b;

    static FF of(RF a, RF b) { return FF{std::move(a), std::move(b)}; }
    static FF scalar(const Rat& v) { return FF{RF::constant(v), RF::constant(0)}; }
    static FF xcoord() { return FF{RF::poly(UniQ::x()), RF::constant(0)}; }
    static FF ycoord() { return FF{RF::constant(0), RF::constant(1)}; }

    FF add(const FF& o) const { return {a.add(o.a), b.add(o.b)}; }
    FF sub(const FF& o) const { return {a.sub(o.a), b.sub(o.b)}; }
    FF neg() const { return {a.mul(RF::constant(-1)), b.mul(RF::constant(-1))}; }
    FF mul(const FF& o) const {
        // (a1 + b1 y)(a2 + b2 y) with y^2 = x^3 + 1
        RF ysq = RF::poly(UniQ{{1, 0, 0, 1}});
        return {a.mul(o.a).add(b.mul(o.b).mul(ysq)), a.mul(o.b).add(b.mul(o.a))};
    }
    FF inv() const {
        RF ysq = RF::poly(UniQ{{1, 0, 0, 1}});
        RF n = a.mul(a).sub(b.mul(b).mul(ysq));  // conjugate norm
        if (n.is_zero()) throw std::domain_error("non-invertible function field element");
        RF ni = RF::constant(1).div(n);
        return {a.mul(ni), b.mul(ni).mul(RF::constant(-1))};
    }
    FF div(const FF& o) const { return mul(o.inv()); }
    bool operator==(const FF& o) const { return a == o.a && b == o.b; }
};

struct FFPoint {
    FF x, y;
};

// T + P on y^2 = x^3 + 1 with T = (2,3) and P a generic point (chord rule;
// valid because T != +-P identically).
FFPoint add_T(const FFPoint& p) {
    FF two = FF::scalar(2), three = FF::scalar(3);
    FF lam = p.y.sub(three).div(p.x.sub(two));  // chord slope (y - 3)/(x - 2)
    FF xr = lam.mul(lam).sub(two).sub(p.x);
    FF yr = lam.mul(two.sub(xr)).sub(three);
    return {xr, yr};
}

// w(P) = (2,3) - P
FFPoint elliptic_w(const FFPoint& p) { return add_T({p.x, p.y.neg()}); }

// --- helpers over BiQ

BiQ biq_from_table(const std::vector<std::array<long long, 3>>& terms) {
    BiQ r;
    for (const auto& t : terms)
        r = r.add(BiQ::term(static_cast<int>(t[0]), static_cast<int>(t[1]), Rat(t[2])));
    return r;
}

// (a y + b) as BiQ in y
BiQ linear_y(long long a, long long b) {
    return BiQ::term(0, 1, Rat(a)).add(BiQ::term(0, 0, Rat(b)));
}

}  // namespace

BiQ correspondence_poly(const TowerData& td) { return biq_from_table(td.phi); }

BiQ relation_numerator(const TowerData& td) {
    BiQ R = biq_from_table(td.relation);
    if (td.elliptic) return R;
    // substitute z = (a y + b)/(c y + d), clear (c y + d)^l
    int l = td.l;
    BiQ up = linear_y(td.ma, td.mb);
    BiQ dn = linear_y(td.mc, td.md);
    std::vector<BiQ> uppow(l + 1), dnpow(l + 1);
    uppow[0] = dnpow[0] = BiQ::term(0, 0, 1);
    for (int i = 1; i <= l; ++i) {
        uppow[i] = uppow[i - 1].mul(up);
        dnpow[i] = dnpow[i - 1].mul(dn);
    }
    BiQ out;
    for (const auto& t : td.relation) {
        int i = static_cast<int>(t[0]), j = static_cast<int>(t[1]);
        BiQ term = BiQ::term(i, 0, Rat(t[2])).mul(uppow[j]).mul(dnpow[l - j]);
        out = out.add(term);
    }
    return out;
}

namespace {

RationalIdentityReport pass_fail(const std::string& id, const BiQ& diff) {
    RationalIdentityReport r{id, diff.is_zero(), ""};
    if (!r.pass) r.witness = diff.str();
    return r;
}

RationalIdentityReport check_dihedral5() {
    // P(W - 1/W) * W^5 = W^10 - 11 W^5 - 1 with P(X) = X^5 + 5X^3 + 5X - 11.
    // Work with ordinary polynomials: (W^2 - 1)^k W^{5-k}.
    UniQ wsq1 = UniQ{{-1, 0, 1}};
    UniQ W = UniQ::x();
    auto piece = [&](int k, const Rat& c) {
        return wsq1.pow(k).mul(W.pow(5 - k)).scale(c);
    };
    UniQ lhs = piece(5, 1).add(piece(3, 5)).add(piece(1, 5)).add(piece(0, -11));
    UniQ rhs = UniQ::from({-1, 0, 0, 0, 0, -11, 0, 0, 0, 0, 1});
    UniQ diff = lhs.sub(rhs);
    RationalIdentityReport r{"dihedral5", diff.is_zero(), ""};
    if (!r.pass) {
        std::ostringstream os;
        for (std::size_t i = 0; i < diff.c.size(); ++i)
            if (diff.c[i] != 0) os << diff.c[i].str() << "*W^" << i << " ";
        r.witness = os.str();
    }
    return r;
}

RationalIdentityReport check_invol_sq(const TowerData& td) {
    std::string id = "invol_sq_" + td.name;
    if (td.elliptic) {
        // w(w(P)) = P for the generic point of y^2 = x^3 + 1
        FFPoint P{FF::xcoord(), FF::ycoord()};
        FFPoint Q = elliptic_w(elliptic_w(P));
        bool ok = Q.x == P.x && Q.y == P.y;
        return {id, ok, ok ? "" : "w(w(P)) != P on the generic point"};
    }
    // z(z(x)) = x: numerator a(ax+b) + b(cx+d) - x(c(ax+b) + d(cx+d)) must vanish
    long long a = td.ma, b = td.mb, c = td.mc, d = td.md;
    UniQ x = UniQ::x();
    UniQ up = x.scale(a).add(UniQ{{Rat(b)}});
    UniQ dn = x.scale(c).add(UniQ{{Rat(d)}});
    UniQ num = up.scale(a).add(dn.scale(b)).sub(x.mul(up.scale(c).add(dn.scale(d))));
    RationalIdentityReport r{id, num.is_zero(), ""};
    if (!r.pass) r.witness = "z(z(x)) - x has nonzero numerator";
    return r;
}

RationalIdentityReport check_phi_consistency(const TowerData& td) {
    std::string id = "phi_consistency_" + td.name;
    BiQ phi = correspondence_poly(td);
    BiQ num = relation_numerator(td);
    Rat scalar;
    if (num.proportional(phi, scalar) && scalar != 0) return {id, true, ""};
    return pass_fail(id, num.sub(phi));
}

RationalIdentityReport check_equiv_form_3x2() {
    const TowerData& td = tower_data("x0_3x2");
    BiQ phi = correspondence_poly(td);
    BiQ num = relation_numerator(td);  // numerator of (x^2-1)(z(y)^2-1)+8
    // (y-1) x^2 - y^2 - 3y
    BiQ alt = BiQ::term(2, 1, 1).add(BiQ::term(2, 0, -1)).add(BiQ::term(0, 2, -1)).add(
        BiQ::term(0, 1, -3));
    Rat s1, s2;
    bool ok = num.proportional(phi, s1) && alt.proportional(phi, s2) && s1 != 0 && s2 != 0;
    if (ok) return {"equiv_form_3x2", true, ""};
    return pass_fail("equiv_form_3x2", num.sub(alt));
}

RationalIdentityReport check_w3_commute() {
    const TowerData& td = tower_data("x0_3x2");
    BiQ phi = correspondence_poly(td);
    // x^2 y^2 Phi(-3/x, -3/y): term c x^i y^j -> c (-3)^{i+j} x^{2-i} y^{2-j}
    BiQ img;
    for (const auto& [k, v] : phi.c) {
        Rat c = v;
        for (int t = 0; t < k.first + k.second; ++t) c *= -3;
        img = img.add(BiQ::term(2 - k.first, 2 - k.second, c));
    }
    Rat s;
    if (img.proportional(phi, s) && s != 0) return {"w3_commute", true, ""};
    return pass_fail("w3_commute", img.sub(phi));
}

}  // namespace

const std::vector<std::string>& rational_identity_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n{"dihedral5"};
        for (const auto& td : tower_data()) n.push_back("invol_sq_" + td.name);
        for (const auto& td : tower_data()) n.push_back("phi_consistency_" + td.name);
        n.push_back("equiv_form_3x2");
        n.push_back("w3_commute");
        return n;
    }();
    return names;
}

RationalIdentityReport verify_rational_identity(const std::string& id) {
    if (id == "dihedral5") return check_dihedral5();
    if (id == "equiv_form_3x2") return check_equiv_form_3x2();
    if (id == "w3_commute") return check_w3_commute();
    const std::string inv = "invol_sq_", phi = "phi_consistency_";
    if (id.rfind(inv, 0) == 0) return check_invol_sq(tower_data(id.substr(inv.size())));
    if (id.rfind(phi, 0) == 0) return check_phi_consistency(tower_data(id.substr(phi.size())));
    throw std::invalid_argument("unknown rational identity: " + id);
}

}  // namespace towerlab
