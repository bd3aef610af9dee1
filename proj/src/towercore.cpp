#include "towerlab/towercore.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace towerlab {

namespace {

struct ECPoint {
    bool is_o = false;
    Elt x = 0, y = 0;
};

ECPoint ec_neg(const FieldCtx& f, const ECPoint& P) {
    if (P.is_o) return P;
    return {false, P.x, f.neg(P.y)};
}

// Group law on y^2 = x^3 + 1.
ECPoint ec_add(const FieldCtx& f, const ECPoint& P, const ECPoint& Q) {
    if (P.is_o) return Q;
    if (Q.is_o) return P;
    if (P.x == Q.x && f.add(P.y, Q.y) == 0) return {true, 0, 0};
    Elt lam;
    if (P.x == Q.x && P.y == Q.y) {
        lam = f.div(f.mul(f.from_int(3), f.mul(P.x, P.x)), f.mul(f.from_int(2), P.y));
    } else {
        lam = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
    }
    Elt x3 = f.sub(f.sub(f.mul(lam, lam), P.x), Q.x);
    Elt y3 = f.sub(f.mul(lam, f.sub(P.x, x3)), P.y);
    return {false, x3, y3};
}

ECPoint to_ec(const BasePoint& p) {
    if (p.infinite) return {true, 0, 0};
    return {false, p.x, p.y};
}

BasePoint from_ec(const ECPoint& p) {
    if (p.is_o) return BasePoint::inf();
    return BasePoint::at(p.x, p.y);
}

void push_mult(Fiber& fib, const BasePoint& p, int m) {
    for (auto& [q, mm] : fib.points)
        if (q == p) {
            mm += m;
            return;
        }
    fib.points.emplace_back(p, m);
}

}  // namespace

std::string point_str(const BasePoint& p, bool elliptic) {
    if (p.infinite) return "inf";
    std::ostringstream os;
    if (elliptic)
        os << "(" << p.x << "," << p.y << ")";
    else
        os << p.x;
    return os.str();
}

bool TowerSpec::admissible(const FieldCtx& ctx) const {
    for (int c : d_->excluded_chars)
        if (static_cast<std::uint32_t>(c) == ctx.p()) return false;
    return true;
}

void TowerSpec::require_admissible(const FieldCtx& ctx) const {
    if (!admissible(ctx))
        throw std::invalid_argument("tower " + d_->name + " is not defined in characteristic " +
                                    std::to_string(ctx.p()));
}

std::vector<BasePoint> TowerSpec::points(const FieldCtx& ctx) const {
    require_admissible(ctx);
    std::vector<BasePoint> pts;
    if (!d_->elliptic) {
        for (Elt x = 0; x < ctx.q(); ++x) pts.push_back(BasePoint::at(x));
        pts.push_back(BasePoint::inf());
        return pts;
    }
    pts.push_back(BasePoint::inf());  // the origin O
    for (Elt x = 0; x < ctx.q(); ++x) {
        Elt rhs = ctx.add(ctx.mul(x, ctx.mul(x, x)), ctx.one());
        for (Elt y = 0; y < ctx.q(); ++y)
            if (ctx.mul(y, y) == rhs) pts.push_back(BasePoint::at(x, y));
    }
    return pts;
}

Fiber TowerSpec::line_neighbors(const FieldCtx& ctx, const BasePoint& P) const {
    int l = d_->l;
    // coefficients of the fiber binary form in the second projective variable:
    // b[j] = sum over terms c * X0^i X1^(l-i) evaluated at (X0:X1) = P
    Elt X0, X1;
    if (P.infinite) {
        X0 = ctx.one();
        X1 = ctx.zero();
    } else {
        X0 = P.x;
        X1 = ctx.one();
    }
    std::vector<Elt> b(l + 1, 0);
    for (const auto& t : d_->phi) {
        int i = static_cast<int>(t[0]), j = static_cast<int>(t[1]);
        Elt v = ctx.mul(ctx.pow(X0, i), ctx.pow(X1, l - i));
        b[j] = ctx.add(b[j], ctx.mul(ctx.from_int(t[2]), v));
    }
    int deg = -1;
    for (int j = l; j >= 0; --j)
        if (b[j] != 0) {
            deg = j;
            break;
        }
    if (deg < 0) throw std::logic_error("degenerate fiber form at " + point_str(P, false));
    Fiber fib;
    UniPoly f = UniPoly::from_coeffs(std::vector<Elt>(b.begin(), b.begin() + deg + 1));
    for (const auto& [r, m] : uni_roots(f, ctx)) push_mult(fib, BasePoint::at(r), m);
    if (l - deg > 0) push_mult(fib, BasePoint::inf(), l - deg);
    fib.residual_degree = l - fib.rational_multiplicity();
    if (fib.residual_degree < 0) throw std::logic_error("fiber multiplicity overflow");
    return fib;
}

Fiber TowerSpec::elliptic_neighbors(const FieldCtx& ctx, const BasePoint& P) const {
    // correspondence (x_j^3 - 8)(z_{j+1}^3 - 8) = 72 with z the x-coordinate of
    // (2,3) - P_{j+1}; the fiber over P is computed from t = z^3 = 8 + 72/(x^3-8)
    Elt e8 = ctx.from_int(8), e72 = ctx.from_int(72);
    ECPoint T{false, ctx.from_int(2), ctx.from_int(3)};
    Fiber fib;
    bool t_infinite = false;
    Elt t = 0;
    if (P.infinite) {
        t = e8;
    } else {
        Elt x3 = ctx.mul(P.x, ctx.mul(P.x, P.x));
        Elt d = ctx.sub(x3, e8);
        if (d == 0)
            t_infinite = true;
        else
            t = ctx.add(e8, ctx.mul(e72, ctx.inv(d)));
    }
    if (t_infinite) {
        // z = inf with multiplicity 3, and the only point with z(Q) = inf is
        // Q = (2,3) (then (2,3) - Q = O), with multiplicity 2 in the x-fiber
        push_mult(fib, BasePoint::at(T.x, T.y), 6);
        fib.residual_degree = 0;
        return fib;
    }
    // rational cube roots z of t, then points (2,3) - (z, +-w) with w^2 = z^3+1
    UniPoly cub = UniPoly::from_coeffs({ctx.neg(t), 0, 0, ctx.one()});
    for (const auto& [z, mz] : uni_roots(cub, ctx)) {
        Elt rhs = ctx.add(ctx.mul(z, ctx.mul(z, z)), ctx.one());
        UniPoly sq = UniPoly::from_coeffs({ctx.neg(rhs), 0, ctx.one()});
        for (const auto& [w, mw] : uni_roots(sq, ctx)) {
            ECPoint nb = ec_add(ctx, T, ec_neg(ctx, ECPoint{false, z, w}));
            push_mult(fib, from_ec(nb), mz * mw);
        }
    }
    fib.residual_degree = d_->l - fib.rational_multiplicity();
    if (fib.residual_degree < 0) throw std::logic_error("fiber multiplicity overflow");
    return fib;
}

Fiber TowerSpec::neighbors(const FieldCtx& ctx, const BasePoint& P) const {
    require_admissible(ctx);
    Fiber fib = d_->elliptic ? elliptic_neighbors(ctx, P) : line_neighbors(ctx, P);
    std::sort(fib.points.begin(), fib.points.end());
    return fib;
}

BasePoint TowerSpec::apply_w(const FieldCtx& ctx, const BasePoint& P) const {
    require_admissible(ctx);
    if (d_->elliptic) {
        ECPoint T{false, ctx.from_int(2), ctx.from_int(3)};
        return from_ec(ec_add(ctx, T, ec_neg(ctx, to_ec(P))));
    }
    Elt a = ctx.from_int(d_->ma), b = ctx.from_int(d_->mb);
    Elt c = ctx.from_int(d_->mc), d = ctx.from_int(d_->md);
    if (ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) == 0)
        throw std::logic_error("degenerate involution in characteristic " +
                               std::to_string(ctx.p()));
    if (P.infinite) {
        if (c == 0) return BasePoint::inf();
        return BasePoint::at(ctx.div(a, c));
    }
    Elt den = ctx.add(ctx.mul(c, P.x), d);
    if (den == 0) return BasePoint::inf();
    return BasePoint::at(ctx.div(ctx.add(ctx.mul(a, P.x), b), den));
}

BasePoint TowerSpec::apply_aux(const FieldCtx& ctx, const BasePoint& P) const {
    if (!has_aux())
        throw std::invalid_argument("tower " + d_->name + " has no auxiliary involution");
    require_admissible(ctx);
    // x -> -3/x
    if (P.infinite) return BasePoint::at(ctx.zero());
    if (P.x == 0) return BasePoint::inf();
    return BasePoint::at(ctx.div(ctx.from_int(-3), P.x));
}

const std::vector<TowerSpec>& catalog() {
    static const std::vector<TowerSpec> cat = [] {
        std::vector<TowerSpec> v;
        for (const auto& td : tower_data()) v.emplace_back(td);
        return v;
    }();
    return cat;
}

const TowerSpec& catalog(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name() == name) return s;
    throw std::invalid_argument("unknown tower: " + name);
}

Adjacency Adjacency::build(const TowerSpec& spec, const FieldCtx& ctx) {
    Adjacency a;
    a.pts = spec.points(ctx);
    for (std::size_t i = 0; i < a.pts.size(); ++i) a.index[a.pts[i]] = static_cast<int>(i);
    a.next.resize(a.pts.size());
    for (std::size_t i = 0; i < a.pts.size(); ++i) {
        Fiber fib = spec.neighbors(ctx, a.pts[i]);
        for (const auto& [q, m] : fib.points) a.next[i].emplace_back(a.index.at(q), m);
    }
    return a;
}

Count chain_count(const TowerSpec& spec, const FieldCtx& ctx, int m, bool distinct_only) {
    if (m < 1) throw std::invalid_argument("chain length must be >= 1");
    Adjacency adj = Adjacency::build(spec, ctx);
    std::size_t n = adj.pts.size();
    std::vector<Count> c(n, 1);
    for (int step = 1; step < m; ++step) {
        std::vector<Count> nc(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (c[i] == 0) continue;
            for (const auto& [j, mult] : adj.next[i]) nc[j] += c[i] * (distinct_only ? 1 : mult);
        }
        c = std::move(nc);
    }
    Count total = 0;
    for (const auto& v : c) total += v;
    return total;
}

namespace {

void brute_rec(const Adjacency& adj, int i, int depth, int m, bool distinct_only,
               const Count& weight, Count& acc) {
    if (depth == m) {
        acc += weight;
        return;
    }
    for (const auto& [j, mult] : adj.next[i])
        brute_rec(adj, j, depth + 1, m, distinct_only, weight * (distinct_only ? 1 : mult), acc);
}

}  // namespace

Count chain_count_brute(const TowerSpec& spec, const FieldCtx& ctx, int m, bool distinct_only) {
    if (m < 1) throw std::invalid_argument("chain length must be >= 1");
    Adjacency adj = Adjacency::build(spec, ctx);
    Count acc = 0;
    for (std::size_t i = 0; i < adj.pts.size(); ++i)
        brute_rec(adj, static_cast<int>(i), 1, m, distinct_only, 1, acc);
    return acc;
}

std::vector<BasePoint> complete_set(const TowerSpec& spec, const FieldCtx& ctx) {
    Adjacency adj = Adjacency::build(spec, ctx);
    std::size_t n = adj.pts.size();
    std::vector<bool> in(n, true);
    int l = spec.l();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in[i]) continue;
            int distinct = 0;
            for (const auto& [j, mult] : adj.next[i])
                if (in[j]) ++distinct;
            if (distinct < l) {
                in[i] = false;
                changed = true;
            }
        }
    }
    std::vector<BasePoint> S;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) S.push_back(adj.pts[i]);
    return S;
}

bool chain_valid(const TowerSpec& spec, const FieldCtx& ctx, const Chain& c) {
    if (c.pts.empty()) return false;
    for (std::size_t i = 0; i + 1 < c.pts.size(); ++i) {
        Fiber fib = spec.neighbors(ctx, c.pts[i]);
        bool found = false;
        for (const auto& [q, m] : fib.points)
            if (q == c.pts[i + 1]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

Chain chain_reverse(const TowerSpec& spec, const FieldCtx& ctx, const Chain& c) {
    Chain r;
    r.pts.reserve(c.pts.size());
    for (auto it = c.pts.rbegin(); it != c.pts.rend(); ++it)
        r.pts.push_back(spec.apply_w(ctx, *it));
    if (!chain_valid(spec, ctx, r)) throw std::logic_error("reversed chain is not valid");
    return r;
}

Chain chain_project(const Chain& c, int j, int m) {
    int len = static_cast<int>(c.pts.size());
    if (m < 2 || j < 0 || j + m - 1 > len + 1 || m - 1 > len - j)
        throw std::out_of_range("invalid subchain range");
    Chain s;
    for (int i = j; i < j + m - 1; ++i) s.pts.push_back(c.pts[i]);
    return s;
}

std::vector<Chain> random_chains(const TowerSpec& spec, const FieldCtx& ctx, int length,
                                 int count, std::uint64_t seed) {
    if (length < 1 || count < 0) throw std::invalid_argument("bad random_chains arguments");
    Adjacency adj = Adjacency::build(spec, ctx);
    std::size_t n = adj.pts.size();
    // can[r][i]: a valid chain of r coordinates starts at point i
    std::vector<std::vector<bool>> can(length + 1, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) can[1][i] = true;
    for (int r = 2; r <= length; ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [j, m] : adj.next[i])
                if (can[r - 1][j]) {
                    can[r][i] = true;
                    break;
                }
    std::vector<int> starts;
    for (std::size_t i = 0; i < n; ++i)
        if (can[length][i]) starts.push_back(static_cast<int>(i));
    if (starts.empty())
        throw std::domain_error("no valid chains of length " + std::to_string(length));
    std::mt19937_64 rng(seed);
    std::vector<Chain> out;
    out.reserve(count);
    for (int c = 0; c < count; ++c) {
        Chain ch;
        int cur = starts[rng() % starts.size()];
        ch.pts.push_back(adj.pts[cur]);
        for (int r = length - 1; r >= 1; --r) {
            std::vector<int> opts;
            for (const auto& [j, m] : adj.next[cur])
                if (can[r][j]) opts.push_back(j);
            cur = opts[rng() % opts.size()];
            ch.pts.push_back(adj.pts[cur]);
        }
        out.push_back(std::move(ch));
    }
    return out;
}

bool ReducedRelation::proportional(const ReducedRelation& o) const {
    if (p != o.p) return false;
    if (terms.empty() || o.terms.empty()) return terms.empty() && o.terms.empty();
    if (terms.size() != o.terms.size()) return false;
    FieldCtx f(p, 1);
    auto it = terms.begin(), jt = o.terms.begin();
    Elt r = f.div(it->second, jt->second);
    for (; it != terms.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (it->second != f.mul(r, jt->second)) return false;
    }
    return true;
}

std::string ReducedRelation::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k.first > 0) os << "*y1^" << k.first;
        if (k.second > 0) os << "*y2^" << k.second;
    }
    return os.str();
}

ReducedRelation reduce_mod_p(const TowerSpec& spec, std::uint32_t p, const std::string& sub) {
    if (sub != "y=1-1/x") throw std::invalid_argument("unknown substitution: " + sub);
    if (spec.elliptic())
        throw std::invalid_argument("substitution is not birational on the elliptic base");
    FieldCtx f(p, 1);
    int l = spec.l();
    // binomial table up to degree l
    std::vector<std::vector<Elt>> binom(l + 1, std::vector<Elt>(l + 1, 0));
    for (int i = 0; i <= l; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = f.add(binom[i - 1][j - 1], j <= i - 1 ? binom[i - 1][j] : 0);
    }
    // y = 1 - 1/x  <=>  x = 1/(1-y); each term c x^i y^j of Phi becomes
    // c (1-u)^(l-i) (1-v)^(l-j) after clearing (1-u)^l (1-v)^l
    auto pow1m = [&](int e) {  // coefficients of (1-t)^e
        std::vector<Elt> c(e + 1);
        for (int i = 0; i <= e; ++i) {
            Elt v = binom[e][i];
            if (i % 2 == 1) v = f.neg(v);
            c[i] = v;
        }
        return c;
    };
    ReducedRelation rel;
    rel.p = p;
    for (const auto& t : spec.data().phi) {
        int i = static_cast<int>(t[0]), j = static_cast<int>(t[1]);
        Elt c = f.from_int(t[2]);
        if (c == 0) continue;
        auto cu = pow1m(l - i), cv = pow1m(l - j);
        for (int a = 0; a < static_cast<int>(cu.size()); ++a)
            for (int b = 0; b < static_cast<int>(cv.size()); ++b) {
                Elt v = f.mul(c, f.mul(cu[a], cv[b]));
                if (v == 0) continue;
                auto key = std::make_pair(a, b);
                Elt cur = rel.terms.count(key) ? rel.terms[key] : 0;
                cur = f.add(cur, v);
                if (cur == 0)
                    rel.terms.erase(key);
                else
                    rel.terms[key] = cur;
            }
    }
    if (rel.terms.empty()) throw std::logic_error("relation vanishes mod " + std::to_string(p));
    // normalize: make the lexicographically greatest monomial monic
    Elt lead = rel.terms.rbegin()->second;
    for (auto& [k, c] : rel.terms) c = f.div(c, lead);
    return rel;
}

}  // namespace towerlab
