#include "towerlab/finitefield.hpp"

#include <algorithm>
#include <cassert>

namespace towerlab {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (k < 1 || k > 12) throw std::invalid_argument("extension degree out of range [1,12]");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 1000000) throw std::invalid_argument("cardinality p^k exceeds 10^6");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (k_ > 1) find_modulus();
}

std::vector<std::uint32_t> FieldCtx::digits(Elt a) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Elt FieldCtx::undigits(const std::vector<std::uint32_t>& d) const {
    Elt a = 0;
    for (std::uint32_t i = k_; i-- > 0;) a = a * p_ + d[i];
    return a;
}

Elt FieldCtx::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elt>(r);
}

Elt FieldCtx::add(Elt a, Elt b) const {
    if (k_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elt r = 0, pw = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

Elt FieldCtx::neg(Elt a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    Elt r = 0, pw = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * pw;
        a /= p_;
        pw *= p_;
    }
    return r;
}

Elt FieldCtx::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Elt FieldCtx::mul(Elt a, Elt b) const {
    if (k_ == 1) return static_cast<Elt>(std::uint64_t(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    auto da = digits(a), db = digits(b);
    // schoolbook product, then reduce by the monic modulus
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[i + j] += std::uint64_t(da[i]) * db[j];
    }
    for (std::uint32_t d = 2 * k_ - 2; d >= k_; --d) {
        std::uint64_t c = prod[d] % p_;
        if (c) {
            // x^d = x^{d-k} * (-mod(x))
            for (std::uint32_t i = 0; i < k_; ++i) {
                if (mod_[i] == 0) continue;
                std::uint64_t t = c * (p_ - mod_[i]) % p_;
                prod[d - k_ + i] += t;
            }
        }
        prod[d] = 0;
    }
    std::vector<std::uint32_t> out(k_);
    for (std::uint32_t i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p_);
    return undigits(out);
}

Elt FieldCtx::pow(Elt a, std::uint64_t e) const {
    Elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elt FieldCtx::inv(Elt a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, std::uint64_t(q_) - 2);
}

Elt FieldCtx::div(Elt a, Elt b) const { return mul(a, inv(b)); }

bool FieldCtx::irreducible(const std::vector<std::uint32_t>& a) const {
    // Monic f of degree k is irreducible over GF(p) iff x^{p^k} = x mod f and
    // gcd-free at proper levels: x^{p^{k/r}} != x mod f for every prime r | k.
    const std::uint32_t k = k_, p = p_;
    auto mulmod = [&](const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v) {
        std::vector<std::uint64_t> pr(2 * k - 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (u[i] == 0) continue;
            for (std::uint32_t j = 0; j < k; ++j) pr[i + j] += std::uint64_t(u[i]) * v[j];
        }
        for (std::uint32_t d = 2 * k - 2; d >= k && d < 2 * k; --d) {
            std::uint64_t c = pr[d] % p;
            if (c)
                for (std::uint32_t i = 0; i < k; ++i)
                    if (a[i]) pr[d - k + i] += c * (p - a[i]) % p * 1ull;
            pr[d] = 0;
        }
        std::vector<std::uint32_t> out(k);
        for (std::uint32_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(pr[i] % p);
        return out;
    };
    auto frob = [&](std::vector<std::uint32_t> x) {
        // x^p mod f by square-and-multiply
        std::vector<std::uint32_t> r(k, 0);
        r[0] = 1;
        std::uint32_t e = p;
        while (e) {
            if (e & 1) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::uint32_t> x(k, 0);
    if (k == 1) return true;
    x[1] = 1;
    std::vector<std::uint32_t> t = x;
    std::vector<std::uint32_t> powers_at; // degrees i where x^{p^i} computed
    std::vector<std::vector<std::uint32_t>> frobs(k + 1);
    frobs[0] = x;
    for (std::uint32_t i = 1; i <= k; ++i) frobs[i] = frob(frobs[i - 1]);
    if (frobs[k] != x) return false;
    for (std::uint32_t r = 2; r <= k; ++r) {
        if (k % r == 0 && is_prime(r)) {
            if (frobs[k / r] == x) return false;
        }
    }
    return true;
}

void FieldCtx::find_modulus() {
    for (Elt num = 0; num < q_; ++num) {
        auto a = digits(num);
        if (irreducible(a)) {
            mod_ = a;
            return;
        }
    }
    throw std::logic_error("no irreducible modulus found");
}

std::string FieldCtx::modulus_str() const {
    if (k_ == 1) return "x";
    std::string s = "x^" + std::to_string(k_);
    for (std::uint32_t i = k_; i-- > 0;) {
        if (mod_[i] == 0) continue;
        s += " + ";
        if (mod_[i] != 1 || i == 0) s += std::to_string(mod_[i]);
        if (i >= 1) {
            if (mod_[i] != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

bool UniPoly::is_zero() const {
    for (Elt x : c)
        if (x) return false;
    return true;
}

int UniPoly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i]) return i;
    return -1;
}

UniPoly UniPoly::from_coeffs(std::vector<Elt> v) {
    UniPoly f;
    f.c = std::move(v);
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
    return f;
}

Elt UniPoly::eval(const FieldCtx& f, Elt x) const {
    Elt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c[i]);
    return acc;
}

UniPoly UniPoly::mul(const FieldCtx& f, const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly{};
    std::vector<Elt> out(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < o.c.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(c[i], o.c[j]));
    }
    return from_coeffs(std::move(out));
}

UniPoly UniPoly::div_linear(const FieldCtx& f, Elt r) const {
    int d = degree();
    assert(d >= 1);
    std::vector<Elt> out(d, 0);
    Elt carry = 0;
    for (int i = d; i >= 1; --i) {
        Elt cur = f.add(c[i], f.mul(carry, r));
        out[i - 1] = cur;
        carry = cur;
    }
    assert(f.add(c[0], f.mul(carry, r)) == 0 && "non-zero remainder in div_linear");
    return from_coeffs(std::move(out));
}

std::vector<std::pair<Elt, int>> uni_roots(const UniPoly& f, const FieldCtx& ctx) {
    if (f.is_zero()) throw std::invalid_argument("uni_roots: zero polynomial");
    std::vector<std::pair<Elt, int>> out;
    for (Elt x = 0; x < ctx.q(); ++x) {
        if (f.eval(ctx, x) != 0) continue;
        int m = 0;
        UniPoly g = f;
        while (g.degree() >= 1 && g.eval(ctx, x) == 0) {
            g = g.div_linear(ctx, x);
            ++m;
        }
        out.emplace_back(x, m);
    }
    return out;
}

}  // namespace towerlab
