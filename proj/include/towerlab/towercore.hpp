#ifndef TOWERLAB_TOWERCORE_HPP
#define TOWERLAB_TOWERCORE_HPP

#include "towerlab/finitefield.hpp"
#include "towerlab/towerdata.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace towerlab {

using Count = boost::multiprecision::cpp_int;

// A point of a tower's base curve over some field: a point of P^1 (affine x or
// infinity), or of y^2 = x^3 + 1 (affine (x,y) or the origin O, which reuses
// the infinite flag).
struct BasePoint {
    bool infinite = false;
    Elt x = 0;
    Elt y = 0;  // elliptic towers only

    friend bool operator==(const BasePoint& a, const BasePoint& b) = default;
    friend auto operator<=>(const BasePoint& a, const BasePoint& b) = default;

    static BasePoint inf() { return BasePoint{true, 0, 0}; }
    static BasePoint at(Elt x) { return BasePoint{false, x, 0}; }
    static BasePoint at(Elt x, Elt y) { return BasePoint{false, x, y}; }
};

std::string point_str(const BasePoint& p, bool elliptic);

// Fiber of the correspondence over a base point: the rational points with
// multiplicities plus the degree of the non-rational remainder, so that
// sum of multiplicities + residual_degree = l always holds.
struct Fiber {
    std::vector<std::pair<BasePoint, int>> points;
    int residual_degree = 0;

    int rational_multiplicity() const {
        int s = 0;
        for (const auto& [p, m] : points) s += m;
        return s;
    }
};

class TowerSpec {
public:
    explicit TowerSpec(const TowerData& d) : d_(&d) {}

    const std::string& name() const { return d_->name; }
    int l() const { return d_->l; }
    bool elliptic() const { return d_->elliptic; }
    const TowerData& data() const { return *d_; }
    const std::vector<int>& excluded_chars() const { return d_->excluded_chars; }
    const std::string& modular_label() const { return d_->modular_label; }

    bool admissible(const FieldCtx& ctx) const;
    void require_admissible(const FieldCtx& ctx) const;

    // All rational base points, in a deterministic order.
    std::vector<BasePoint> points(const FieldCtx& ctx) const;

    Fiber neighbors(const FieldCtx& ctx, const BasePoint& P) const;

    // Level-2 Atkin-Lehner involution: Mobius map on the line, P -> (2,3) - P
    // on the elliptic curve.
    BasePoint apply_w(const FieldCtx& ctx, const BasePoint& P) const;

    // Auxiliary involution x -> -3/x of the 3*2^n tower (throws elsewhere).
    BasePoint apply_aux(const FieldCtx& ctx, const BasePoint& P) const;
    bool has_aux() const { return d_->name == "x0_3x2"; }

private:
    const TowerData* d_;

    Fiber line_neighbors(const FieldCtx& ctx, const BasePoint& P) const;
    Fiber elliptic_neighbors(const FieldCtx& ctx, const BasePoint& P) const;
};

// The eight towers, in catalog order.
const std::vector<TowerSpec>& catalog();
const TowerSpec& catalog(const std::string& name);

// Adjacency of the correspondence on the rational points: for each point
// index, the list of (neighbor index, multiplicity).
struct Adjacency {
    std::vector<BasePoint> pts;
    std::map<BasePoint, int> index;
    std::vector<std::vector<std::pair<int, int>>> next;

    static Adjacency build(const TowerSpec& spec, const FieldCtx& ctx);
};

// Number of rational chains (P_1,...,P_m) with consecutive pairs on the
// correspondence, by dynamic programming over the adjacency; distinct_only
// counts each distinct edge once, otherwise edges carry their multiplicity.
Count chain_count(const TowerSpec& spec, const FieldCtx& ctx, int m, bool distinct_only);
// Same count by exhaustive enumeration (test oracle; exponential in m).
Count chain_count_brute(const TowerSpec& spec, const FieldCtx& ctx, int m, bool distinct_only);

// Greatest set S of rational base points such that every P in S has exactly
// l distinct rational fiber points, all in S; computed by pruning to the
// greatest fixed point.  May be empty.
std::vector<BasePoint> complete_set(const TowerSpec& spec, const FieldCtx& ctx);

struct Chain {
    std::vector<BasePoint> pts;
};

bool chain_valid(const TowerSpec& spec, const FieldCtx& ctx, const Chain& c);
// Reverse the coordinates and apply the involution to each; the result is
// again a valid chain.
Chain chain_reverse(const TowerSpec& spec, const FieldCtx& ctx, const Chain& c);
// The subchain of m-1 consecutive coordinates starting after offset j
// (coordinates j+1 .. j+m-1, 1-based).
Chain chain_project(const Chain& c, int j, int m);

// Deterministic pseudo-random valid chains for property tests.
std::vector<Chain> random_chains(const TowerSpec& spec, const FieldCtx& ctx, int length,
                                 int count, std::uint64_t seed);

// A bivariate relation over GF(p) between consecutive substituted coordinates,
// as returned by reduce_mod_p.
struct ReducedRelation {
    std::uint32_t p;
    std::map<std::pair<int, int>, Elt> terms;  // (deg in y_j, deg in y_{j+1}) -> coeff

    // True if this equals r * o for a nonzero scalar r of GF(p).
    bool proportional(const ReducedRelation& o) const;
    std::string str() const;
};

// Applies the substitution y = 1 - 1/x to both coordinates of the tower's
// correspondence polynomial, reduces mod p and clears denominators.
// sub must be "y=1-1/x" (the only registered substitution).
ReducedRelation reduce_mod_p(const TowerSpec& spec, std::uint32_t p, const std::string& sub);

}  // namespace towerlab

#endif
