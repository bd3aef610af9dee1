#ifndef TOWERLAB_TOWERDATA_HPP
#define TOWERLAB_TOWERDATA_HPP

#include <array>
#include <string>
#include <vector>

namespace towerlab {

// Static description of one tower: the defining relation between consecutive
// coordinates, the level-2 involution, and admissibility data.  The bivariate
// relation R(x, z) = 0 links x_j to z_{j+1} = w(x_{j+1}); the correspondence
// polynomial Phi(x, y) is produced at catalog build time by substituting the
// involution into R and clearing denominators.
struct TowerData {
    std::string name;
    int l;                      // degree of the correspondence per step
    bool elliptic;              // base curve y^2 = x^3 + 1 instead of P^1
    // relation terms: (x-degree, z-degree, integer coefficient)
    std::vector<std::array<long long, 3>> relation;
    // frozen correspondence polynomial Phi(x, y): terms (x-degree, y-degree,
    // integer coefficient); primitive, lexicographically greatest monomial
    // positive.  Verified against the relation by the identity suite
    // (phi_consistency_<name>).
    std::vector<std::array<long long, 3>> phi;
    // involution z = (a x + b) / (c x + d); for the elliptic tower this is the
    // x-coordinate effect of P -> (2,3) - P and the Mobius entries are unused
    long long ma, mb, mc, md;
    std::vector<int> excluded_chars;
    std::string modular_label;
};

const std::vector<TowerData>& tower_data();
const TowerData& tower_data(const std::string& name);

}  // namespace towerlab

#endif
