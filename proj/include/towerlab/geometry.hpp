#ifndef TOWERLAB_GEOMETRY_HPP
#define TOWERLAB_GEOMETRY_HPP

#include "towerlab/finitefield.hpp"
#include "towerlab/towercore.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace towerlab {

// Ramification data of a degree-d cover: for each named branch point of the
// base, the ramification indices of the points above it (each list sums to d).
// Unramified base points need not be listed.
struct RamificationProfile {
    int degree = 0;
    std::map<std::string, std::vector<int>> branch;
};

// Riemann-Hurwitz for a tame cover: 2g - 2 = d(2g_base - 2) + sum (e - 1).
// Throws if the profile is inconsistent or the resulting genus is not a
// non-negative integer.
long long rh_genus(int degree, long long g_base, const RamificationProfile& profile);

// Ramification index of a point of elliptic order e_prime above a point of
// elliptic order e: the denominator of e_prime/e in lowest terms.
int shimura_ram_index(int e, int e_prime);

// Orders of the elliptic points at J = 1, 0, infinity of the quaternionic
// triangle quotients: (2,4,12) for the prime-above-2 tower, (2,3,9) for the
// prime-above-3 tower.
struct TriangleData {
    std::array<int, 3> orders_at_1_0_inf;
};
TriangleData triangle_data(const std::string& tower);

struct TriangleCheck {
    std::string name;
    bool pass;
};
// Exact identities behind the triangle data: J = t(4t-3)^2 with
// J - 1 = (t-1)(4t-1)^2, the degree-2 relation t = (xi^2+3)/4 composing to
// 4J = (xi^2+3) xi^4 and 4(J-1) = (xi^2-1)(xi^2+2)^2, and the involutions
// w(t) = 3/4t and w(xi) = (xi+3)/(xi-1).
std::vector<TriangleCheck> triangle_checks();

// Ramification profile of the level-n cover of the J-line inside the
// prime-above-2 tower: n=1 the degree-3 t-cover, n=2 the degree-6 xi-cover.
RamificationProfile shimura_triangle_profile(int level);

// One cover step of the orbit analysis: the extension from the curve at
// level cover_level - 1 to the curve at cover_level.
struct RamifyStep {
    int cover_level;
    long long ramified_places;   // weighted number of ramified places
    long long rh_sum;            // weighted sum of (e - 1)
    long long genus;             // genus of the curve at cover_level
    bool ramified() const { return ramified_places > 0; }
};

struct RamifyReport {
    std::string tower;
    std::uint32_t surrogate_p = 0;
    int depth = 0;
    // curve levels 2 .. depth+2 (a length-m coordinate chain models the
    // level-(m+1) curve, so the analysis starts at curve level 2)
    std::vector<long long> genus_by_level;
    std::vector<RamifyStep> steps;  // cover levels 3 .. depth+2
    // greatest ramified cover level if the tail is unramified; 2 if no step
    // ramifies; -1 if the final simulated step is still ramified
    int stabilization_level = -1;
    bool stabilized() const { return stabilization_level >= 0; }
};

// Propagates the forward orbits of the correspondence's branch points over a
// large-characteristic surrogate field (internally GF(p^2), so quadratic
// branch values are rational) and accumulates Riemann-Hurwitz sums.
// Line-based towers only; depth <= 12.
RamifyReport ramification_orbit(const TowerSpec& spec, int depth, const FieldCtx& surrogate);

struct GenusRow {
    int level;
    long long genus;
    std::string method;  // paper-anchor | riemann-hurwitz | oracle-formula
};

// Genus of the level-n curve for n = 1..nmax (nmax <= 14).  Classical towers
// use the standard genus formula for X0(N) (method oracle-formula, values
// independently pinned); the quaternionic towers use the orbit analysis over
// the surrogate prime 101 (method riemann-hurwitz).
std::vector<GenusRow> tower_genus_seq(const TowerSpec& spec, int nmax);

// Standard genus formula for X0(N): g = 1 + psi/12 - nu2/4 - nu3/3 - nuinf/2.
long long classical_x0_genus(long long N);

// CSV with header tower,level,genus,method.
std::string genus_csv(const TowerSpec& spec, const std::vector<GenusRow>& rows);

}  // namespace towerlab

#endif
