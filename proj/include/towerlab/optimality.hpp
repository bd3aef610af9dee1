#ifndef TOWERLAB_OPTIMALITY_HPP
#define TOWERLAB_OPTIMALITY_HPP

#include "towerlab/geometry.hpp"
#include "towerlab/qexpansion.hpp"
#include "towerlab/towercore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace towerlab {

// Drinfeld-Vladut bound sqrt(q) - 1; exact integer when q is a square.
double dv_bound(std::uint32_t q);
// True if q is a perfect square (the bound is then an exact integer).
bool dv_is_exact(std::uint32_t q);

// One level of the point-count experiment.  A chain of n coordinates models a
// rational point of the level-(n+1) curve, so the genus column at row n is
// the genus of the level-(n+1) curve.
struct OptimalityRow {
    std::string tower;
    std::uint32_t q = 0;
    int level = 0;               // chain length n
    long long genus = 0;         // genus of the modeled curve
    std::string genus_method;
    long long s = 0;             // size of the complete splitting set
    Count s_chain_bound;         // |S| * l^(n-1)
    Count model_count;           // distinct rational chains of length n
    bool ratio_defined = false;  // requires genus >= 1
    Rat ratio;                   // s_chain_bound / genus
    bool warning = false;        // genus from the oracle formula
};

// Rows for levels 1..nmax.  Asserts s_chain_bound <= model_count on every
// row; requires nmax <= 13 so that the genus sequence covers level nmax+1.
std::vector<OptimalityRow> run_experiment(const TowerSpec& spec, const FieldCtx& ctx, int nmax);

// CSV with header tower,q,level,genus,genus_method,S,s_chain_bound,
// model_count,ratio,dv; ratio as "num/den" ("undefined" for genus-0 rows),
// dv as an integer for square q, else with 6 decimals.
std::string optimality_csv(const std::vector<OptimalityRow>& rows);
// JSON array with the same fields.
std::string optimality_json(const std::vector<OptimalityRow>& rows);

}  // namespace towerlab

#endif
