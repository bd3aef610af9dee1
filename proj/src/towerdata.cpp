#include "towerlab/towerdata.hpp"

#include <stdexcept>

namespace towerlab {

namespace {

// Relation helper: terms of (x^n + u)(z^n + v) + w as (i, j, c) triples.
std::vector<std::array<long long, 3>> product_relation(int n, long long u, long long v,
                                                       long long w) {
    return {{n, n, 1}, {n, 0, v}, {0, n, u}, {0, 0, u * v + w}};
}

std::vector<TowerData> build() {
    std::vector<TowerData> t;

    // (x^2-1)(z^2-1) = 1, z = (x+3)/(x-1)
    t.push_back({"x0_2", 2, false, product_relation(2, -1, -1, -1),
                 {{0, 0, -9}, {0, 1, -6}, {0, 2, -1}, {2, 0, 8}, {2, 1, 8}},
                 1, 3, 1, -1, {2}, "X0(2^n)"});

    // (x^3-1)(z^3-1) = 1, z = (x+2)/(x-1)
    t.push_back({"x0_3", 3, false, product_relation(3, -1, -1, -1),
                 {{0, 0, -8}, {0, 1, -12}, {0, 2, -6}, {0, 3, -1},
                  {3, 0, 9}, {3, 1, 9}, {3, 2, 9}},
                 1, 2, 1, -1, {3}, "X0(3^n)"});

    // (x^4-1)(z^4-1) = 1, z = (x+1)/(x-1)
    t.push_back({"x0_4", 4, false, product_relation(4, -1, -1, -1),
                 {{0, 0, -1}, {0, 1, -4}, {0, 2, -6}, {0, 3, -4}, {0, 4, -1},
                  {4, 1, 8}, {4, 3, 8}},
                 1, 1, 1, -1, {2}, "X0(4^n)"});

    // P(x) P(z) = 125 with P(X) = X^5 + 5X^3 + 5X - 11, z = (x+4)/(x-1)
    {
        std::vector<std::array<long long, 3>> rel;
        const std::vector<std::pair<int, long long>> P = {{5, 1}, {3, 5}, {1, 5}, {0, -11}};
        for (auto [i, ci] : P)
            for (auto [j, cj] : P) rel.push_back({i, j, ci * cj});
        rel.push_back({0, 0, -125});
        t.push_back({"x0_5", 5, false, rel,
                     {{0, 0, -120}, {0, 1, -71}, {0, 2, -56}, {0, 3, -21},
                      {0, 4, -6},   {0, 5, -1},  {1, 0, 55},  {1, 1, 30},
                      {1, 2, 30},   {1, 3, 5},   {1, 4, 5},   {3, 0, 55},
                      {3, 1, 30},   {3, 2, 30},  {3, 3, 5},   {3, 4, 5},
                      {5, 0, 11},   {5, 1, 6},   {5, 2, 6},   {5, 3, 1},
                      {5, 4, 1}},
                     1, 4, 1, -1, {5}, "X0(5^n)"});
    }

    // (x^3-8)(z^3-8) = 72 on y^2 = x^3+1, z = x-coordinate of (2,3) - P.
    // Phi is stored in the (x, z) coordinates; the degree-6 point
    // correspondence comes from composing with the degree-2 cover x: E -> P^1.
    t.push_back({"x0_6", 6, true, product_relation(3, -8, -8, -72),
                 {{3, 3, 1}, {3, 0, -8}, {0, 3, -8}, {0, 0, -8}},
                 0, 0, 0, 0, {2, 3}, "X0(6^n)"});

    // (x^2-1)(z^2-1) = -8, z = (3-x)/(1+x)
    t.push_back({"x0_3x2", 2, false, product_relation(2, -1, -1, 8),
                 {{0, 1, -3}, {0, 2, -1}, {2, 0, -1}, {2, 1, 1}},
                 -1, 3, 1, 1, {2, 3}, "X0(3*2^n)"});

    // (x^2+3)(z^2+3) = 12, z = (x+3)/(x-1)
    t.push_back({"shimura_p2", 2, false, product_relation(2, 3, 3, -12),
                 {{0, 0, 6}, {0, 1, 6}, {2, 0, 3}, {2, 2, 1}},
                 1, 3, 1, -1, {2, 3}, "XX0(p2^n), (2,4,12) triangle group"});

    // x^3 + z^3 = 1, z = (x+2)/(x-1)
    t.push_back({"shimura_p3", 3, false,
                 {{3, 0, 1}, {0, 3, 1}, {0, 0, -1}},
                 {{0, 0, 9}, {0, 1, 9}, {0, 2, 9},
                  {3, 0, -1}, {3, 1, 3}, {3, 2, -3}, {3, 3, 1}},
                 1, 2, 1, -1, {3}, "XX0(p3^n), (2,3,9) triangle group"});

    return t;
}

}  // namespace

const std::vector<TowerData>& tower_data() {
    static const std::vector<TowerData> t = build();
    return t;
}

const TowerData& tower_data(const std::string& name) {
    for (const auto& td : tower_data())
        if (td.name == name) return td;
    throw std::invalid_argument("unknown tower: " + name);
}

}  // namespace towerlab
