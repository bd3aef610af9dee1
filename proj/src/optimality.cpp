#include "towerlab/optimality.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace towerlab {

bool dv_is_exact(std::uint32_t q) {
    std::uint32_t r = static_cast<std::uint32_t>(std::lround(std::sqrt(double(q))));
    return r * r == q;
}

double dv_bound(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    if (dv_is_exact(q)) return std::lround(std::sqrt(double(q))) - 1.0;
    return std::sqrt(double(q)) - 1.0;
}

std::vector<OptimalityRow> run_experiment(const TowerSpec& spec, const FieldCtx& ctx, int nmax) {
    spec.require_admissible(ctx);
    if (nmax < 1 || nmax > 13)
        throw std::invalid_argument("nmax must be between 1 and 13 (genus known up to level 14)");
    auto genus_rows = tower_genus_seq(spec, nmax + 1);
    auto S = complete_set(spec, ctx);
    std::vector<OptimalityRow> rows;
    Count bound = static_cast<long long>(S.size());
    for (int n = 1; n <= nmax; ++n) {
        OptimalityRow row;
        row.tower = spec.name();
        row.q = ctx.q();
        row.level = n;
        const GenusRow& g = genus_rows.at(n);  // level n+1
        row.genus = g.genus;
        row.genus_method = g.method;
        row.warning = g.method == "oracle-formula";
        row.s = static_cast<long long>(S.size());
        row.s_chain_bound = bound;
        row.model_count = chain_count(spec, ctx, n, true);
        if (row.s_chain_bound > row.model_count)
            throw std::logic_error("splitting-set bound exceeds the model count");
        row.ratio_defined = row.genus >= 1;
        if (row.ratio_defined) row.ratio = Rat(row.s_chain_bound) / row.genus;
        rows.push_back(std::move(row));
        bound *= spec.l();
    }
    return rows;
}

namespace {

std::string dv_str(std::uint32_t q) {
    if (dv_is_exact(q)) return std::to_string(std::lround(std::sqrt(double(q))) - 1);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", dv_bound(q));
    return buf;
}

std::string ratio_str(const OptimalityRow& r) {
    if (!r.ratio_defined) return "undefined";
    std::ostringstream os;
    os << boost::multiprecision::numerator(r.ratio) << "/"
       << boost::multiprecision::denominator(r.ratio);
    return os.str();
}

}  // namespace

std::string optimality_csv(const std::vector<OptimalityRow>& rows) {
    std::ostringstream os;
    os << "tower,q,level,genus,genus_method,S,s_chain_bound,model_count,ratio,dv\n";
    for (const auto& r : rows) {
        os << r.tower << "," << r.q << "," << r.level << "," << r.genus << "," << r.genus_method
           << "," << r.s << "," << r.s_chain_bound << "," << r.model_count << ","
           << ratio_str(r) << "," << dv_str(r.q) << "\n";
    }
    return os.str();
}

std::string optimality_json(const std::vector<OptimalityRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["tower"] = r.tower;
        o["q"] = r.q;
        o["level"] = r.level;
        o["genus"] = r.genus;
        o["genus_method"] = r.genus_method;
        o["S"] = r.s;
        o["s_chain_bound"] = r.s_chain_bound.str();
        o["model_count"] = r.model_count.str();
        o["ratio"] = r.ratio_defined ? nlohmann::ordered_json(ratio_str(r))
                                     : nlohmann::ordered_json(nullptr);
        o["dv"] = dv_str(r.q);
        o["warning"] = r.warning;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

}  // namespace towerlab
