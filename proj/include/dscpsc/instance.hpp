#ifndef DSCPSC_INSTANCE_HPP
#define DSCPSC_INSTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dscpsc/errors.hpp"

namespace dscpsc {

/* Dense multi-dimensional parameter table, row-major. */
struct Table {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    static Table zeros(std::vector<std::size_t> shp) {
        Table t;
        std::size_t n = 1;
        for (std::size_t d : shp) n *= d;
        t.shape = std::move(shp);
        t.data.assign(n, 0.0);
        return t;
    }

    std::size_t flat(std::initializer_list<std::size_t> idx) const {
        std::size_t f = 0;
        std::size_t dim = 0;
        for (std::size_t i : idx) {
            f = f * shape[dim] + i;
            ++dim;
        }
        return f;
    }
    template <class... I>
    double operator()(I... idx) const {
        return data[flat({static_cast<std::size_t>(idx)...})];
    }
    template <class... I>
    double& ref(I... idx) {
        return data[flat({static_cast<std::size_t>(idx)...})];
    }
    std::size_t size() const { return data.size(); }
};

/* All index sets of one instance.  "Candidate" collections may be empty;
 * everything else must be non-empty. */
struct InstanceSets {
    std::vector<std::string> refineries;                 /* K   */
    std::vector<std::string> candidate_refineries;       /* K'  */
    std::vector<std::string> dcs;                        /* L   */
    std::vector<std::string> candidate_dcs;              /* L'  */
    std::vector<std::string> customers;                  /* M   */
    std::vector<std::string> modes;                      /* V   */
    std::string pipeline_mode;                           /* the designated element of V */
    std::vector<std::string> mode_capacity_levels;       /* LCV */
    std::vector<std::string> products;                   /* P   */
    std::vector<std::string> refinery_build_levels;      /* EK  */
    std::vector<std::string> dc_build_levels;            /* EL  */
    std::vector<std::string> refinery_expansion_levels;  /* UK  */
    std::vector<std::string> dc_expansion_levels;        /* UL  */
    std::vector<std::string> pipeline_expansion_levels;  /* EV  */
    std::vector<std::string> tank_levels;                /* EZ  */
    std::vector<std::string> pipeline_build_levels;      /* LV  */
    std::vector<std::string> pipeline_routes;            /* RV  */
    std::vector<std::string> stakeholders;               /* E   */
    std::vector<std::string> regions;                    /* EN  */
    std::vector<std::string> education_levels;           /* LEV */
    std::vector<std::string> periods;                    /* T   */
    std::vector<std::string> fields;                     /* I (crude sources) */
};

/* Axis vocabulary for the table registry; KA/LA are the concatenations
 * K followed by K' and L followed by L'. */
enum class Ax {
    K, Kc, KA, L, Lc, LA, M, V, LCV, P, EK, EL, UK, UL,
    EV, EZ, LV, RV, E, EN, LEV, T, I
};

inline std::size_t axis_size(Ax ax, const InstanceSets& s) {
    switch (ax) {
        case Ax::K: return s.refineries.size();
        case Ax::Kc: return s.candidate_refineries.size();
        case Ax::KA: return s.refineries.size() + s.candidate_refineries.size();
        case Ax::L: return s.dcs.size();
        case Ax::Lc: return s.candidate_dcs.size();
        case Ax::LA: return s.dcs.size() + s.candidate_dcs.size();
        case Ax::M: return s.customers.size();
        case Ax::V: return s.modes.size();
        case Ax::LCV: return s.mode_capacity_levels.size();
        case Ax::P: return s.products.size();
        case Ax::EK: return s.refinery_build_levels.size();
        case Ax::EL: return s.dc_build_levels.size();
        case Ax::UK: return s.refinery_expansion_levels.size();
        case Ax::UL: return s.dc_expansion_levels.size();
        case Ax::EV: return s.pipeline_expansion_levels.size();
        case Ax::EZ: return s.tank_levels.size();
        case Ax::LV: return s.pipeline_build_levels.size();
        case Ax::RV: return s.pipeline_routes.size();
        case Ax::E: return s.stakeholders.size();
        case Ax::EN: return s.regions.size();
        case Ax::LEV: return s.education_levels.size();
        case Ax::T: return s.periods.size();
        case Ax::I: return s.fields.size();
    }
    return 0;
}

struct ParameterTables {
    Table demand;              /* [P][M][T]  customer demand            */
    Table stakeholder_demand;  /* [P][T][E]  committed per stakeholder  */
    Table ick;                 /* [K]        existing refinery capacity */
    Table icl;                 /* [P][L]     existing dc capacity       */
    Table capk;                /* [K][UK]    refinery expansion sizes   */
    Table capl;                /* [L][UL]    dc expansion sizes         */
    Table nck;                 /* [Kc][EK]   new refinery sizes         */
    Table ncl;                 /* [Lc][EL]   new dc sizes               */
    Table nct;                 /* [Lc][EZ]   tank sizes                 */
    Table icapkl;              /* [K][L]     existing pipeline capacity */
    Table icaplpl;             /* [L][L]                                */
    Table capkl;               /* [K][L][EV] pipeline expansion sizes   */
    Table caplpl;              /* [L][L][EV]                            */
    Table clv;                 /* [LV]       new pipeline capacity      */
    Table trc;                 /* [V][LCV]   per-unit fleet capacity    */
    Table nmax;                /* [LCV]      fleet availability cap     */
    Table field_cap;           /* [I]        crude availability         */
    Table min_use_k;           /* [Kc][EK]   min utilization share      */
    Table min_use_l;           /* [P][Lc][EZ]                           */
    Table mu;                  /* [P]        product yield per crude    */
    Table lk;                  /* [KA]       min inventory share        */
    Table ll;                  /* [LA]                                  */
    Table rkl_exist;           /* [K][L]     existing pipeline (0/1)    */
    Table rlpl_exist;          /* [L][L]                                */
    Table region_new_ref;      /* [EN][Kc]   region membership (0/1)    */
    Table region_ref;          /* [EN][K]                               */
    Table region_new_dc;       /* [EN][Lc]                              */
    Table region_dc;           /* [EN][L]                               */
    Table dist;                /* [LA][M]    dc-to-customer distance    */
    Table xcostk;              /* [Kc][EK][T] refinery installation     */
    Table xcostl;              /* [Lc][EL][T] dc installation           */
    Table ucostk;              /* [K][UK][T]  refinery expansion        */
    Table ucostl;              /* [L][UL][P][T] dc expansion            */
    Table ycostkl;             /* [K][L][EV][T] pipeline expansion      */
    Table ycostlpl;            /* [L][L][EV][T]                         */
    Table rcostkl;             /* [KA][LA][LV][RV][T] pipeline install  */
    Table rcostlpl;            /* [LA][LA][LV][RV][T]                   */
    Table tank_cost;           /* [Lc][EZ][T] tank installation         */
    Table ncostkl;             /* [KA][LA][V][LCV][T] fleet unit cost   */
    Table ncostlm;             /* [LA][M][V][LCV][T]                    */
    Table ncostlpl;            /* [LA][LA][V][LCV][T]                   */
    Table hcostk;              /* [KA]       refinery holding cost      */
    Table hcostl;              /* [P][LA]    dc holding cost            */
    Table qcostkl;             /* [KA][LA][T] per-unit flow cost        */
    Table qcostlpl;            /* [LA][LA][T]                           */
    Table pcostk;              /* [KA][T]    refinery operating cost    */
    Table pcostl;              /* [P][LA][T] dc operating cost          */
    Table fcostk;              /* [KA][T]    fixed cost per capacity    */
    Table fcostl;              /* [LA][T]                               */
    Table icost;               /* [P][T]     import cost                */
    Table clcostk;             /* [K][T]     close-down cost            */
    Table wcost;               /* [LEV][T]   hiring cost                */
    Table crude_price;         /* [T]        crude value for holding    */
    Table price;               /* [E][P][T]  sale price                 */
    Table export_price;        /* [P][T][E]                             */
    Table pulv;                /* [V][LCV]   transport emission rate    */
    Table pollution_weight;    /* [EN]       regional emission weight   */
    Table wnk;                 /* [LEV] staffing rate, new refinery     */
    Table wek;                 /* [LEV] staffing rate, refinery expansion */
    Table wnl;                 /* [LEV] staffing rate, new dc           */
    Table wel;                 /* [LEV] staffing rate, dc expansion     */
    Table nlab;                /* [EN][LEV][T] labor pool inflow        */
    Table labor_transfer;      /* [EN][EN]   inter-region significance  */
    Table maxnum;              /* [EN]       facility count cap         */
    Table nr;                  /* [EN]       dc-expansion weight        */
    Table nd;                  /* [EN]       pre-existing count         */

    double pulk = 0.0;         /* refinery emission rate   */
    double pull = 0.0;         /* dc emission rate         */
    double per = 0.0;          /* expansion emission share */
    double tpp = 0.0;          /* trips per period         */
    double big_m = 1e6;
};

enum class Rule { NonNegative, Binary, UnitInterval, Positive };

inline const char* rule_str(Rule r) {
    switch (r) {
        case Rule::NonNegative: return "non_negative";
        case Rule::Binary: return "binary";
        case Rule::UnitInterval: return "unit_interval";
        default: return "positive";
    }
}

struct TableInfo {
    const char* key;
    Table ParameterTables::* member;
    std::vector<Ax> axes;
    Rule rule;
};

struct ScalarInfo {
    const char* key;
    double ParameterTables::* member;
    Rule rule;
};

inline const std::vector<TableInfo>& table_registry() {
    static const std::vector<TableInfo> reg = {
        {"demand", &ParameterTables::demand, {Ax::P, Ax::M, Ax::T}, Rule::NonNegative},
        {"stakeholder_demand", &ParameterTables::stakeholder_demand, {Ax::P, Ax::T, Ax::E}, Rule::NonNegative},
        {"ick", &ParameterTables::ick, {Ax::K}, Rule::NonNegative},
        {"icl", &ParameterTables::icl, {Ax::P, Ax::L}, Rule::NonNegative},
        {"capk", &ParameterTables::capk, {Ax::K, Ax::UK}, Rule::NonNegative},
        {"capl", &ParameterTables::capl, {Ax::L, Ax::UL}, Rule::NonNegative},
        {"nck", &ParameterTables::nck, {Ax::Kc, Ax::EK}, Rule::NonNegative},
        {"ncl", &ParameterTables::ncl, {Ax::Lc, Ax::EL}, Rule::NonNegative},
        {"nct", &ParameterTables::nct, {Ax::Lc, Ax::EZ}, Rule::NonNegative},
        {"icapkl", &ParameterTables::icapkl, {Ax::K, Ax::L}, Rule::NonNegative},
        {"icaplpl", &ParameterTables::icaplpl, {Ax::L, Ax::L}, Rule::NonNegative},
        {"capkl", &ParameterTables::capkl, {Ax::K, Ax::L, Ax::EV}, Rule::NonNegative},
        {"caplpl", &ParameterTables::caplpl, {Ax::L, Ax::L, Ax::EV}, Rule::NonNegative},
        {"clv", &ParameterTables::clv, {Ax::LV}, Rule::NonNegative},
        {"trc", &ParameterTables::trc, {Ax::V, Ax::LCV}, Rule::NonNegative},
        {"nmax", &ParameterTables::nmax, {Ax::LCV}, Rule::NonNegative},
        {"field_cap", &ParameterTables::field_cap, {Ax::I}, Rule::NonNegative},
        {"min_use_k", &ParameterTables::min_use_k, {Ax::Kc, Ax::EK}, Rule::UnitInterval},
        {"min_use_l", &ParameterTables::min_use_l, {Ax::P, Ax::Lc, Ax::EZ}, Rule::UnitInterval},
        {"mu", &ParameterTables::mu, {Ax::P}, Rule::Positive},
        {"lk", &ParameterTables::lk, {Ax::KA}, Rule::UnitInterval},
        {"ll", &ParameterTables::ll, {Ax::LA}, Rule::UnitInterval},
        {"rkl_exist", &ParameterTables::rkl_exist, {Ax::K, Ax::L}, Rule::Binary},
        {"rlpl_exist", &ParameterTables::rlpl_exist, {Ax::L, Ax::L}, Rule::Binary},
        {"region_new_ref", &ParameterTables::region_new_ref, {Ax::EN, Ax::Kc}, Rule::Binary},
        {"region_ref", &ParameterTables::region_ref, {Ax::EN, Ax::K}, Rule::Binary},
        {"region_new_dc", &ParameterTables::region_new_dc, {Ax::EN, Ax::Lc}, Rule::Binary},
        {"region_dc", &ParameterTables::region_dc, {Ax::EN, Ax::L}, Rule::Binary},
        {"dist", &ParameterTables::dist, {Ax::LA, Ax::M}, Rule::NonNegative},
        {"xcostk", &ParameterTables::xcostk, {Ax::Kc, Ax::EK, Ax::T}, Rule::NonNegative},
        {"xcostl", &ParameterTables::xcostl, {Ax::Lc, Ax::EL, Ax::T}, Rule::NonNegative},
        {"ucostk", &ParameterTables::ucostk, {Ax::K, Ax::UK, Ax::T}, Rule::NonNegative},
        {"ucostl", &ParameterTables::ucostl, {Ax::L, Ax::UL, Ax::P, Ax::T}, Rule::NonNegative},
        {"ycostkl", &ParameterTables::ycostkl, {Ax::K, Ax::L, Ax::EV, Ax::T}, Rule::NonNegative},
        {"ycostlpl", &ParameterTables::ycostlpl, {Ax::L, Ax::L, Ax::EV, Ax::T}, Rule::NonNegative},
        {"rcostkl", &ParameterTables::rcostkl, {Ax::KA, Ax::LA, Ax::LV, Ax::RV, Ax::T}, Rule::NonNegative},
        {"rcostlpl", &ParameterTables::rcostlpl, {Ax::LA, Ax::LA, Ax::LV, Ax::RV, Ax::T}, Rule::NonNegative},
        {"tank_cost", &ParameterTables::tank_cost, {Ax::Lc, Ax::EZ, Ax::T}, Rule::NonNegative},
        {"ncostkl", &ParameterTables::ncostkl, {Ax::KA, Ax::LA, Ax::V, Ax::LCV, Ax::T}, Rule::NonNegative},
        {"ncostlm", &ParameterTables::ncostlm, {Ax::LA, Ax::M, Ax::V, Ax::LCV, Ax::T}, Rule::NonNegative},
        {"ncostlpl", &ParameterTables::ncostlpl, {Ax::LA, Ax::LA, Ax::V, Ax::LCV, Ax::T}, Rule::NonNegative},
        {"hcostk", &ParameterTables::hcostk, {Ax::KA}, Rule::NonNegative},
        {"hcostl", &ParameterTables::hcostl, {Ax::P, Ax::LA}, Rule::NonNegative},
        {"qcostkl", &ParameterTables::qcostkl, {Ax::KA, Ax::LA, Ax::T}, Rule::NonNegative},
        {"qcostlpl", &ParameterTables::qcostlpl, {Ax::LA, Ax::LA, Ax::T}, Rule::NonNegative},
        {"pcostk", &ParameterTables::pcostk, {Ax::KA, Ax::T}, Rule::NonNegative},
        {"pcostl", &ParameterTables::pcostl, {Ax::P, Ax::LA, Ax::T}, Rule::NonNegative},
        {"fcostk", &ParameterTables::fcostk, {Ax::KA, Ax::T}, Rule::NonNegative},
        {"fcostl", &ParameterTables::fcostl, {Ax::LA, Ax::T}, Rule::NonNegative},
        {"icost", &ParameterTables::icost, {Ax::P, Ax::T}, Rule::NonNegative},
        {"clcostk", &ParameterTables::clcostk, {Ax::K, Ax::T}, Rule::NonNegative},
        {"wcost", &ParameterTables::wcost, {Ax::LEV, Ax::T}, Rule::NonNegative},
        {"crude_price", &ParameterTables::crude_price, {Ax::T}, Rule::NonNegative},
        {"price", &ParameterTables::price, {Ax::E, Ax::P, Ax::T}, Rule::NonNegative},
        {"export_price", &ParameterTables::export_price, {Ax::P, Ax::T, Ax::E}, Rule::NonNegative},
        {"pulv", &ParameterTables::pulv, {Ax::V, Ax::LCV}, Rule::NonNegative},
        {"pollution_weight", &ParameterTables::pollution_weight, {Ax::EN}, Rule::NonNegative},
        {"wnk", &ParameterTables::wnk, {Ax::LEV}, Rule::NonNegative},
        {"wek", &ParameterTables::wek, {Ax::LEV}, Rule::NonNegative},
        {"wnl", &ParameterTables::wnl, {Ax::LEV}, Rule::NonNegative},
        {"wel", &ParameterTables::wel, {Ax::LEV}, Rule::NonNegative},
        {"nlab", &ParameterTables::nlab, {Ax::EN, Ax::LEV, Ax::T}, Rule::NonNegative},
        {"labor_transfer", &ParameterTables::labor_transfer, {Ax::EN, Ax::EN}, Rule::NonNegative},
        {"maxnum", &ParameterTables::maxnum, {Ax::EN}, Rule::NonNegative},
        {"nr", &ParameterTables::nr, {Ax::EN}, Rule::NonNegative},
        {"nd", &ParameterTables::nd, {Ax::EN}, Rule::NonNegative},
    };
    return reg;
}

inline const std::vector<ScalarInfo>& scalar_registry() {
    static const std::vector<ScalarInfo> reg = {
        {"pulk", &ParameterTables::pulk, Rule::NonNegative},
        {"pull", &ParameterTables::pull, Rule::NonNegative},
        {"per", &ParameterTables::per, Rule::NonNegative},
        {"tpp", &ParameterTables::tpp, Rule::NonNegative},
        {"big_m", &ParameterTables::big_m, Rule::Positive},
    };
    return reg;
}

struct Violation {
    std::string table;               /* table key, or "sets"/"ownership" */
    std::vector<std::size_t> index;  /* offending cell (empty for set-level) */
    std::string rule;                /* rule identifier */
    std::string message;

    std::string str() const {
        std::ostringstream os;
        os << table;
        if (!index.empty()) {
            os << '[';
            for (std::size_t i = 0; i < index.size(); ++i)
                os << (i ? "," : "") << index[i];
            os << ']';
        }
        os << ": " << rule << " - " << message;
        return os.str();
    }
};

struct ModelInstance {
    std::string name;
    std::string description;
    InstanceSets sets;
    ParameterTables params;
    /* ownership: refineries have a single owner, distribution centers carry
     * the set of stakeholders allowed to use them (indices into E) */
    std::vector<int> refinery_owner;       /* size |K|+|K'| */
    std::vector<std::vector<int>> dc_users;/* size |L|+|L'|, each sorted, non-empty */

    std::size_t nK() const { return sets.refineries.size(); }
    std::size_t nKc() const { return sets.candidate_refineries.size(); }
    std::size_t nL() const { return sets.dcs.size(); }
    std::size_t nLc() const { return sets.candidate_dcs.size(); }
    std::size_t nM() const { return sets.customers.size(); }
    std::size_t nV() const { return sets.modes.size(); }
    std::size_t nP() const { return sets.products.size(); }
    std::size_t nE() const { return sets.stakeholders.size(); }
    std::size_t nT() const { return sets.periods.size(); }

    int pipeline_index() const {
        for (std::size_t v = 0; v < sets.modes.size(); ++v)
            if (sets.modes[v] == sets.pipeline_mode) return static_cast<int>(v);
        return -1;
    }

    /* kall index: 0..|K|-1 existing, |K|.. candidates; same scheme for DCs */
    std::size_t kall(std::size_t k_existing) const { return k_existing; }
    std::size_t kall_c(std::size_t k_candidate) const { return nK() + k_candidate; }
    std::size_t lall(std::size_t l_existing) const { return l_existing; }
    std::size_t lall_c(std::size_t l_candidate) const { return nL() + l_candidate; }

    bool dc_allows(std::size_t lall_idx, int e) const {
        const auto& u = dc_users[lall_idx];
        return std::find(u.begin(), u.end(), e) != u.end();
    }
};

namespace detail {

inline void check_unique_ids(const std::vector<std::string>& a,
                             const std::vector<std::string>& b,
                             const char* what,
                             std::vector<Violation>& out) {
    std::set<std::string> seen;
    for (const auto& coll : {a, b}) {
        for (const auto& id : coll) {
            if (id.empty())
                out.push_back({"sets", {}, "sets", std::string(what) + ": empty identifier"});
            else if (!seen.insert(id).second)
                out.push_back({"sets", {}, "sets",
                               std::string(what) + ": identifier '" + id + "' repeats"});
        }
    }
}

inline void unflatten_index(std::size_t flat, const std::vector<std::size_t>& shape,
                            std::vector<std::size_t>& out) {
    out.assign(shape.size(), 0);
    for (std::size_t d = shape.size(); d-- > 0;) {
        out[d] = flat % shape[d];
        flat /= shape[d];
    }
}

} // namespace detail

/* Full invariant check.  Returns all violations; empty result means the
 * instance is usable by the model builder. */
inline std::vector<Violation> validate(const ModelInstance& inst) {
    std::vector<Violation> out;
    const InstanceSets& s = inst.sets;

    struct Req { const char* name; const std::vector<std::string>* coll; };
    const Req required[] = {
        {"refineries", &s.refineries}, {"dcs", &s.dcs}, {"customers", &s.customers},
        {"modes", &s.modes}, {"mode_capacity_levels", &s.mode_capacity_levels},
        {"products", &s.products}, {"stakeholders", &s.stakeholders},
        {"regions", &s.regions}, {"education_levels", &s.education_levels},
        {"periods", &s.periods}, {"fields", &s.fields},
    };
    for (const auto& r : required)
        if (r.coll->empty())
            out.push_back({"sets", {}, "sets", std::string(r.name) + " must be non-empty"});

    detail::check_unique_ids(s.refineries, s.candidate_refineries, "refineries", out);
    detail::check_unique_ids(s.dcs, s.candidate_dcs, "dcs", out);
    detail::check_unique_ids(s.customers, {}, "customers", out);
    detail::check_unique_ids(s.modes, {}, "modes", out);
    detail::check_unique_ids(s.products, {}, "products", out);
    detail::check_unique_ids(s.stakeholders, {}, "stakeholders", out);
    detail::check_unique_ids(s.periods, {}, "periods", out);

    if (std::find(s.modes.begin(), s.modes.end(), s.pipeline_mode) == s.modes.end())
        out.push_back({"sets", {}, "sets",
                       "pipeline_mode '" + s.pipeline_mode + "' is not in modes"});

    for (Ax ax : {Ax::K, Ax::Kc, Ax::L, Ax::Lc, Ax::M, Ax::V, Ax::LCV, Ax::P, Ax::EK,
                  Ax::EL, Ax::UK, Ax::UL, Ax::EV, Ax::EZ, Ax::LV, Ax::RV, Ax::E, Ax::EN,
                  Ax::LEV, Ax::T, Ax::I}) {
        if (axis_size(ax, s) > 500) {
            out.push_back({"sets", {}, "sets", "a set exceeds the supported size of 500"});
            break;
        }
    }

    /* table totality + value rules */
    std::vector<std::size_t> idx;
    for (const auto& info : table_registry()) {
        const Table& t = inst.params.*(info.member);
        std::vector<std::size_t> want;
        std::size_t n = 1;
        for (Ax ax : info.axes) {
            want.push_back(axis_size(ax, s));
            n *= want.back();
        }
        if (t.shape != want || t.data.size() != n) {
            out.push_back({info.key, {}, "totality", "table not total (shape mismatch)"});
            continue;
        }
        for (std::size_t f = 0; f < t.data.size(); ++f) {
            const double v = t.data[f];
            bool ok = true;
            switch (info.rule) {
                case Rule::NonNegative: ok = v >= 0.0; break;
                case Rule::Binary: ok = v == 0.0 || v == 1.0; break;
                case Rule::UnitInterval: ok = v >= 0.0 && v <= 1.0; break;
                case Rule::Positive: ok = v > 0.0; break;
            }
            if (!std::isfinite(v)) ok = false;
            if (!ok) {
                detail::unflatten_index(f, t.shape, idx);
                std::ostringstream msg;
                msg << "value " << v << " breaks rule " << rule_str(info.rule);
                out.push_back({info.key, idx, rule_str(info.rule), msg.str()});
            }
        }
    }
    for (const auto& info : scalar_registry()) {
        const double v = inst.params.*(info.member);
        bool ok = std::isfinite(v);
        if (ok) {
            switch (info.rule) {
                case Rule::NonNegative: ok = v >= 0.0; break;
                case Rule::Positive: ok = v > 0.0; break;
                default: break;
            }
        }
        if (!ok) {
            std::ostringstream msg;
            msg << "value " << v << " breaks rule " << rule_str(info.rule);
            out.push_back({info.key, {}, rule_str(info.rule), msg.str()});
        }
    }

    /* ownership coverage and resolution */
    const std::size_t nka = inst.nK() + inst.nKc();
    const std::size_t nla = inst.nL() + inst.nLc();
    if (inst.refinery_owner.size() != nka) {
        out.push_back({"ownership", {}, "ownership", "refinery_owner must cover every refinery"});
    } else {
        for (std::size_t i = 0; i < nka; ++i) {
            const int e = inst.refinery_owner[i];
            if (e < 0 || static_cast<std::size_t>(e) >= inst.nE())
                out.push_back({"ownership", {i}, "ownership", "refinery owner does not resolve"});
        }
    }
    if (inst.dc_users.size() != nla) {
        out.push_back({"ownership", {}, "ownership", "dc_users must cover every dc"});
    } else {
        for (std::size_t i = 0; i < nla; ++i) {
            const auto& u = inst.dc_users[i];
            if (u.empty()) {
                out.push_back({"ownership", {i}, "ownership", "dc stakeholder set is empty"});
                continue;
            }
            std::set<int> uniq;
            for (int e : u) {
                if (e < 0 || static_cast<std::size_t>(e) >= inst.nE())
                    out.push_back({"ownership", {i}, "ownership", "dc stakeholder does not resolve"});
                else if (!uniq.insert(e).second)
                    out.push_back({"ownership", {i}, "ownership", "dc stakeholder repeats"});
            }
        }
    }
    return out;
}

/* Advisory checks that do not make an instance invalid. */
inline std::vector<std::string> instance_warnings(const ModelInstance& inst) {
    std::vector<std::string> out;
    const auto& p = inst.params;
    if (p.demand.shape.empty() || p.stakeholder_demand.shape.empty()) return out;
    for (std::size_t pi = 0; pi < inst.nP(); ++pi) {
        for (std::size_t t = 0; t < inst.nT(); ++t) {
            double committed = 0.0, total = 0.0;
            for (std::size_t e = 0; e < inst.nE(); ++e)
                committed += p.stakeholder_demand(pi, t, e);
            for (std::size_t m = 0; m < inst.nM(); ++m)
                total += p.demand(pi, m, t);
            if (committed > total + 1e-9) {
                std::ostringstream os;
                os << "stakeholder_demand exceeds total demand for product "
                   << inst.sets.products[pi] << ", period " << inst.sets.periods[t]
                   << " (" << committed << " > " << total << ")";
                out.push_back(os.str());
            }
        }
    }
    return out;
}

} // namespace dscpsc

#endif
