// Turns a validated ModelInstance into the full MILP: every variable family,
// every constraint family (row tags eqN[...]), and the stakeholder revenue /
// cost / pollution / employment objectives, both chain-level and per
// stakeholder.  The builder is deterministic: identical instances produce
// byte-identical models.
#ifndef DSCPSC_BUILDER_HPP
#define DSCPSC_BUILDER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dscpsc/errors.hpp"
#include "dscpsc/instance.hpp"
#include "dscpsc/milp.hpp"

namespace dscpsc {

/* Weighting of the inter-region transfer matrix inside the new-DC labor
 * balance rows (eq86).  AsPrinted keeps the transfer factor on each hire
 * term; Uniform replaces it with 1 so eq86 matches the shape of eq84/85/87. */
enum class LaborWeight { AsPrinted, Uniform };

struct BuildOptions {
    LaborWeight labor_weight = LaborWeight::AsPrinted;
};

/* Reporting categories of the cost side of a stakeholder's profit objective,
 * in render order.  ModelBuilder::cost_categories keys its result with these
 * and the analysis layer renders them in this order. */
inline constexpr std::array<const char*, 12> kCostCategories = {
    "pipeline_install", "pipeline_expand", "facility_install", "facility_expand",
    "closedown",        "tank_install",    "fixed",            "variable",
    "inventory",        "transport",       "import",           "labor"};

/* Per-family tally of what the builder emitted.  Families that were empty for
 * the given instance are present with count zero, so two reports always have
 * comparable key sets. */
struct BuildReport {
    std::map<std::string, std::size_t> var_families;
    std::map<std::string, std::size_t> con_families;
    std::size_t num_vars = 0;
    std::size_t num_constraints = 0;
    std::size_t num_free_discrete = 0;

    std::string text() const {
        std::ostringstream os;
        os << "variables (total " << num_vars << ", free discrete " << num_free_discrete << "):\n";
        for (const auto& [fam, n] : var_families) os << "  " << fam << " " << n << "\n";
        os << "constraints (total " << num_constraints << "):\n";
        /* order row tags numerically, suffixed tags after their base number */
        std::vector<std::string> tags;
        tags.reserve(con_families.size());
        for (const auto& [tag, n] : con_families) tags.push_back(tag);
        auto tag_key = [](const std::string& t) {
            std::size_t i = 2; /* skip "eq" */
            long num = 0;
            while (i < t.size() && t[i] >= '0' && t[i] <= '9') num = num * 10 + (t[i++] - '0');
            return std::make_pair(num, t.substr(i));
        };
        std::sort(tags.begin(), tags.end(),
                  [&](const std::string& a, const std::string& b) { return tag_key(a) < tag_key(b); });
        for (const auto& tag : tags) os << "  " << tag << " " << con_families.at(tag) << "\n";
        return os.str();
    }
};

namespace detail {

/* Variable registry keyed by up to eight set indices (unused slots -1). */
class VarTable {
public:
    template <class... Ix>
    void put(VarId id, Ix... ix) {
        tab_.emplace(make_key(ix...), id);
    }
    template <class... Ix>
    VarId at(Ix... ix) const {
        const auto it = tab_.find(make_key(ix...));
        if (it == tab_.end()) throw Error("internal: variable lookup missed its table");
        return it->second;
    }
    std::size_t size() const { return tab_.size(); }

private:
    template <class... Ix>
    static std::array<int, 8> make_key(Ix... ix) {
        static_assert(sizeof...(Ix) <= 8, "at most eight indices per family");
        std::array<int, 8> k;
        k.fill(-1);
        int pos = 0;
        ((k[pos++] = static_cast<int>(ix)), ...);
        return k;
    }
    std::map<std::array<int, 8>, VarId> tab_;
};

} // namespace detail

class ModelBuilder {
public:
    explicit ModelBuilder(ModelInstance inst, BuildOptions opts = {})
        : inst_(std::move(inst)), opts_(opts) {
        const auto issues = validate(inst_);
        if (!issues.empty()) {
            std::ostringstream os;
            os << "instance '" << inst_.name << "' failed validation (" << issues.size()
               << " problem" << (issues.size() == 1 ? "" : "s") << "): " << issues.front().str();
            throw Error(os.str());
        }
        cache_sizes();
        cache_ownership();
        cache_bounds_and_bigm();
    }

    /* Single-shot: declares variables, emits rows, registers objectives and
     * returns the frozen model. */
    MilpModel build(BuildReport* report = nullptr) {
        if (built_) throw Error("ModelBuilder::build may only be called once");
        built_ = true;
        declare_variables();
        emit_constraints();
        register_objectives();
        model_.freeze();
        if (report) fill_report(*report);
        return std::move(model_);
    }

    /* Post-build introspection: the cost side of stakeholder e's profit
     * objective split into the kCostCategories reporting buckets.  Every key
     * is present; a category with an empty index domain maps to the zero
     * expression.  The buckets are assembled independently of cost_expr so
     * the two routes can be held against each other. */
    std::map<std::string, LinExpr> cost_categories(int e) const {
        require_built("cost_categories");
        check_stakeholder(e);
        return cost_categories_impl(e);
    }

    /* The same cost total assembled relation by relation (the expression the
     * profit objective subtracts).  Sum of the categories above must equal
     * this at any assignment. */
    LinExpr stakeholder_cost(int e) const {
        require_built("stakeholder_cost");
        check_stakeholder(e);
        return cost_expr(e);
    }

private:
    void require_built(const char* what) const {
        if (!built_) throw Error(std::string(what) + " requires a built model; call build() first");
    }

    void check_stakeholder(int e) const {
        if (e < 0 || e >= nE_)
            throw Error("stakeholder index " + std::to_string(e) + " out of range [0," +
                        std::to_string(nE_) + ")");
    }

    // ----- cached instance views ------------------------------------------
    ModelInstance inst_; /* own a copy so the builder cannot outlive its data */
    BuildOptions opts_;
    MilpModel model_;
    bool built_ = false;

    int nK_ = 0, nKc_ = 0, nL_ = 0, nLc_ = 0, nM_ = 0, nV_ = 0, nLCV_ = 0, nP_ = 0;
    int nEK_ = 0, nEL_ = 0, nUK_ = 0, nUL_ = 0, nEV_ = 0, nEZ_ = 0, nLV_ = 0, nRV_ = 0;
    int nE_ = 0, nEN_ = 0, nLEV_ = 0, nT_ = 0, nI_ = 0;
    int pipe_ = -1;

    /* per stakeholder: owned/used facility index lists */
    std::vector<std::vector<int>> Ke_, Kce_, Le_, Lce_;    /* raw indices */
    std::vector<std::vector<int>> Kalle_, Ae_;             /* kall / lall indices */
    std::vector<std::vector<std::pair<int, int>>> allArcs_, newArcs_; /* (kall, lall) */

    /* derived integer bounds and big-M constants */
    std::vector<std::vector<double>> ub_tank_; /* [lc][ez] */
    std::vector<double> ub_fleet_;             /* [lcv] */
    std::vector<double> ub_labor_;             /* [lev] */
    double m17_ = 0.0;
    std::vector<double> m22_;                  /* [lc] */
    std::vector<double> m_fleet_;              /* [lcv] */
    double m_flow_ = 0.0;

    std::map<std::string, std::size_t> con_count_;

    // variable registries, one per family
    detail::VarTable xk_, xl_, tk_, tl_, ykl_, ylpl_, z_, psik_, s_, xi_;
    detail::VarTable rkl_, rklx_, rlpl_, rlplx_, n_, nkl_, nlpl_, nlm_;
    detail::VarTable henk_, heek_, henl_, heel_;
    detail::VarTable qkl_, qlpl_, qlm_, imp_, ep_, vl_, vk_, rlab_, alab_;

    // ----- small helpers ---------------------------------------------------
    const ParameterTables& P() const { return inst_.params; }
    const InstanceSets& S() const { return inst_.sets; }

    const std::string& sK(int k) const { return S().refineries[static_cast<std::size_t>(k)]; }
    const std::string& sKc(int kc) const { return S().candidate_refineries[static_cast<std::size_t>(kc)]; }
    const std::string& sKall(int ka) const {
        return ka < nK_ ? sK(ka) : sKc(ka - nK_);
    }
    const std::string& sL(int l) const { return S().dcs[static_cast<std::size_t>(l)]; }
    const std::string& sLc(int lc) const { return S().candidate_dcs[static_cast<std::size_t>(lc)]; }
    const std::string& sLall(int la) const {
        return la < nL_ ? sL(la) : sLc(la - nL_);
    }
    const std::string& sM(int m) const { return S().customers[static_cast<std::size_t>(m)]; }
    const std::string& sV(int v) const { return S().modes[static_cast<std::size_t>(v)]; }
    const std::string& sLCV(int c) const { return S().mode_capacity_levels[static_cast<std::size_t>(c)]; }
    const std::string& sP(int p) const { return S().products[static_cast<std::size_t>(p)]; }
    const std::string& sEK(int x) const { return S().refinery_build_levels[static_cast<std::size_t>(x)]; }
    const std::string& sEL(int x) const { return S().dc_build_levels[static_cast<std::size_t>(x)]; }
    const std::string& sUK(int x) const { return S().refinery_expansion_levels[static_cast<std::size_t>(x)]; }
    const std::string& sUL(int x) const { return S().dc_expansion_levels[static_cast<std::size_t>(x)]; }
    const std::string& sEV(int x) const { return S().pipeline_expansion_levels[static_cast<std::size_t>(x)]; }
    const std::string& sEZ(int x) const { return S().tank_levels[static_cast<std::size_t>(x)]; }
    const std::string& sLV(int x) const { return S().pipeline_build_levels[static_cast<std::size_t>(x)]; }
    const std::string& sRV(int x) const { return S().pipeline_routes[static_cast<std::size_t>(x)]; }
    const std::string& sE(int e) const { return S().stakeholders[static_cast<std::size_t>(e)]; }
    const std::string& sEN(int en) const { return S().regions[static_cast<std::size_t>(en)]; }
    const std::string& sLEV(int x) const { return S().education_levels[static_cast<std::size_t>(x)]; }
    const std::string& sT(int t) const { return S().periods[static_cast<std::size_t>(t)]; }
    const std::string& sI(int i) const { return S().fields[static_cast<std::size_t>(i)]; }

    static std::string nm(const char* fam, std::initializer_list<std::string> ids) {
        std::string out(fam);
        out += '[';
        bool first = true;
        for (const auto& id : ids) {
            if (!first) out += ',';
            out += id;
            first = false;
        }
        out += ']';
        return out;
    }

    void row(const char* tag, std::initializer_list<std::string> ids, LinExpr e, Sense sense,
             double rhs) {
        model_.add_constraint(nm(tag, ids), std::move(e), sense, rhs);
        ++con_count_[tag];
    }

    // ----- cache construction ---------------------------------------------
    void cache_sizes() {
        nK_ = static_cast<int>(inst_.nK());
        nKc_ = static_cast<int>(inst_.nKc());
        nL_ = static_cast<int>(inst_.nL());
        nLc_ = static_cast<int>(inst_.nLc());
        nM_ = static_cast<int>(inst_.nM());
        nV_ = static_cast<int>(inst_.nV());
        nLCV_ = static_cast<int>(S().mode_capacity_levels.size());
        nP_ = static_cast<int>(inst_.nP());
        nEK_ = static_cast<int>(S().refinery_build_levels.size());
        nEL_ = static_cast<int>(S().dc_build_levels.size());
        nUK_ = static_cast<int>(S().refinery_expansion_levels.size());
        nUL_ = static_cast<int>(S().dc_expansion_levels.size());
        nEV_ = static_cast<int>(S().pipeline_expansion_levels.size());
        nEZ_ = static_cast<int>(S().tank_levels.size());
        nLV_ = static_cast<int>(S().pipeline_build_levels.size());
        nRV_ = static_cast<int>(S().pipeline_routes.size());
        nE_ = static_cast<int>(inst_.nE());
        nEN_ = static_cast<int>(S().regions.size());
        nLEV_ = static_cast<int>(S().education_levels.size());
        nT_ = static_cast<int>(inst_.nT());
        nI_ = static_cast<int>(S().fields.size());
        pipe_ = inst_.pipeline_index();
    }

    void cache_ownership() {
        Ke_.assign(nE_, {});
        Kce_.assign(nE_, {});
        Le_.assign(nE_, {});
        Lce_.assign(nE_, {});
        Kalle_.assign(nE_, {});
        Ae_.assign(nE_, {});
        for (int k = 0; k < nK_; ++k) Ke_[inst_.refinery_owner[static_cast<std::size_t>(k)]].push_back(k);
        for (int kc = 0; kc < nKc_; ++kc)
            Kce_[inst_.refinery_owner[static_cast<std::size_t>(nK_ + kc)]].push_back(kc);
        for (int l = 0; l < nL_; ++l)
            for (int e : inst_.dc_users[static_cast<std::size_t>(l)]) Le_[e].push_back(l);
        for (int lc = 0; lc < nLc_; ++lc)
            for (int e : inst_.dc_users[static_cast<std::size_t>(nL_ + lc)]) Lce_[e].push_back(lc);
        allArcs_.assign(nE_, {});
        newArcs_.assign(nE_, {});
        for (int e = 0; e < nE_; ++e) {
            for (int k : Ke_[e]) Kalle_[e].push_back(k);
            for (int kc : Kce_[e]) Kalle_[e].push_back(nK_ + kc);
            for (int l : Le_[e]) Ae_[e].push_back(l);
            for (int lc : Lce_[e]) Ae_[e].push_back(nL_ + lc);
            for (int ka : Kalle_[e])
                for (int la : Ae_[e]) allArcs_[e].push_back({ka, la});
            /* new arcs: any arc touching a candidate facility */
            for (int kc : Kce_[e])
                for (int la : Ae_[e]) newArcs_[e].push_back({nK_ + kc, la});
            for (int k : Ke_[e])
                for (int lc : Lce_[e]) newArcs_[e].push_back({k, nL_ + lc});
        }
    }

    void cache_bounds_and_bigm() {
        const double big = P().big_m;
        ub_tank_.assign(static_cast<std::size_t>(nLc_), std::vector<double>(static_cast<std::size_t>(nEZ_), 0.0));
        m22_.assign(static_cast<std::size_t>(nLc_), 0.0);
        for (int lc = 0; lc < nLc_; ++lc) {
            double max_build = 0.0;
            for (int el = 0; el < nEL_; ++el) max_build = std::max(max_build, P().ncl(lc, el));
            double tank_sum = 0.0;
            for (int ez = 0; ez < nEZ_; ++ez) {
                const double unit = P().nct(lc, ez);
                const double ub = unit > 0.0 ? std::floor(max_build / unit) : 0.0;
                ub_tank_[static_cast<std::size_t>(lc)][static_cast<std::size_t>(ez)] = ub;
                tank_sum += ub;
            }
            m22_[static_cast<std::size_t>(lc)] = std::min(big, tank_sum);
        }
        ub_fleet_.assign(static_cast<std::size_t>(nLCV_), 0.0);
        m_fleet_.assign(static_cast<std::size_t>(nLCV_), 0.0);
        for (int c = 0; c < nLCV_; ++c) {
            ub_fleet_[static_cast<std::size_t>(c)] = std::floor(P().nmax(c));
            m_fleet_[static_cast<std::size_t>(c)] = std::min(big, ub_fleet_[static_cast<std::size_t>(c)]);
        }
        ub_labor_.assign(static_cast<std::size_t>(nLEV_), 0.0);
        for (int lev = 0; lev < nLEV_; ++lev) {
            double worst = 0.0;
            for (int en = 0; en < nEN_; ++en) {
                double pool = 0.0;
                for (int t = 0; t < nT_; ++t) pool += P().nlab(en, lev, t);
                worst = std::max(worst, pool);
            }
            ub_labor_[static_cast<std::size_t>(lev)] = std::ceil(worst);
        }
        m17_ = std::min(big, 1.0);

        /* flow big-M: worst-case single-arc throughput over one period */
        double fleet = 0.0;
        for (int v = 0; v < nV_; ++v) {
            double cap = 0.0;
            for (int c = 0; c < nLCV_; ++c) cap += P().trc(v, c) * ub_fleet_[static_cast<std::size_t>(c)];
            fleet = std::max(fleet, cap);
        }
        fleet *= P().tpp;
        double route = 0.0;
        for (int lv = 0; lv < nLV_; ++lv) route = std::max(route, P().clv(lv));
        double pipe_kl = 0.0;
        for (int k = 0; k < nK_; ++k)
            for (int l = 0; l < nL_; ++l) {
                double exp_cap = 0.0;
                for (int ev = 0; ev < nEV_; ++ev) exp_cap = std::max(exp_cap, P().capkl(k, l, ev));
                pipe_kl = std::max(pipe_kl, P().icapkl(k, l) + exp_cap);
            }
        double pipe_lpl = 0.0;
        for (int a = 0; a < nL_; ++a)
            for (int b = 0; b < nL_; ++b) {
                if (a == b) continue;
                double exp_cap = 0.0;
                for (int ev = 0; ev < nEV_; ++ev) exp_cap = std::max(exp_cap, P().caplpl(a, b, ev));
                pipe_lpl = std::max(pipe_lpl, P().icaplpl(a, b) + exp_cap);
            }
        m_flow_ = std::min(big, fleet + route + std::max(pipe_kl, pipe_lpl));
    }

    double m9(int lc, int ez) const {
        return std::min(P().big_m, ub_tank_[static_cast<std::size_t>(lc)][static_cast<std::size_t>(ez)]);
    }

    // ----- variable declaration -------------------------------------------
    /* Discrete families are declared first, strategic decisions before
     * operational ones: the embedded solver branches in declaration order. */
    void declare_variables() {
        // xk: build candidate refinery kc at level ek in period t (owner e)
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e])
                for (int ek = 0; ek < nEK_; ++ek)
                    for (int t = 0; t < nT_; ++t)
                        xk_.put(model_.add_var(nm("xk", {sKc(kc), sEK(ek), sT(t), sE(e)}), VarKind::Binary),
                                kc, ek, t, e);
        // xl: build candidate DC lc at level el in period t
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int el = 0; el < nEL_; ++el)
                    for (int t = 0; t < nT_; ++t)
                        xl_.put(model_.add_var(nm("xl", {sLc(lc), sEL(el), sT(t), sE(e)}), VarKind::Binary),
                                lc, el, t, e);
        // tk: expand existing refinery k by step uk in period t
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int uk = 0; uk < nUK_; ++uk)
                    for (int t = 0; t < nT_; ++t)
                        tk_.put(model_.add_var(nm("tk", {sK(k), sUK(uk), sT(t), sE(e)}), VarKind::Binary),
                                k, uk, t, e);
        // tl: expand existing DC l for product p by step ul in period t
        for (int e = 0; e < nE_; ++e)
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int ul = 0; ul < nUL_; ++ul)
                        for (int t = 0; t < nT_; ++t)
                            tl_.put(model_.add_var(nm("tl", {sP(p), sL(l), sUL(ul), sT(t), sE(e)}),
                                                   VarKind::Binary),
                                    p, l, ul, t, e);
        // ykl: expand existing refinery->DC pipeline by step ev
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int l : Le_[e])
                    for (int ev = 0; ev < nEV_; ++ev)
                        for (int t = 0; t < nT_; ++t)
                            ykl_.put(model_.add_var(nm("ykl", {sK(k), sL(l), sEV(ev), sT(t), sE(e)}),
                                                    VarKind::Binary),
                                     k, l, ev, t, e);
        // ylpl: expand existing DC->DC pipeline
        for (int e = 0; e < nE_; ++e)
            for (int lp : Le_[e])
                for (int l : Le_[e]) {
                    if (lp == l) continue;
                    for (int ev = 0; ev < nEV_; ++ev)
                        for (int t = 0; t < nT_; ++t)
                            ylpl_.put(model_.add_var(nm("ylpl", {sL(lp), sL(l), sEV(ev), sT(t), sE(e)}),
                                                     VarKind::Binary),
                                      lp, l, ev, t, e);
                }
        // z: install tank bank of level ez at candidate DC lc
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int ez = 0; ez < nEZ_; ++ez)
                    for (int t = 0; t < nT_; ++t)
                        z_.put(model_.add_var(nm("z", {sLc(lc), sEZ(ez), sT(t), sE(e)}), VarKind::Binary),
                               lc, ez, t, e);
        // psik: retire the initial storage of existing refinery k
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int t = 0; t < nT_; ++t)
                    psik_.put(model_.add_var(nm("psik", {sK(k), sT(t), sE(e)}), VarKind::Binary), k, t, e);
        // s: direction selector between existing DCs
        for (int e = 0; e < nE_; ++e)
            for (int lp : Le_[e])
                for (int l : Le_[e]) {
                    if (lp == l) continue;
                    for (int t = 0; t < nT_; ++t)
                        s_.put(model_.add_var(nm("s", {sL(lp), sL(l), sT(t), sE(e)}), VarKind::Binary),
                               lp, l, t, e);
                }
        // xi: fractional use of an existing DC's initial capacity
        for (int e = 0; e < nE_; ++e)
            for (int l : Le_[e])
                for (int t = 0; t < nT_; ++t)
                    xi_.put(model_.add_var(nm("xi", {sL(l), sT(t), sE(e)}), VarKind::Continuous, 0.0, 1.0),
                            l, t, e);
        // rkl / rklx: build refinery->DC route (pipeline spec / other mode)
        for (int e = 0; e < nE_; ++e)
            for (const auto& [ka, la] : allArcs_[e]) {
                for (int v = 0; v < nV_; ++v)
                    for (int lv = 0; lv < nLV_; ++lv)
                        for (int rv = 0; rv < nRV_; ++rv)
                            for (int t = 0; t < nT_; ++t) {
                                const VarId id = model_.add_var(
                                    nm("rkl", {sKall(ka), sLall(la), sV(v), sLV(lv), sRV(rv), sT(t), sE(e)}),
                                    VarKind::Binary);
                                if (v != pipe_) model_.set_var_bounds(id, 0.0, 0.0);
                                rkl_.put(id, ka, la, v, lv, rv, t, e);
                            }
                for (int v = 0; v < nV_; ++v)
                    for (int t = 0; t < nT_; ++t) {
                        const VarId id = model_.add_var(
                            nm("rklx", {sKall(ka), sLall(la), sV(v), sT(t), sE(e)}), VarKind::Binary);
                        if (v == pipe_) model_.set_var_bounds(id, 0.0, 0.0);
                        rklx_.put(id, ka, la, v, t, e);
                    }
            }
        // rlpl / rlplx: build DC->DC route
        for (int e = 0; e < nE_; ++e)
            for (int a : Ae_[e])
                for (int b : Ae_[e]) {
                    if (a == b) continue;
                    for (int v = 0; v < nV_; ++v)
                        for (int lv = 0; lv < nLV_; ++lv)
                            for (int rv = 0; rv < nRV_; ++rv)
                                for (int t = 0; t < nT_; ++t) {
                                    const VarId id = model_.add_var(
                                        nm("rlpl", {sLall(a), sLall(b), sV(v), sLV(lv), sRV(rv), sT(t), sE(e)}),
                                        VarKind::Binary);
                                    if (v != pipe_) model_.set_var_bounds(id, 0.0, 0.0);
                                    rlpl_.put(id, a, b, v, lv, rv, t, e);
                                }
                    for (int v = 0; v < nV_; ++v)
                        for (int t = 0; t < nT_; ++t) {
                            const VarId id = model_.add_var(
                                nm("rlplx", {sLall(a), sLall(b), sV(v), sT(t), sE(e)}), VarKind::Binary);
                            if (v == pipe_) model_.set_var_bounds(id, 0.0, 0.0);
                            rlplx_.put(id, a, b, v, t, e);
                        }
                }
        // n: tanks of level ez installed for product p at candidate DC lc
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int ez = 0; ez < nEZ_; ++ez)
                        for (int t = 0; t < nT_; ++t)
                            n_.put(model_.add_var(nm("n", {sP(p), sLc(lc), sEZ(ez), sT(t), sE(e)}),
                                                  VarKind::Integer, 0.0,
                                                  ub_tank_[static_cast<std::size_t>(lc)][static_cast<std::size_t>(ez)]),
                                   p, lc, ez, t, e);
        // nkl / nlpl / nlm: vehicles of size class lcv assigned to a leg
        for (int e = 0; e < nE_; ++e)
            for (const auto& [ka, la] : allArcs_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int v = 0; v < nV_; ++v)
                        for (int c = 0; c < nLCV_; ++c)
                            for (int t = 0; t < nT_; ++t)
                                nkl_.put(model_.add_var(
                                             nm("nkl", {sP(p), sKall(ka), sLall(la), sV(v), sLCV(c), sT(t), sE(e)}),
                                             VarKind::Integer, 0.0, ub_fleet_[static_cast<std::size_t>(c)]),
                                         p, ka, la, v, c, t, e);
        for (int e = 0; e < nE_; ++e)
            for (int a : Ae_[e])
                for (int b : Ae_[e]) {
                    if (a == b) continue;
                    for (int p = 0; p < nP_; ++p)
                        for (int v = 0; v < nV_; ++v)
                            for (int c = 0; c < nLCV_; ++c)
                                for (int t = 0; t < nT_; ++t)
                                    nlpl_.put(model_.add_var(
                                                  nm("nlpl", {sP(p), sLall(a), sLall(b), sV(v), sLCV(c), sT(t), sE(e)}),
                                                  VarKind::Integer, 0.0, ub_fleet_[static_cast<std::size_t>(c)]),
                                              p, a, b, v, c, t, e);
                }
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int m = 0; m < nM_; ++m)
                        for (int v = 0; v < nV_; ++v) {
                            if (v == pipe_) continue;
                            for (int c = 0; c < nLCV_; ++c)
                                for (int t = 0; t < nT_; ++t)
                                    nlm_.put(model_.add_var(
                                                 nm("nlm", {sP(p), sLall(la), sM(m), sV(v), sLCV(c), sT(t), sE(e)}),
                                                 VarKind::Integer, 0.0, ub_fleet_[static_cast<std::size_t>(c)]),
                                             p, la, m, v, c, t, e);
                        }
        // hen*/hee*: hires from region en routed via region en2, per facility
        for (int en = 0; en < nEN_; ++en)
            for (int kc = 0; kc < nKc_; ++kc)
                for (int en2 = 0; en2 < nEN_; ++en2)
                    for (int lev = 0; lev < nLEV_; ++lev)
                        for (int t = 0; t < nT_; ++t)
                            henk_.put(model_.add_var(
                                          nm("henk", {sEN(en), sKc(kc), sEN(en2), sLEV(lev), sT(t)}),
                                          VarKind::Integer, 0.0, ub_labor_[static_cast<std::size_t>(lev)]),
                                      en, kc, en2, lev, t);
        for (int en = 0; en < nEN_; ++en)
            for (int k = 0; k < nK_; ++k)
                for (int en2 = 0; en2 < nEN_; ++en2)
                    for (int lev = 0; lev < nLEV_; ++lev)
                        for (int t = 0; t < nT_; ++t)
                            heek_.put(model_.add_var(
                                          nm("heek", {sEN(en), sK(k), sEN(en2), sLEV(lev), sT(t)}),
                                          VarKind::Integer, 0.0, ub_labor_[static_cast<std::size_t>(lev)]),
                                      en, k, en2, lev, t);
        for (int en = 0; en < nEN_; ++en)
            for (int lc = 0; lc < nLc_; ++lc)
                for (int en2 = 0; en2 < nEN_; ++en2)
                    for (int lev = 0; lev < nLEV_; ++lev)
                        for (int t = 0; t < nT_; ++t)
                            henl_.put(model_.add_var(
                                          nm("henl", {sEN(en), sLc(lc), sEN(en2), sLEV(lev), sT(t)}),
                                          VarKind::Integer, 0.0, ub_labor_[static_cast<std::size_t>(lev)]),
                                      en, lc, en2, lev, t);
        for (int en = 0; en < nEN_; ++en)
            for (int l = 0; l < nL_; ++l)
                for (int en2 = 0; en2 < nEN_; ++en2)
                    for (int lev = 0; lev < nLEV_; ++lev)
                        for (int t = 0; t < nT_; ++t)
                            heel_.put(model_.add_var(
                                          nm("heel", {sEN(en), sL(l), sEN(en2), sLEV(lev), sT(t)}),
                                          VarKind::Integer, 0.0, ub_labor_[static_cast<std::size_t>(lev)]),
                                      en, l, en2, lev, t);
        // qkl / qlpl / qlm: shipped quantities
        for (int e = 0; e < nE_; ++e)
            for (const auto& [ka, la] : allArcs_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int v = 0; v < nV_; ++v)
                        for (int t = 0; t < nT_; ++t)
                            qkl_.put(model_.add_var(
                                         nm("qkl", {sP(p), sKall(ka), sLall(la), sV(v), sT(t), sE(e)}),
                                         VarKind::Continuous),
                                     p, ka, la, v, t, e);
        for (int e = 0; e < nE_; ++e)
            for (int a : Ae_[e])
                for (int b : Ae_[e]) {
                    if (a == b) continue;
                    for (int p = 0; p < nP_; ++p)
                        for (int v = 0; v < nV_; ++v)
                            for (int t = 0; t < nT_; ++t)
                                qlpl_.put(model_.add_var(
                                              nm("qlpl", {sP(p), sLall(a), sLall(b), sV(v), sT(t), sE(e)}),
                                              VarKind::Continuous),
                                          p, a, b, v, t, e);
                }
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int m = 0; m < nM_; ++m)
                        for (int v = 0; v < nV_; ++v) {
                            if (v == pipe_) continue;
                            for (int t = 0; t < nT_; ++t)
                                qlm_.put(model_.add_var(
                                             nm("qlm", {sP(p), sLall(la), sM(m), sV(v), sT(t), sE(e)}),
                                             VarKind::Continuous),
                                         p, la, m, v, t, e);
                        }
        // imp / ep / vl: imports, exports and closing stock per DC and user
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t)
                        imp_.put(model_.add_var(nm("imp", {sP(p), sLall(la), sT(t), sE(e)}),
                                                VarKind::Continuous),
                                 p, la, t, e);
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t)
                        ep_.put(model_.add_var(nm("ep", {sP(p), sLall(la), sT(t), sE(e)}),
                                               VarKind::Continuous),
                                p, la, t, e);
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t)
                        vl_.put(model_.add_var(nm("vl", {sP(p), sLall(la), sT(t), sE(e)}),
                                               VarKind::Continuous),
                                p, la, t, e);
        // vk: closing crude stock per refinery
        for (int e = 0; e < nE_; ++e)
            for (int ka : Kalle_[e])
                for (int t = 0; t < nT_; ++t)
                    vk_.put(model_.add_var(nm("vk", {sKall(ka), sT(t), sE(e)}), VarKind::Continuous),
                            ka, t, e);
        // rlab / alab: recruited and available labor per region pool
        for (int en = 0; en < nEN_; ++en)
            for (int lev = 0; lev < nLEV_; ++lev)
                for (int t = 0; t < nT_; ++t)
                    rlab_.put(model_.add_var(nm("rlab", {sEN(en), sLEV(lev), sT(t)}), VarKind::Continuous),
                              en, lev, t);
        for (int en = 0; en < nEN_; ++en)
            for (int lev = 0; lev < nLEV_; ++lev)
                for (int t = 0; t < nT_; ++t)
                    alab_.put(model_.add_var(nm("alab", {sEN(en), sLEV(lev), sT(t)}), VarKind::Continuous),
                              en, lev, t);
    }

    // ----- recurring expression fragments ---------------------------------
    /* cumulative refinery expansion capacity through period t */
    LinExpr ref_cap_prefix(int e, int k, int t) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int uk = 0; uk < nUK_; ++uk) ex.add(tk_.at(k, uk, tp, e), P().capk(k, uk));
        return ex;
    }
    /* cumulative DC expansion capacity through period t (one product) */
    LinExpr dc_cap_prefix(int e, int l, int p, int t) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int ul = 0; ul < nUL_; ++ul) ex.add(tl_.at(p, l, ul, tp, e), P().capl(l, ul));
        return ex;
    }
    /* cumulative build decisions of candidate refinery kc through t */
    LinExpr xk_prefix(int e, int kc, int t, double scale = 1.0) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int ek = 0; ek < nEK_; ++ek) ex.add(xk_.at(kc, ek, tp, e), scale);
        return ex;
    }
    /* cumulative build decisions of candidate DC lc through t */
    LinExpr xl_prefix(int e, int lc, int t, double scale = 1.0) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int el = 0; el < nEL_; ++el) ex.add(xl_.at(lc, el, tp, e), scale);
        return ex;
    }
    /* cumulative installed tank capacity at candidate DC lc (one product) */
    LinExpr tank_cap_prefix(int e, int lc, int p, int t, bool min_use) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int ez = 0; ez < nEZ_; ++ez) {
                const double unit = min_use ? P().min_use_l(p, lc, ez) * P().nct(lc, ez) : P().nct(lc, ez);
                ex.add(n_.at(p, lc, ez, tp, e), unit);
            }
        return ex;
    }
    /* total inbound refinery flow into DC la for (p, t, e) */
    LinExpr ref_inflow(int e, int la, int p, int t) const {
        LinExpr ex;
        for (int ka : Kalle_[e])
            for (int v = 0; v < nV_; ++v) ex.add(qkl_.at(p, ka, la, v, t, e), 1.0);
        return ex;
    }
    /* inbound DC transfers; sources restricted to existing DCs if asked */
    LinExpr dc_inflow(int e, int la, int p, int t, bool existing_sources_only) const {
        LinExpr ex;
        const std::vector<int>& src = existing_sources_only ? Le_[e] : Ae_[e];
        for (int a : src) {
            if (a == la) continue;
            for (int v = 0; v < nV_; ++v) ex.add(qlpl_.at(p, a, la, v, t, e), 1.0);
        }
        return ex;
    }
    /* outbound DC transfers; destinations restricted to candidates if asked */
    LinExpr dc_outflow(int e, int la, int p, int t, bool candidate_dests_only) const {
        LinExpr ex;
        for (int b : Ae_[e]) {
            if (b == la) continue;
            if (candidate_dests_only && b < nL_) continue;
            for (int v = 0; v < nV_; ++v) ex.add(qlpl_.at(p, la, b, v, t, e), 1.0);
        }
        return ex;
    }
    /* customer deliveries leaving DC la for (p, t, e), non-pipeline modes */
    LinExpr customer_outflow(int e, int la, int p, int t) const {
        LinExpr ex;
        for (int m = 0; m < nM_; ++m)
            for (int v = 0; v < nV_; ++v) {
                if (v == pipe_) continue;
                ex.add(qlm_.at(p, la, m, v, t, e), 1.0);
            }
        return ex;
    }
    /* cumulative route-build decisions on a refinery->DC arc through t */
    LinExpr rkl_prefix(int e, int ka, int la, int t, bool pipe_only) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int v = 0; v < nV_; ++v) {
                if (pipe_only && v != pipe_) continue;
                for (int lv = 0; lv < nLV_; ++lv)
                    for (int rv = 0; rv < nRV_; ++rv) ex.add(rkl_.at(ka, la, v, lv, rv, tp, e), 1.0);
            }
        return ex;
    }
    /* cumulative route-build decisions on a DC->DC arc through t */
    LinExpr rlpl_prefix(int e, int a, int b, int t, bool pipe_only) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int v = 0; v < nV_; ++v) {
                if (pipe_only && v != pipe_) continue;
                for (int lv = 0; lv < nLV_; ++lv)
                    for (int rv = 0; rv < nRV_; ++rv) ex.add(rlpl_.at(a, b, v, lv, rv, tp, e), 1.0);
            }
        return ex;
    }
    /* cumulative capacity added by route builds of mode v through t; modes
     * other than the pipeline have their spec binaries pinned to zero, so
     * those terms are inert but keep the row shape uniform across modes */
    LinExpr rkl_capacity_prefix(int e, int ka, int la, int v, int t) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int lv = 0; lv < nLV_; ++lv)
                for (int rv = 0; rv < nRV_; ++rv)
                    ex.add(rkl_.at(ka, la, v, lv, rv, tp, e), P().clv(lv));
        return ex;
    }
    LinExpr rlpl_capacity_prefix(int e, int a, int b, int v, int t) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int lv = 0; lv < nLV_; ++lv)
                for (int rv = 0; rv < nRV_; ++rv)
                    ex.add(rlpl_.at(a, b, v, lv, rv, tp, e), P().clv(lv));
        return ex;
    }
    /* cumulative pipeline expansion capacity on an existing arc through t */
    LinExpr ykl_capacity_prefix(int e, int k, int l, int t, double scale) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int ev = 0; ev < nEV_; ++ev) ex.add(ykl_.at(k, l, ev, tp, e), scale * P().capkl(k, l, ev));
        return ex;
    }
    LinExpr ylpl_capacity_prefix(int e, int lp, int l, int t, double scale) const {
        LinExpr ex;
        for (int tp = 0; tp <= t; ++tp)
            for (int ev = 0; ev < nEV_; ++ev)
                ex.add(ylpl_.at(lp, l, ev, tp, e), scale * P().caplpl(lp, l, ev));
        return ex;
    }
    /* vehicle throughput available to one leg: sum over size classes */
    LinExpr fleet_throughput(const detail::VarTable& tab, int p, int i1, int i2, int v, int t,
                             int e) const {
        LinExpr ex;
        for (int c = 0; c < nLCV_; ++c)
            ex.add(tab.at(p, i1, i2, v, c, t, e), P().trc(v, c) * P().tpp);
        return ex;
    }

    // ----- constraints -----------------------------------------------------
    void emit_constraints() {
        emit_build_once();
        emit_refinery_capacity();
        emit_dc_capacity();
        emit_arc_existing();
        emit_arc_new();
        emit_arc_dc();
        emit_vehicles_and_gating();
        emit_field_limits();
        emit_direction_rows();
        emit_demand_and_balance();
        emit_inventory();
        emit_labor();
        emit_region_quota();
    }

    void emit_build_once() {
        // eq6: a candidate DC is built at most once across levels and periods
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t)
                    for (int el = 0; el < nEL_; ++el) ex.add(xl_.at(lc, el, t, e), 1.0);
                row("eq6", {sE(e), sLc(lc)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq7: same for candidate refineries
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t)
                    for (int ek = 0; ek < nEK_; ++ek) ex.add(xk_.at(kc, ek, t, e), 1.0);
                row("eq7", {sE(e), sKc(kc)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq8: one tank bank of each level per candidate DC
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int ez = 0; ez < nEZ_; ++ez) {
                    LinExpr ex;
                    for (int t = 0; t < nT_; ++t) ex.add(z_.at(lc, ez, t, e), 1.0);
                    row("eq8", {sE(e), sLc(lc), sEZ(ez)}, std::move(ex), Sense::LE, 1.0);
                }
        // eq9: tanks only where the bank was installed
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int ez = 0; ez < nEZ_; ++ez)
                        for (int t = 0; t < nT_; ++t) {
                            LinExpr ex;
                            ex.add(n_.at(p, lc, ez, t, e), 1.0);
                            ex.add(z_.at(lc, ez, t, e), -m9(lc, ez));
                            row("eq9", {sE(e), sLc(lc), sP(p), sEZ(ez), sT(t)}, std::move(ex), Sense::LE,
                                0.0);
                        }
        // eq10: each existing refinery is expanded at most once
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t)
                    for (int uk = 0; uk < nUK_; ++uk) ex.add(tk_.at(k, uk, t, e), 1.0);
                row("eq10", {sE(e), sK(k)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq11: each existing DC is expanded at most once per product, jointly
        // over its users
        for (int l = 0; l < nL_; ++l)
            for (int p = 0; p < nP_; ++p) {
                LinExpr ex;
                for (int e : inst_.dc_users[static_cast<std::size_t>(l)])
                    for (int t = 0; t < nT_; ++t)
                        for (int ul = 0; ul < nUL_; ++ul) ex.add(tl_.at(p, l, ul, t, e), 1.0);
                row("eq11", {sL(l), sP(p)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq12 / eq13: pipelines between existing sites expand at most once
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int l : Le_[e]) {
                    LinExpr ex;
                    for (int t = 0; t < nT_; ++t)
                        for (int ev = 0; ev < nEV_; ++ev) ex.add(ykl_.at(k, l, ev, t, e), 1.0);
                    row("eq12", {sE(e), sK(k), sL(l)}, std::move(ex), Sense::LE, 1.0);
                }
        for (int e = 0; e < nE_; ++e)
            for (int lp : Le_[e])
                for (int l : Le_[e]) {
                    if (lp == l) continue;
                    LinExpr ex;
                    for (int t = 0; t < nT_; ++t)
                        for (int ev = 0; ev < nEV_; ++ev) ex.add(ylpl_.at(lp, l, ev, t, e), 1.0);
                    row("eq13", {sE(e), sL(lp), sL(l)}, std::move(ex), Sense::LE, 1.0);
                }
        // eq14: initial storage of a refinery is retired at most once
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t) ex.add(psik_.at(k, t, e), 1.0);
                row("eq14", {sE(e), sK(k)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq15 / eq16: initial DC capacity use stays within one unit, per user
        // and jointly
        for (int e = 0; e < nE_; ++e)
            for (int l : Le_[e])
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex;
                    ex.add(xi_.at(l, t, e), 1.0);
                    row("eq15", {sE(e), sL(l), sT(t)}, std::move(ex), Sense::LE, 1.0);
                }
        for (int l = 0; l < nL_; ++l)
            for (int t = 0; t < nT_; ++t) {
                LinExpr ex;
                for (int e : inst_.dc_users[static_cast<std::size_t>(l)]) ex.add(xi_.at(l, t, e), 1.0);
                row("eq16", {sL(l), sT(t)}, std::move(ex), Sense::LE, 1.0);
            }
        // eq17: a refinery cannot both expand and retire its storage
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t)
                    for (int uk = 0; uk < nUK_; ++uk) ex.add(tk_.at(k, uk, t, e), 1.0);
                for (int t = 0; t < nT_; ++t) ex.add(psik_.at(k, t, e), m17_);
                row("eq17", {sE(e), sK(k)}, std::move(ex), Sense::LE, m17_);
            }
    }

    void emit_refinery_capacity() {
        // eq18: crude processed plus carried stock fits refinery storage
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex;
                    for (int p = 0; p < nP_; ++p)
                        for (int v = 0; v < nV_; ++v)
                            for (int la : Ae_[e])
                                ex.add(qkl_.at(p, k, la, v, t, e), 1.0 - P().mu(p));
                    if (t > 0) ex.add(vk_.at(k, t - 1, e), 1.0);
                    for (int tp = 0; tp <= t; ++tp) ex.add(psik_.at(k, tp, e), P().ick(k));
                    ex += ref_cap_prefix(e, k, t) * -1.0;
                    row("eq18", {sE(e), sK(k), sT(t)}, std::move(ex), Sense::LE, P().ick(k));
                }
        // eq20: production of a built candidate refinery stays between its
        // minimum-use share and its installed capacity
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e])
                for (int t = 0; t < nT_; ++t) {
                    const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                    LinExpr thru;
                    for (int v = 0; v < nV_; ++v)
                        for (int p = 0; p < nP_; ++p)
                            for (int la : Ae_[e]) thru.add(qkl_.at(p, ka, la, v, t, e), 1.0 / P().mu(p));
                    LinExpr lo;
                    for (int tp = 0; tp <= t; ++tp)
                        for (int ek = 0; ek < nEK_; ++ek)
                            lo.add(xk_.at(kc, ek, tp, e), P().min_use_k(kc, ek) * P().nck(kc, ek));
                    lo += thru * -1.0;
                    row("eq20lo", {sE(e), sKc(kc), sT(t)}, std::move(lo), Sense::LE, 0.0);
                    LinExpr hi = thru;
                    for (int tp = 0; tp <= t; ++tp)
                        for (int ek = 0; ek < nEK_; ++ek) hi.add(xk_.at(kc, ek, tp, e), -P().nck(kc, ek));
                    row("eq20hi", {sE(e), sKc(kc), sT(t)}, std::move(hi), Sense::LE, 0.0);
                }
    }

    void emit_dc_capacity() {
        // eq19: stock plus net arrivals at an existing DC fit its capacity,
        // totalled over the DC's users
        for (int l = 0; l < nL_; ++l)
            for (int p = 0; p < nP_; ++p)
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex;
                    for (int e : inst_.dc_users[static_cast<std::size_t>(l)]) {
                        ex += dc_inflow(e, l, p, t, /*existing_sources_only=*/true);
                        ex += ref_inflow(e, l, p, t);
                        ex += dc_outflow(e, l, p, t, /*candidate_dests_only=*/false) * -1.0;
                        ex.add(imp_.at(p, l, t, e), 1.0);
                        if (t > 0) ex.add(vl_.at(p, l, t - 1, e), 1.0);
                        ex.add(xi_.at(l, t, e), -P().icl(p, l));
                        ex += dc_cap_prefix(e, l, p, t) * -1.0;
                    }
                    row("eq19", {sL(l), sP(p), sT(t)}, std::move(ex), Sense::LE, 0.0);
                }
        // eq21: net supply through a built candidate DC stays between its
        // minimum-use share and its installed tank capacity
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t) {
                        const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                        LinExpr net = ref_inflow(e, la, p, t);
                        net.add(imp_.at(p, la, t, e), 1.0);
                        net += dc_inflow(e, la, p, t, /*existing_sources_only=*/false);
                        net += dc_outflow(e, la, p, t, /*candidate_dests_only=*/true) * -1.0;
                        LinExpr lo = tank_cap_prefix(e, lc, p, t, /*min_use=*/true);
                        lo += net * -1.0;
                        row("eq21lo", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(lo), Sense::LE, 0.0);
                        LinExpr hi = net;
                        hi += tank_cap_prefix(e, lc, p, t, /*min_use=*/false) * -1.0;
                        row("eq21hi", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(hi), Sense::LE, 0.0);
                    }
        // eq22: tanks appear only in periods where the DC has been built
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int ez = 0; ez < nEZ_; ++ez) ex.add(n_.at(p, lc, ez, t, e), 1.0);
                        for (int el = 0; el < nEL_; ++el)
                            ex.add(xl_.at(lc, el, t, e), -m22_[static_cast<std::size_t>(lc)]);
                        row("eq22", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(ex), Sense::LE, 0.0);
                    }
        // eq56: installed tank capacity never exceeds the built DC size
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                LinExpr ex;
                for (int t = 0; t < nT_; ++t)
                    for (int ez = 0; ez < nEZ_; ++ez)
                        for (int p = 0; p < nP_; ++p) ex.add(n_.at(p, lc, ez, t, e), P().nct(lc, ez));
                for (int t = 0; t < nT_; ++t)
                    for (int el = 0; el < nEL_; ++el) ex.add(xl_.at(lc, el, t, e), -P().ncl(lc, el));
                row("eq56", {sE(e), sLc(lc)}, std::move(ex), Sense::LE, 0.0);
            }
    }

    void emit_arc_existing() {
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int l : Le_[e]) {
                    const double exist = P().rkl_exist(k, l);
                    // eq23: per-product flow fits vehicles, built routes and
                    // (on pre-existing links) pipeline capacity
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qkl_.at(p, k, l, v, t, e), 1.0);
                                ex += fleet_throughput(nkl_, p, k, l, v, t, e) * -1.0;
                                ex += rkl_capacity_prefix(e, k, l, v, t) * -1.0;
                                ex += ykl_capacity_prefix(e, k, l, t, -exist);
                                row("eq23", {sE(e), sK(k), sL(l), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, exist * P().icapkl(k, l));
                            }
                    // eq24: at most one route decision per arc over time
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rkl_prefix(e, k, l, t, /*pipe_only=*/false);
                        for (int v = 0; v < nV_; ++v) ex.add(rklx_.at(k, l, v, t, e), 1.0);
                        row("eq24", {sE(e), sK(k), sL(l), sT(t)}, std::move(ex), Sense::LE, 1.0);
                    }
                    // eq25: no new route where a pipeline already exists
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rkl_prefix(e, k, l, t, /*pipe_only=*/false);
                        row("eq25", {sE(e), sK(k), sL(l), sT(t)}, std::move(ex), Sense::LE,
                            1.0 - exist);
                    }
                    // eq26: vehicles only on arcs opened for a road mode
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int c = 0; c < nLCV_; ++c)
                                for (int v = 0; v < nV_; ++v) {
                                    LinExpr ex;
                                    ex.add(nkl_.at(p, k, l, v, c, t, e), 1.0);
                                    for (int v2 = 0; v2 < nV_; ++v2)
                                        ex.add(rklx_.at(k, l, v2, t, e), -m_fleet_[static_cast<std::size_t>(c)]);
                                    row("eq26", {sE(e), sK(k), sL(l), sT(t), sP(p), sLCV(c), sV(v)},
                                        std::move(ex), Sense::LE, 0.0);
                                }
                    // eq27: pipeline expansion only on pre-existing links
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int t2 = 0; t2 <= t; ++t2)
                            for (int ev = 0; ev < nEV_; ++ev) ex.add(ykl_.at(k, l, ev, t2, e), 1.0);
                        row("eq27", {sE(e), sK(k), sL(l), sT(t)}, std::move(ex), Sense::LE, exist);
                    }
                    // eq28 / eq29: route spec binaries for the wrong mode stay 0
                    for (int v = 0; v < nV_; ++v) {
                        if (v == pipe_) continue;
                        for (int lv = 0; lv < nLV_; ++lv)
                            for (int rv = 0; rv < nRV_; ++rv)
                                for (int t = 0; t < nT_; ++t) {
                                    LinExpr ex;
                                    ex.add(rkl_.at(k, l, v, lv, rv, t, e), 1.0);
                                    row("eq28", {sE(e), sK(k), sL(l), sV(v), sLV(lv), sRV(rv), sT(t)},
                                        std::move(ex), Sense::EQ, 0.0);
                                }
                    }
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        ex.add(rklx_.at(k, l, pipe_, t, e), 1.0);
                        row("eq29", {sE(e), sK(k), sL(l), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
                }
    }

    void emit_arc_new() {
        for (int e = 0; e < nE_; ++e)
            for (const auto& [ka, la] : newArcs_[e]) {
                // eq30: flow on a new arc fits vehicles plus built routes
                for (int t = 0; t < nT_; ++t)
                    for (int p = 0; p < nP_; ++p)
                        for (int v = 0; v < nV_; ++v) {
                            LinExpr ex;
                            ex.add(qkl_.at(p, ka, la, v, t, e), 1.0);
                            ex += fleet_throughput(nkl_, p, ka, la, v, t, e) * -1.0;
                            ex += rkl_capacity_prefix(e, ka, la, v, t) * -1.0;
                            row("eq30", {sE(e), sKall(ka), sLall(la), sT(t), sP(p), sV(v)}, std::move(ex),
                                Sense::LE, 0.0);
                        }
                // eq31: one route decision per new arc
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex = rkl_prefix(e, ka, la, t, /*pipe_only=*/false);
                    for (int v = 0; v < nV_; ++v) ex.add(rklx_.at(ka, la, v, t, e), 1.0);
                    row("eq31", {sE(e), sKall(ka), sLall(la), sT(t)}, std::move(ex), Sense::LE, 1.0);
                }
                // eq32: vehicles only after the arc opened
                for (int t = 0; t < nT_; ++t)
                    for (int p = 0; p < nP_; ++p)
                        for (int c = 0; c < nLCV_; ++c)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(nkl_.at(p, ka, la, v, c, t, e), 1.0);
                                for (int v2 = 0; v2 < nV_; ++v2)
                                    ex.add(rklx_.at(ka, la, v2, t, e), -m_fleet_[static_cast<std::size_t>(c)]);
                                row("eq32", {sE(e), sKall(ka), sLall(la), sT(t), sP(p), sLCV(c), sV(v)},
                                    std::move(ex), Sense::LE, 0.0);
                            }
                // eq33: route built at most once up to every period
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex = rkl_prefix(e, ka, la, t, /*pipe_only=*/false);
                    row("eq33", {sE(e), sKall(ka), sLall(la), sT(t)}, std::move(ex), Sense::LE, 1.0);
                }
                // eq34 / eq35: wrong-mode specs stay 0 on new arcs too
                for (int v = 0; v < nV_; ++v) {
                    if (v == pipe_) continue;
                    for (int lv = 0; lv < nLV_; ++lv)
                        for (int rv = 0; rv < nRV_; ++rv)
                            for (int t = 0; t < nT_; ++t) {
                                LinExpr ex;
                                ex.add(rkl_.at(ka, la, v, lv, rv, t, e), 1.0);
                                row("eq34", {sE(e), sKall(ka), sLall(la), sV(v), sLV(lv), sRV(rv), sT(t)},
                                    std::move(ex), Sense::EQ, 0.0);
                            }
                }
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex;
                    ex.add(rklx_.at(ka, la, pipe_, t, e), 1.0);
                    row("eq35", {sE(e), sKall(ka), sLall(la), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                }
            }
        // eq36: pipeline flow summed over products fits pipeline capacity
        for (int e = 0; e < nE_; ++e)
            for (const auto& [ka, la] : allArcs_[e])
                for (int t = 0; t < nT_; ++t) {
                    const bool both_existing = ka < nK_ && la < nL_;
                    const double exist = both_existing ? P().rkl_exist(ka, la) : 0.0;
                    LinExpr ex;
                    for (int p = 0; p < nP_; ++p) ex.add(qkl_.at(p, ka, la, pipe_, t, e), 1.0);
                    ex += rkl_capacity_prefix(e, ka, la, pipe_, t) * -1.0;
                    if (both_existing) ex += ykl_capacity_prefix(e, ka, la, t, -exist);
                    row("eq36", {sE(e), sKall(ka), sLall(la), sT(t)}, std::move(ex), Sense::LE,
                        both_existing ? exist * P().icapkl(ka, la) : 0.0);
                }
    }

    void emit_arc_dc() {
        // eq37..41: transfers between existing DCs
        for (int e = 0; e < nE_; ++e)
            for (int lp : Le_[e])
                for (int l : Le_[e]) {
                    if (lp == l) continue;
                    const double exist = P().rlpl_exist(lp, l);
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qlpl_.at(p, lp, l, v, t, e), 1.0);
                                ex += fleet_throughput(nlpl_, p, lp, l, v, t, e) * -1.0;
                                ex += ylpl_capacity_prefix(e, lp, l, t, -exist);
                                ex += rlpl_capacity_prefix(e, lp, l, v, t) * -1.0;
                                row("eq37", {sE(e), sL(lp), sL(l), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, exist * P().icaplpl(lp, l));
                            }
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rlpl_prefix(e, lp, l, t, /*pipe_only=*/false);
                        for (int v = 0; v < nV_; ++v) ex.add(rlplx_.at(lp, l, v, t, e), 1.0);
                        row("eq38", {sE(e), sL(lp), sL(l), sT(t)}, std::move(ex), Sense::LE, 1.0);
                    }
                    {
                        LinExpr ex = rlpl_prefix(e, lp, l, nT_ - 1, /*pipe_only=*/false);
                        row("eq39", {sE(e), sL(lp), sL(l)}, std::move(ex), Sense::LE, 1.0 - exist);
                    }
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int c = 0; c < nLCV_; ++c)
                                for (int v = 0; v < nV_; ++v) {
                                    LinExpr ex;
                                    ex.add(nlpl_.at(p, lp, l, v, c, t, e), 1.0);
                                    for (int v2 = 0; v2 < nV_; ++v2)
                                        ex.add(rlplx_.at(lp, l, v2, t, e), -m_fleet_[static_cast<std::size_t>(c)]);
                                    row("eq40", {sE(e), sL(lp), sL(l), sT(t), sP(p), sLCV(c), sV(v)},
                                        std::move(ex), Sense::LE, 0.0);
                                }
                    {
                        LinExpr ex;
                        for (int t = 0; t < nT_; ++t)
                            for (int ev = 0; ev < nEV_; ++ev) ex.add(ylpl_.at(lp, l, ev, t, e), 1.0);
                        row("eq41", {sE(e), sL(lp), sL(l)}, std::move(ex), Sense::LE, exist);
                    }
                }
        // eq42..48: transfers over every DC pair including candidates
        for (int e = 0; e < nE_; ++e)
            for (int a : Ae_[e])
                for (int b : Ae_[e]) {
                    if (a == b) continue;
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qlpl_.at(p, a, b, v, t, e), 1.0);
                                ex += fleet_throughput(nlpl_, p, a, b, v, t, e) * -1.0;
                                ex += rlpl_capacity_prefix(e, a, b, v, t) * -1.0;
                                row("eq42", {sE(e), sLall(a), sLall(b), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rlpl_prefix(e, a, b, t, /*pipe_only=*/false);
                        for (int v = 0; v < nV_; ++v) ex.add(rlplx_.at(a, b, v, t, e), 1.0);
                        row("eq43", {sE(e), sLall(a), sLall(b), sT(t)}, std::move(ex), Sense::LE, 1.0);
                    }
                    // eq44: transfer route built at most once up to every period
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rlpl_prefix(e, a, b, t, /*pipe_only=*/false);
                        row("eq44", {sE(e), sLall(a), sLall(b), sT(t)}, std::move(ex), Sense::LE,
                            1.0);
                    }
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int c = 0; c < nLCV_; ++c)
                                for (int v = 0; v < nV_; ++v) {
                                    LinExpr ex;
                                    ex.add(nlpl_.at(p, a, b, v, c, t, e), 1.0);
                                    for (int v2 = 0; v2 < nV_; ++v2)
                                        ex.add(rlplx_.at(a, b, v2, t, e), -m_fleet_[static_cast<std::size_t>(c)]);
                                    row("eq45", {sE(e), sLall(a), sLall(b), sT(t), sP(p), sLCV(c), sV(v)},
                                        std::move(ex), Sense::LE, 0.0);
                                }
                    for (int v = 0; v < nV_; ++v) {
                        if (v == pipe_) continue;
                        for (int lv = 0; lv < nLV_; ++lv)
                            for (int rv = 0; rv < nRV_; ++rv)
                                for (int t = 0; t < nT_; ++t) {
                                    LinExpr ex;
                                    ex.add(rlpl_.at(a, b, v, lv, rv, t, e), 1.0);
                                    row("eq46", {sE(e), sLall(a), sLall(b), sV(v), sLV(lv), sRV(rv), sT(t)},
                                        std::move(ex), Sense::EQ, 0.0);
                                }
                    }
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        ex.add(rlplx_.at(a, b, pipe_, t, e), 1.0);
                        row("eq47", {sE(e), sLall(a), sLall(b), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
                    for (int t = 0; t < nT_; ++t) {
                        const bool both_existing = a < nL_ && b < nL_;
                        const double exist = both_existing ? P().rlpl_exist(a, b) : 0.0;
                        LinExpr ex;
                        for (int p = 0; p < nP_; ++p) ex.add(qlpl_.at(p, a, b, pipe_, t, e), 1.0);
                        if (both_existing) ex += ylpl_capacity_prefix(e, a, b, t, -exist);
                        ex += rlpl_capacity_prefix(e, a, b, pipe_, t) * -1.0;
                        row("eq48", {sE(e), sLall(a), sLall(b), sT(t)}, std::move(ex), Sense::LE,
                            both_existing ? exist * P().icaplpl(a, b) : 0.0);
                    }
                }
    }

    void emit_vehicles_and_gating() {
        // eq49: customer deliveries fit the vehicles assigned to the leg
        for (int e = 0; e < nE_; ++e)
            for (int la : Ae_[e])
                for (int m = 0; m < nM_; ++m)
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                if (v == pipe_) continue;
                                LinExpr ex;
                                ex.add(qlm_.at(p, la, m, v, t, e), 1.0);
                                for (int c = 0; c < nLCV_; ++c)
                                    ex.add(nlm_.at(p, la, m, v, c, t, e), -P().trc(v, c) * P().tpp);
                                row("eq49", {sE(e), sLall(la), sM(m), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
        // eq50: the vehicle pool of each size class is shared per stakeholder
        for (int e = 0; e < nE_; ++e)
            for (int t = 0; t < nT_; ++t)
                for (int v = 0; v < nV_; ++v)
                    for (int c = 0; c < nLCV_; ++c) {
                        LinExpr ex;
                        for (const auto& [ka, la] : allArcs_[e])
                            for (int p = 0; p < nP_; ++p) ex.add(nkl_.at(p, ka, la, v, c, t, e), 1.0);
                        for (int a : Ae_[e])
                            for (int b : Ae_[e]) {
                                if (a == b) continue;
                                for (int p = 0; p < nP_; ++p) ex.add(nlpl_.at(p, a, b, v, c, t, e), 1.0);
                            }
                        if (v != pipe_)
                            for (int la : Ae_[e])
                                for (int p = 0; p < nP_; ++p)
                                    for (int m = 0; m < nM_; ++m) ex.add(nlm_.at(p, la, m, v, c, t, e), 1.0);
                        row("eq50", {sE(e), sT(t), sV(v), sLCV(c)}, std::move(ex), Sense::LE, P().nmax(c));
                    }
        // eq51/eq52: flow touching a candidate site needs the site built
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int ka : Kalle_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qkl_.at(p, ka, la, v, t, e), 1.0);
                                ex += xl_prefix(e, lc, t, -m_flow_);
                                row("eq51", {sE(e), sLc(lc), sKall(ka), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
            }
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e]) {
                const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                for (int la : Ae_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qkl_.at(p, ka, la, v, t, e), 1.0);
                                ex += xk_prefix(e, kc, t, -m_flow_);
                                row("eq52", {sE(e), sKc(kc), sLall(la), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
            }
        // eq53..55: customer and transfer flow out of / into a candidate DC
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int m = 0; m < nM_; ++m)
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                if (v == pipe_) continue;
                                LinExpr ex;
                                ex.add(qlm_.at(p, la, m, v, t, e), 1.0);
                                ex += xl_prefix(e, lc, t, -m_flow_);
                                row("eq53", {sE(e), sLc(lc), sM(m), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
                for (int lpc : Lce_[e]) {
                    if (lpc == lc) continue;
                    const int lpa = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qlpl_.at(p, lpa, la, v, t, e), 1.0);
                                ex += xl_prefix(e, lc, t, -m_flow_);
                                row("eq54", {sE(e), sLc(lc), sLc(lpc), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
                }
                for (int lp : Le_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) {
                                LinExpr ex;
                                ex.add(qlpl_.at(p, lp, la, v, t, e), 1.0);
                                ex += xl_prefix(e, lc, t, -m_flow_);
                                row("eq55", {sE(e), sLc(lc), sL(lp), sT(t), sP(p), sV(v)}, std::move(ex),
                                    Sense::LE, 0.0);
                            }
            }
        // eq57/eq58: pipeline specs to/from candidate sites need the builds
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e]) {
                const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                for (int la : Ae_[e])
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rkl_prefix(e, ka, la, t, /*pipe_only=*/true);
                        ex += xk_prefix(e, kc, t, -1.0);
                        row("eq57", {sE(e), sKc(kc), sLall(la), sT(t)}, std::move(ex), Sense::LE, 0.0);
                    }
                for (int lc : Lce_[e]) {
                    const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rkl_prefix(e, ka, la, t, /*pipe_only=*/true);
                        ex += xl_prefix(e, lc, nT_ - 1, -1.0);
                        row("eq58", {sE(e), sKc(kc), sLc(lc), sT(t)}, std::move(ex), Sense::LE, 0.0);
                    }
                }
            }
        // eq59/eq60: transfer pipelines into a candidate DC need its build
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int lp : Le_[e])
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rlpl_prefix(e, lp, la, t, /*pipe_only=*/true);
                        ex += xl_prefix(e, lc, nT_ - 1, -1.0);
                        row("eq59", {sE(e), sLc(lc), sL(lp), sT(t)}, std::move(ex), Sense::LE, 0.0);
                    }
                for (int lpc : Lce_[e]) {
                    if (lpc == lc) continue;
                    const int lpa = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = rlpl_prefix(e, lpa, la, t, /*pipe_only=*/true);
                        ex += xl_prefix(e, lc, nT_ - 1, -1.0);
                        row("eq60", {sE(e), sLc(lc), sLc(lpc), sT(t)}, std::move(ex), Sense::LE, 0.0);
                    }
                }
            }
    }

    void emit_field_limits() {
        // eq61: total crude drawn stays within each field's output
        for (int i = 0; i < nI_; ++i)
            for (int t = 0; t < nT_; ++t) {
                LinExpr ex;
                for (int e = 0; e < nE_; ++e)
                    for (const auto& [ka, la] : allArcs_[e])
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v) ex.add(qkl_.at(p, ka, la, v, t, e), 1.0 / P().mu(p));
                row("eq61", {sI(i), sT(t)}, std::move(ex), Sense::LE, P().field_cap(i));
            }
    }

    void emit_direction_rows() {
        // eq62/63/65/66/67: each transfer needs its direction selector; the
        // source formulation states the same gate five times, once per tag
        for (const char* tag : {"eq62", "eq63", "eq65", "eq66", "eq67"})
            for (int e = 0; e < nE_; ++e)
                for (int lp : Le_[e])
                    for (int l : Le_[e]) {
                        if (lp == l) continue;
                        for (int p = 0; p < nP_; ++p)
                            for (int v = 0; v < nV_; ++v)
                                for (int t = 0; t < nT_; ++t) {
                                    LinExpr ex;
                                    ex.add(qlpl_.at(p, lp, l, v, t, e), 1.0);
                                    ex.add(s_.at(lp, l, t, e), -m_flow_);
                                    row(tag, {sE(e), sL(lp), sL(l), sP(p), sV(v), sT(t)}, std::move(ex),
                                        Sense::LE, 0.0);
                                }
                    }
        // eq64: opposite directions are mutually exclusive
        for (int e = 0; e < nE_; ++e) {
            const auto& ls = Le_[e];
            for (std::size_t i = 0; i < ls.size(); ++i)
                for (std::size_t j = i + 1; j < ls.size(); ++j)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        ex.add(s_.at(ls[i], ls[j], t, e), 1.0);
                        ex.add(s_.at(ls[j], ls[i], t, e), 1.0);
                        row("eq64", {sE(e), sL(ls[i]), sL(ls[j]), sT(t)}, std::move(ex), Sense::LE, 1.0);
                    }
        }
        // eq68: no directed 3-cycles among existing DCs, both orientations
        for (int e = 0; e < nE_; ++e) {
            const auto& ls = Le_[e];
            for (std::size_t i = 0; i < ls.size(); ++i)
                for (std::size_t j = i + 1; j < ls.size(); ++j)
                    for (std::size_t k = j + 1; k < ls.size(); ++k)
                        for (int t = 0; t < nT_; ++t) {
                            const int a = ls[i], b = ls[j], c = ls[k];
                            LinExpr fwd;
                            fwd.add(s_.at(a, b, t, e), 1.0);
                            fwd.add(s_.at(b, c, t, e), 1.0);
                            fwd.add(s_.at(c, a, t, e), 1.0);
                            row("eq68", {sE(e), sL(a), sL(b), sL(c), sT(t), "o1"}, std::move(fwd), Sense::LE,
                                1.0);
                            LinExpr rev;
                            rev.add(s_.at(a, c, t, e), 1.0);
                            rev.add(s_.at(c, b, t, e), 1.0);
                            rev.add(s_.at(b, a, t, e), 1.0);
                            row("eq68", {sE(e), sL(a), sL(b), sL(c), sT(t), "o2"}, std::move(rev), Sense::LE,
                                1.0);
                        }
        }
    }

    void emit_demand_and_balance() {
        // eq69: market demand per customer is met
        for (int p = 0; p < nP_; ++p)
            for (int t = 0; t < nT_; ++t)
                for (int m = 0; m < nM_; ++m) {
                    LinExpr ex;
                    for (int e = 0; e < nE_; ++e)
                        for (int la : Ae_[e])
                            for (int v = 0; v < nV_; ++v) {
                                if (v == pipe_) continue;
                                ex.add(qlm_.at(p, la, m, v, t, e), 1.0);
                            }
                    row("eq69", {sP(p), sT(t), sM(m)}, std::move(ex), Sense::GE, P().demand(p, m, t));
                }
        // eq70: each stakeholder covers its own committed demand
        for (int p = 0; p < nP_; ++p)
            for (int t = 0; t < nT_; ++t)
                for (int e = 0; e < nE_; ++e) {
                    LinExpr ex;
                    for (int la : Ae_[e])
                        for (int v = 0; v < nV_; ++v) {
                            if (v == pipe_) continue;
                            for (int m = 0; m < nM_; ++m) ex.add(qlm_.at(p, la, m, v, t, e), 1.0);
                        }
                    row("eq70", {sP(p), sT(t), sE(e)}, std::move(ex), Sense::GE,
                        P().stakeholder_demand(p, t, e));
                }
        // eq71: product balance at candidate DCs
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = dc_inflow(e, la, p, t, /*existing_sources_only=*/false);
                        ex += dc_outflow(e, la, p, t, /*candidate_dests_only=*/true) * -1.0;
                        ex += ref_inflow(e, la, p, t);
                        if (t > 0) ex.add(vl_.at(p, la, t - 1, e), 1.0);
                        ex.add(imp_.at(p, la, t, e), 1.0);
                        ex += customer_outflow(e, la, p, t) * -1.0;
                        ex.add(ep_.at(p, la, t, e), -1.0);
                        ex.add(vl_.at(p, la, t, e), -1.0);
                        row("eq71", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
            }
        // eq72: product balance at existing DCs
        for (int e = 0; e < nE_; ++e)
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex = dc_inflow(e, l, p, t, /*existing_sources_only=*/true);
                        ex += dc_outflow(e, l, p, t, /*candidate_dests_only=*/false) * -1.0;
                        ex += ref_inflow(e, l, p, t);
                        if (t > 0) ex.add(vl_.at(p, l, t - 1, e), 1.0);
                        ex.add(imp_.at(p, l, t, e), 1.0);
                        ex += customer_outflow(e, l, p, t) * -1.0;
                        ex.add(ep_.at(p, l, t, e), -1.0);
                        ex.add(vl_.at(p, l, t, e), -1.0);
                        row("eq72", {sE(e), sL(l), sP(p), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
    }

    void emit_inventory() {
        // eq73/eq77: refinery stock within storage, above the minimum fill
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int t = 0; t < nT_; ++t) {
                    LinExpr up;
                    up.add(vk_.at(k, t, e), 1.0);
                    for (int tp = 0; tp <= t; ++tp) up.add(psik_.at(k, tp, e), P().ick(k));
                    up += ref_cap_prefix(e, k, t) * -1.0;
                    row("eq73", {sE(e), sK(k), sT(t)}, std::move(up), Sense::LE, P().ick(k));
                    const double fill = P().lk(k);
                    LinExpr lo = ref_cap_prefix(e, k, t) * fill;
                    for (int tp = 0; tp <= t; ++tp) lo.add(psik_.at(k, tp, e), -fill * P().ick(k));
                    lo.add(vk_.at(k, t, e), -1.0);
                    row("eq77", {sE(e), sK(k), sT(t)}, std::move(lo), Sense::LE, -fill * P().ick(k));
                }
        // eq74/eq78: existing-DC stock within capacity, above the minimum
        for (int l = 0; l < nL_; ++l)
            for (int p = 0; p < nP_; ++p)
                for (int t = 0; t < nT_; ++t) {
                    LinExpr up;
                    for (int e : inst_.dc_users[static_cast<std::size_t>(l)]) {
                        up.add(vl_.at(p, l, t, e), 1.0);
                        up.add(xi_.at(l, t, e), -P().icl(p, l));
                        up += dc_cap_prefix(e, l, p, t) * -1.0;
                    }
                    row("eq74", {sL(l), sP(p), sT(t)}, std::move(up), Sense::LE, 0.0);
                    const double fill = P().ll(l);
                    LinExpr lo;
                    for (int e : inst_.dc_users[static_cast<std::size_t>(l)]) {
                        lo.add(xi_.at(l, t, e), fill * P().icl(p, l));
                        lo += dc_cap_prefix(e, l, p, t) * fill;
                        lo.add(vl_.at(p, l, t, e), -1.0);
                    }
                    row("eq78", {sL(l), sP(p), sT(t)}, std::move(lo), Sense::LE, 0.0);
                }
        // eq75/eq79: candidate refinery stock within built capacity
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e]) {
                const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                for (int t = 0; t < nT_; ++t) {
                    LinExpr up;
                    up.add(vk_.at(ka, t, e), 1.0);
                    for (int tp = 0; tp <= t; ++tp)
                        for (int ek = 0; ek < nEK_; ++ek) up.add(xk_.at(kc, ek, tp, e), -P().nck(kc, ek));
                    row("eq75", {sE(e), sKc(kc), sT(t)}, std::move(up), Sense::LE, 0.0);
                    const double fill = P().lk(ka);
                    LinExpr lo;
                    for (int tp = 0; tp <= t; ++tp)
                        for (int ek = 0; ek < nEK_; ++ek)
                            lo.add(xk_.at(kc, ek, tp, e), fill * P().nck(kc, ek));
                    lo.add(vk_.at(ka, t, e), -1.0);
                    row("eq79", {sE(e), sKc(kc), sT(t)}, std::move(lo), Sense::LE, 0.0);
                }
            }
        // eq76/eq80: candidate DC stock within installed tanks
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int p = 0; p < nP_; ++p)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr up;
                        up.add(vl_.at(p, la, t, e), 1.0);
                        up += tank_cap_prefix(e, lc, p, t, /*min_use=*/false) * -1.0;
                        row("eq76", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(up), Sense::LE, 0.0);
                        const double fill = P().ll(la);
                        LinExpr lo = tank_cap_prefix(e, lc, p, t, /*min_use=*/false) * fill;
                        lo.add(vl_.at(p, la, t, e), -1.0);
                        row("eq80", {sE(e), sLc(lc), sP(p), sT(t)}, std::move(lo), Sense::LE, 0.0);
                    }
            }
    }

    void emit_labor() {
        const bool weighted = opts_.labor_weight == LaborWeight::AsPrinted;
        // eq81/eq82: recruits come from the evolving regional pool
        for (int en = 0; en < nEN_; ++en)
            for (int lev = 0; lev < nLEV_; ++lev)
                for (int t = 0; t < nT_; ++t) {
                    LinExpr cap;
                    cap.add(rlab_.at(en, lev, t), 1.0);
                    cap.add(alab_.at(en, lev, t), -1.0);
                    row("eq81", {sEN(en), sLEV(lev), sT(t)}, std::move(cap), Sense::LE, 0.0);
                    LinExpr bal;
                    bal.add(alab_.at(en, lev, t), 1.0);
                    if (t > 0) {
                        bal.add(alab_.at(en, lev, t - 1), -1.0);
                        bal.add(rlab_.at(en, lev, t - 1), 1.0);
                    }
                    row("eq82", {sEN(en), sLEV(lev), sT(t)}, std::move(bal), Sense::EQ,
                        P().nlab(en, lev, t));
                }
        // eq83: recruits from a region equal hires drawn from it
        for (int en = 0; en < nEN_; ++en)
            for (int lev = 0; lev < nLEV_; ++lev)
                for (int t = 0; t < nT_; ++t) {
                    LinExpr ex;
                    for (int en2 = 0; en2 < nEN_; ++en2) {
                        for (int kc = 0; kc < nKc_; ++kc) ex.add(henk_.at(en, kc, en2, lev, t), 1.0);
                        for (int k = 0; k < nK_; ++k) ex.add(heek_.at(en, k, en2, lev, t), 1.0);
                        for (int lc = 0; lc < nLc_; ++lc) ex.add(henl_.at(en, lc, en2, lev, t), 1.0);
                        for (int l = 0; l < nL_; ++l) ex.add(heel_.at(en, l, en2, lev, t), 1.0);
                    }
                    ex.add(rlab_.at(en, lev, t), -1.0);
                    row("eq83", {sEN(en), sLEV(lev), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                }
        // eq84..87: workforce demand of each decision equals its hires
        for (int e = 0; e < nE_; ++e)
            for (int kc : Kce_[e])
                for (int lev = 0; lev < nLEV_; ++lev)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int ek = 0; ek < nEK_; ++ek)
                            ex.add(xk_.at(kc, ek, t, e), P().nck(kc, ek) * P().wnk(lev));
                        for (int en = 0; en < nEN_; ++en)
                            for (int en2 = 0; en2 < nEN_; ++en2)
                                ex.add(henk_.at(en, kc, en2, lev, t), -P().region_new_ref(en, kc));
                        row("eq84", {sE(e), sKc(kc), sLEV(lev), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
        for (int e = 0; e < nE_; ++e)
            for (int k : Ke_[e])
                for (int lev = 0; lev < nLEV_; ++lev)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int uk = 0; uk < nUK_; ++uk)
                            ex.add(tk_.at(k, uk, t, e), P().capk(k, uk) * P().wek(lev));
                        for (int en = 0; en < nEN_; ++en)
                            for (int en2 = 0; en2 < nEN_; ++en2)
                                ex.add(heek_.at(en, k, en2, lev, t), -P().region_ref(en, k));
                        row("eq85", {sE(e), sK(k), sLEV(lev), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
        for (int e = 0; e < nE_; ++e)
            for (int lc : Lce_[e])
                for (int lev = 0; lev < nLEV_; ++lev)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int el = 0; el < nEL_; ++el)
                            ex.add(xl_.at(lc, el, t, e), P().ncl(lc, el) * P().wnl(lev));
                        for (int en = 0; en < nEN_; ++en)
                            for (int en2 = 0; en2 < nEN_; ++en2) {
                                const double w = weighted ? P().labor_transfer(en, en2) : 1.0;
                                ex.add(henl_.at(en, lc, en2, lev, t), -P().region_new_dc(en, lc) * w);
                            }
                        row("eq86", {sE(e), sLc(lc), sLEV(lev), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
        for (int e = 0; e < nE_; ++e)
            for (int l : Le_[e])
                for (int lev = 0; lev < nLEV_; ++lev)
                    for (int t = 0; t < nT_; ++t) {
                        LinExpr ex;
                        for (int ul = 0; ul < nUL_; ++ul)
                            for (int p = 0; p < nP_; ++p)
                                ex.add(tl_.at(p, l, ul, t, e), P().capl(l, ul) * P().wel(lev));
                        for (int en = 0; en < nEN_; ++en)
                            for (int en2 = 0; en2 < nEN_; ++en2)
                                ex.add(heel_.at(en, l, en2, lev, t), -P().region_dc(en, l));
                        row("eq87", {sE(e), sL(l), sLEV(lev), sT(t)}, std::move(ex), Sense::EQ, 0.0);
                    }
    }

    void emit_region_quota() {
        // eq88: developments per region stay within the regional allowance
        for (int en = 0; en < nEN_; ++en) {
            LinExpr ex;
            for (int e = 0; e < nE_; ++e) {
                for (int kc : Kce_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int ek = 0; ek < nEK_; ++ek)
                            ex.add(xk_.at(kc, ek, t, e), P().region_new_ref(en, kc));
                for (int k : Ke_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int uk = 0; uk < nUK_; ++uk)
                            ex.add(tk_.at(k, uk, t, e), P().region_ref(en, k));
                for (int lc : Lce_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int el = 0; el < nEL_; ++el)
                            ex.add(xl_.at(lc, el, t, e), P().region_new_dc(en, lc));
                for (int l : Le_[e])
                    for (int t = 0; t < nT_; ++t)
                        for (int ul = 0; ul < nUL_; ++ul)
                            for (int p = 0; p < nP_; ++p)
                                ex.add(tl_.at(p, l, ul, t, e), P().nr(en) * P().region_dc(en, l));
            }
            row("eq88", {sEN(en)}, std::move(ex), Sense::LE, P().maxnum(en) - P().nd(en));
        }
    }

    // ----- objectives ------------------------------------------------------
    LinExpr revenue_expr(int e) const {
        LinExpr rf;
        for (int t = 0; t < nT_; ++t)
            for (int p = 0; p < nP_; ++p)
                for (int la : Ae_[e]) {
                    for (int m = 0; m < nM_; ++m)
                        for (int v = 0; v < nV_; ++v) {
                            if (v == pipe_) continue;
                            rf.add(qlm_.at(p, la, m, v, t, e), P().price(e, p, t));
                        }
                    rf.add(ep_.at(p, la, t, e), P().export_price(p, t, e));
                }
        return rf;
    }

    LinExpr cost_expr(int e) const {
        LinExpr cf;
        // construction and expansion decisions
        for (int t = 0; t < nT_; ++t) {
            for (int kc : Kce_[e])
                for (int ek = 0; ek < nEK_; ++ek) cf.add(xk_.at(kc, ek, t, e), P().xcostk(kc, ek, t));
            for (int lc : Lce_[e])
                for (int el = 0; el < nEL_; ++el) cf.add(xl_.at(lc, el, t, e), P().xcostl(lc, el, t));
            for (int k : Ke_[e])
                for (int uk = 0; uk < nUK_; ++uk) cf.add(tk_.at(k, uk, t, e), P().ucostk(k, uk, t));
            for (int l : Le_[e])
                for (int ul = 0; ul < nUL_; ++ul)
                    for (int p = 0; p < nP_; ++p) cf.add(tl_.at(p, l, ul, t, e), P().ucostl(l, ul, p, t));
            for (int k : Ke_[e]) cf.add(psik_.at(k, t, e), P().clcostk(k, t));
        }
        // pipeline construction and expansion
        for (int t = 0; t < nT_; ++t)
            for (int lv = 0; lv < nLV_; ++lv)
                for (int rv = 0; rv < nRV_; ++rv) {
                    for (const auto& [ka, la] : allArcs_[e])
                        cf.add(rkl_.at(ka, la, pipe_, lv, rv, t, e), P().rcostkl(ka, la, lv, rv, t));
                    for (int lp : Le_[e])
                        for (int la : Ae_[e]) {
                            if (la == lp) continue;
                            cf.add(rlpl_.at(lp, la, pipe_, lv, rv, t, e), P().rcostlpl(lp, la, lv, rv, t));
                        }
                    for (int lpc : Lce_[e])
                        for (int lc : Lce_[e]) {
                            if (lpc == lc) continue;
                            const int a = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                            const int b = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                            cf.add(rlpl_.at(a, b, pipe_, lv, rv, t, e), P().rcostlpl(a, b, lv, rv, t));
                        }
                }
        for (int t = 0; t < nT_; ++t) {
            for (int k : Ke_[e])
                for (int l : Le_[e])
                    for (int ev = 0; ev < nEV_; ++ev) cf.add(ykl_.at(k, l, ev, t, e), P().ycostkl(k, l, ev, t));
            for (int lp : Le_[e])
                for (int l : Le_[e]) {
                    if (lp == l) continue;
                    for (int ev = 0; ev < nEV_; ++ev)
                        cf.add(ylpl_.at(lp, l, ev, t, e), P().ycostlpl(lp, l, ev, t));
                }
            for (int lc : Lce_[e])
                for (int ez = 0; ez < nEZ_; ++ez)
                    for (int p = 0; p < nP_; ++p) cf.add(n_.at(p, lc, ez, t, e), P().tank_cost(lc, ez, t));
        }
        // fixed charges on held capacity
        for (int t = 0; t < nT_; ++t) {
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p) {
                    cf.add(xi_.at(l, t, e), P().fcostl(l, t) * P().icl(p, l));
                    for (int ul = 0; ul < nUL_; ++ul)
                        cf.add(tl_.at(p, l, ul, t, e), P().fcostl(l, t) * P().capl(l, ul));
                }
            for (int k : Ke_[e]) {
                cf.add_constant(P().fcostk(k, t) * P().ick(k));
                for (int tp = 0; tp <= t; ++tp)
                    cf.add(psik_.at(k, tp, e), -P().fcostk(k, t) * P().ick(k));
                for (int uk = 0; uk < nUK_; ++uk)
                    cf.add(tk_.at(k, uk, t, e), P().fcostk(k, t) * P().capk(k, uk));
            }
            for (int kc : Kce_[e]) {
                const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                for (int ek = 0; ek < nEK_; ++ek)
                    cf.add(xk_.at(kc, ek, t, e), P().fcostk(ka, t) * P().nck(kc, ek));
            }
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int ez = 0; ez < nEZ_; ++ez)
                    for (int p = 0; p < nP_; ++p)
                        cf.add(n_.at(p, lc, ez, t, e), P().fcostl(la, t) * P().nct(lc, ez));
            }
        }
        // throughput handling at DCs
        for (int t = 0; t < nT_; ++t) {
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p) {
                    LinExpr moved = ref_inflow(e, l, p, t);
                    moved += dc_inflow(e, l, p, t, /*existing_sources_only=*/true);
                    moved += dc_outflow(e, l, p, t, /*candidate_dests_only=*/false) * -1.0;
                    cf += moved * P().pcostl(p, l, t);
                }
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int p = 0; p < nP_; ++p) {
                    LinExpr moved = ref_inflow(e, la, p, t);
                    moved += dc_inflow(e, la, p, t, /*existing_sources_only=*/false);
                    moved += dc_outflow(e, la, p, t, /*candidate_dests_only=*/true) * -1.0;
                    cf += moved * P().pcostl(p, la, t);
                }
            }
        }
        // inventory carrying
        for (int t = 0; t < nT_; ++t) {
            for (int ka : Kalle_[e]) cf.add(vk_.at(ka, t, e), P().crude_price(t) * P().hcostk(ka));
            for (int p = 0; p < nP_; ++p)
                for (int la : Ae_[e])
                    cf.add(vl_.at(p, la, t, e), P().price(e, p, t) * P().hcostl(p, la));
        }
        // transport: pipeline tariffs, then vehicle fleets
        for (int t = 0; t < nT_; ++t) {
            for (const auto& [ka, la] : allArcs_[e])
                for (int v = 0; v < nV_; ++v)
                    for (int p = 0; p < nP_; ++p) cf.add(qkl_.at(p, ka, la, v, t, e), P().qcostkl(ka, la, t));
            for (int p = 0; p < nP_; ++p) {
                for (int lp : Le_[e])
                    for (int la : Ae_[e]) {
                        if (la == lp) continue;
                        for (int v = 0; v < nV_; ++v)
                            cf.add(qlpl_.at(p, lp, la, v, t, e), P().qcostlpl(lp, la, t));
                    }
                for (int lpc : Lce_[e])
                    for (int lc : Lce_[e]) {
                        if (lpc == lc) continue;
                        const int a = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                        const int b = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                        for (int v = 0; v < nV_; ++v)
                            cf.add(qlpl_.at(p, a, b, v, t, e), P().qcostlpl(a, b, t));
                    }
            }
            for (int v = 0; v < nV_; ++v)
                for (const auto& [ka, la] : allArcs_[e])
                    for (int c = 0; c < nLCV_; ++c)
                        for (int p = 0; p < nP_; ++p)
                            cf.add(nkl_.at(p, ka, la, v, c, t, e), P().ncostkl(ka, la, v, c, t));
            for (int v = 0; v < nV_; ++v) {
                if (v == pipe_) continue;
                for (int la : Ae_[e])
                    for (int m = 0; m < nM_; ++m)
                        for (int p = 0; p < nP_; ++p)
                            for (int c = 0; c < nLCV_; ++c)
                                cf.add(nlm_.at(p, la, m, v, c, t, e), P().ncostlm(la, m, v, c, t));
            }
            for (int v = 0; v < nV_; ++v)
                for (int a : Ae_[e])
                    for (int b : Ae_[e]) {
                        if (a == b) continue;
                        for (int c = 0; c < nLCV_; ++c)
                            for (int p = 0; p < nP_; ++p)
                                cf.add(nlpl_.at(p, a, b, v, c, t, e), P().ncostlpl(b, a, v, c, t));
                    }
        }
        // imports and wages
        for (int t = 0; t < nT_; ++t)
            for (int p = 0; p < nP_; ++p)
                for (int la : Ae_[e]) cf.add(imp_.at(p, la, t, e), P().icost(p, t));
        for (int t = 0; t < nT_; ++t)
            for (int lev = 0; lev < nLEV_; ++lev) {
                const double w = P().wcost(lev, t);
                for (int en = 0; en < nEN_; ++en)
                    for (int en2 = 0; en2 < nEN_; ++en2) {
                        for (int kc : Kce_[e]) cf.add(henk_.at(en, kc, en2, lev, t), w);
                        for (int k : Ke_[e]) cf.add(heek_.at(en, k, en2, lev, t), w);
                        for (int lc : Lce_[e]) cf.add(henl_.at(en, lc, en2, lev, t), w);
                        for (int l : Le_[e]) cf.add(heel_.at(en, l, en2, lev, t), w);
                    }
            }
        return cf;
    }

    /* Regrouped assembly of the cost terms, bucketed for reporting.  Kept
     * deliberately separate from cost_expr: a term dropped (or counted twice)
     * in either routine breaks the sum identity the tests pin down. */
    std::map<std::string, LinExpr> cost_categories_impl(int e) const {
        std::map<std::string, LinExpr> cat;
        for (const char* key : kCostCategories) cat[key];

        LinExpr& install = cat["facility_install"];
        for (int t = 0; t < nT_; ++t) {
            for (int kc : Kce_[e])
                for (int ek = 0; ek < nEK_; ++ek)
                    install.add(xk_.at(kc, ek, t, e), P().xcostk(kc, ek, t));
            for (int lc : Lce_[e])
                for (int el = 0; el < nEL_; ++el)
                    install.add(xl_.at(lc, el, t, e), P().xcostl(lc, el, t));
        }

        LinExpr& expand = cat["facility_expand"];
        for (int t = 0; t < nT_; ++t) {
            for (int k : Ke_[e])
                for (int uk = 0; uk < nUK_; ++uk)
                    expand.add(tk_.at(k, uk, t, e), P().ucostk(k, uk, t));
            for (int l : Le_[e])
                for (int ul = 0; ul < nUL_; ++ul)
                    for (int p = 0; p < nP_; ++p)
                        expand.add(tl_.at(p, l, ul, t, e), P().ucostl(l, ul, p, t));
        }

        LinExpr& close = cat["closedown"];
        for (int t = 0; t < nT_; ++t)
            for (int k : Ke_[e]) close.add(psik_.at(k, t, e), P().clcostk(k, t));

        LinExpr& pinstall = cat["pipeline_install"];
        for (int t = 0; t < nT_; ++t)
            for (int lv = 0; lv < nLV_; ++lv)
                for (int rv = 0; rv < nRV_; ++rv) {
                    for (const auto& [ka, la] : allArcs_[e])
                        pinstall.add(rkl_.at(ka, la, pipe_, lv, rv, t, e),
                                     P().rcostkl(ka, la, lv, rv, t));
                    for (int lp : Le_[e])
                        for (int la : Ae_[e]) {
                            if (la == lp) continue;
                            pinstall.add(rlpl_.at(lp, la, pipe_, lv, rv, t, e),
                                         P().rcostlpl(lp, la, lv, rv, t));
                        }
                    for (int lpc : Lce_[e])
                        for (int lc : Lce_[e]) {
                            if (lpc == lc) continue;
                            const int a = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                            const int b = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                            pinstall.add(rlpl_.at(a, b, pipe_, lv, rv, t, e),
                                         P().rcostlpl(a, b, lv, rv, t));
                        }
                }

        LinExpr& pexpand = cat["pipeline_expand"];
        for (int t = 0; t < nT_; ++t)
            for (int ev = 0; ev < nEV_; ++ev) {
                for (int k : Ke_[e])
                    for (int l : Le_[e]) pexpand.add(ykl_.at(k, l, ev, t, e), P().ycostkl(k, l, ev, t));
                for (int lp : Le_[e])
                    for (int l : Le_[e]) {
                        if (lp == l) continue;
                        pexpand.add(ylpl_.at(lp, l, ev, t, e), P().ycostlpl(lp, l, ev, t));
                    }
            }

        LinExpr& tanks = cat["tank_install"];
        for (int t = 0; t < nT_; ++t)
            for (int lc : Lce_[e])
                for (int ez = 0; ez < nEZ_; ++ez)
                    for (int p = 0; p < nP_; ++p)
                        tanks.add(n_.at(p, lc, ez, t, e), P().tank_cost(lc, ez, t));

        LinExpr& fixed = cat["fixed"];
        for (int t = 0; t < nT_; ++t) {
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p) {
                    fixed.add(xi_.at(l, t, e), P().fcostl(l, t) * P().icl(p, l));
                    for (int ul = 0; ul < nUL_; ++ul)
                        fixed.add(tl_.at(p, l, ul, t, e), P().fcostl(l, t) * P().capl(l, ul));
                }
            for (int k : Ke_[e]) {
                fixed.add_constant(P().fcostk(k, t) * P().ick(k));
                for (int tp = 0; tp <= t; ++tp)
                    fixed.add(psik_.at(k, tp, e), -P().fcostk(k, t) * P().ick(k));
                for (int uk = 0; uk < nUK_; ++uk)
                    fixed.add(tk_.at(k, uk, t, e), P().fcostk(k, t) * P().capk(k, uk));
            }
            for (int kc : Kce_[e]) {
                const int ka = static_cast<int>(inst_.kall_c(static_cast<std::size_t>(kc)));
                for (int ek = 0; ek < nEK_; ++ek)
                    fixed.add(xk_.at(kc, ek, t, e), P().fcostk(ka, t) * P().nck(kc, ek));
            }
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int ez = 0; ez < nEZ_; ++ez)
                    for (int p = 0; p < nP_; ++p)
                        fixed.add(n_.at(p, lc, ez, t, e), P().fcostl(la, t) * P().nct(lc, ez));
            }
        }

        LinExpr& var = cat["variable"];
        for (int t = 0; t < nT_; ++t) {
            for (int l : Le_[e])
                for (int p = 0; p < nP_; ++p) {
                    LinExpr moved = ref_inflow(e, l, p, t);
                    moved += dc_inflow(e, l, p, t, /*existing_sources_only=*/true);
                    moved += dc_outflow(e, l, p, t, /*candidate_dests_only=*/false) * -1.0;
                    var += moved * P().pcostl(p, l, t);
                }
            for (int lc : Lce_[e]) {
                const int la = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                for (int p = 0; p < nP_; ++p) {
                    LinExpr moved = ref_inflow(e, la, p, t);
                    moved += dc_inflow(e, la, p, t, /*existing_sources_only=*/false);
                    moved += dc_outflow(e, la, p, t, /*candidate_dests_only=*/true) * -1.0;
                    var += moved * P().pcostl(p, la, t);
                }
            }
        }

        LinExpr& inv = cat["inventory"];
        for (int t = 0; t < nT_; ++t) {
            for (int ka : Kalle_[e]) inv.add(vk_.at(ka, t, e), P().crude_price(t) * P().hcostk(ka));
            for (int p = 0; p < nP_; ++p)
                for (int la : Ae_[e])
                    inv.add(vl_.at(p, la, t, e), P().price(e, p, t) * P().hcostl(p, la));
        }

        LinExpr& trans = cat["transport"];
        for (int t = 0; t < nT_; ++t) {
            for (const auto& [ka, la] : allArcs_[e])
                for (int v = 0; v < nV_; ++v)
                    for (int p = 0; p < nP_; ++p)
                        trans.add(qkl_.at(p, ka, la, v, t, e), P().qcostkl(ka, la, t));
            for (int p = 0; p < nP_; ++p) {
                for (int lp : Le_[e])
                    for (int la : Ae_[e]) {
                        if (la == lp) continue;
                        for (int v = 0; v < nV_; ++v)
                            trans.add(qlpl_.at(p, lp, la, v, t, e), P().qcostlpl(lp, la, t));
                    }
                for (int lpc : Lce_[e])
                    for (int lc : Lce_[e]) {
                        if (lpc == lc) continue;
                        const int a = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lpc)));
                        const int b = static_cast<int>(inst_.lall_c(static_cast<std::size_t>(lc)));
                        for (int v = 0; v < nV_; ++v)
                            trans.add(qlpl_.at(p, a, b, v, t, e), P().qcostlpl(a, b, t));
                    }
            }
            for (int v = 0; v < nV_; ++v)
                for (const auto& [ka, la] : allArcs_[e])
                    for (int c = 0; c < nLCV_; ++c)
                        for (int p = 0; p < nP_; ++p)
                            trans.add(nkl_.at(p, ka, la, v, c, t, e), P().ncostkl(ka, la, v, c, t));
            for (int v = 0; v < nV_; ++v) {
                if (v == pipe_) continue;
                for (int la : Ae_[e])
                    for (int m = 0; m < nM_; ++m)
                        for (int p = 0; p < nP_; ++p)
                            for (int c = 0; c < nLCV_; ++c)
                                trans.add(nlm_.at(p, la, m, v, c, t, e), P().ncostlm(la, m, v, c, t));
            }
            for (int v = 0; v < nV_; ++v)
                for (int a : Ae_[e])
                    for (int b : Ae_[e]) {
                        if (a == b) continue;
                        for (int c = 0; c < nLCV_; ++c)
                            for (int p = 0; p < nP_; ++p)
                                trans.add(nlpl_.at(p, a, b, v, c, t, e), P().ncostlpl(b, a, v, c, t));
                    }
        }

        LinExpr& imports = cat["import"];
        for (int t = 0; t < nT_; ++t)
            for (int p = 0; p < nP_; ++p)
                for (int la : Ae_[e]) imports.add(imp_.at(p, la, t, e), P().icost(p, t));

        LinExpr& labor = cat["labor"];
        for (int t = 0; t < nT_; ++t)
            for (int lev = 0; lev < nLEV_; ++lev) {
                const double w = P().wcost(lev, t);
                for (int en = 0; en < nEN_; ++en)
                    for (int en2 = 0; en2 < nEN_; ++en2) {
                        for (int kc : Kce_[e]) labor.add(henk_.at(en, kc, en2, lev, t), w);
                        for (int k : Ke_[e]) labor.add(heek_.at(en, k, en2, lev, t), w);
                        for (int lc : Lce_[e]) labor.add(henl_.at(en, lc, en2, lev, t), w);
                        for (int l : Le_[e]) labor.add(heel_.at(en, l, en2, lev, t), w);
                    }
            }

        return cat;
    }

    LinExpr pollution_expr(int e) const {
        LinExpr pl;
        for (int t = 0; t < nT_; ++t) {
            for (int kc : Kce_[e])
                for (int en = 0; en < nEN_; ++en)
                    for (int ek = 0; ek < nEK_; ++ek)
                        pl.add(xk_.at(kc, ek, t, e), P().pollution_weight(en) * P().region_new_ref(en, kc) *
                                                         P().nck(kc, ek) * P().pulk);
            for (int lc : Lce_[e])
                for (int en = 0; en < nEN_; ++en)
                    for (int ez = 0; ez < nEZ_; ++ez)
                        for (int p = 0; p < nP_; ++p)
                            pl.add(n_.at(p, lc, ez, t, e), P().pollution_weight(en) *
                                                               P().region_new_dc(en, lc) * P().nct(lc, ez) *
                                                               P().pull);
            for (int en = 0; en < nEN_; ++en)
                for (int uk = 0; uk < nUK_; ++uk)
                    for (int k : Ke_[e])
                        pl.add(tk_.at(k, uk, t, e), P().pollution_weight(en) * P().region_ref(en, k) *
                                                        P().capk(k, uk) * P().pulk * P().per);
            for (int en = 0; en < nEN_; ++en)
                for (int p = 0; p < nP_; ++p)
                    for (int ul = 0; ul < nUL_; ++ul)
                        for (int l : Le_[e])
                            pl.add(tl_.at(p, l, ul, t, e), P().pollution_weight(en) * P().region_dc(en, l) *
                                                               P().capl(l, ul) * P().pull * P().per);
            for (int la : Ae_[e])
                for (int m = 0; m < nM_; ++m)
                    for (int c = 0; c < nLCV_; ++c)
                        for (int v = 0; v < nV_; ++v) {
                            if (v == pipe_) continue;
                            for (int p = 0; p < nP_; ++p)
                                pl.add(nlm_.at(p, la, m, v, c, t, e), P().pulv(v, c) * P().dist(la, m));
                        }
        }
        return pl;
    }

    LinExpr social_expr(int e) const {
        LinExpr so;
        for (int t = 0; t < nT_; ++t)
            for (int lev = 0; lev < nLEV_; ++lev)
                for (int en = 0; en < nEN_; ++en)
                    for (int en2 = 0; en2 < nEN_; ++en2) {
                        const double w = P().labor_transfer(en, en2);
                        for (int kc : Kce_[e])
                            so.add(henk_.at(en, kc, en2, lev, t), P().region_new_ref(en, kc) * w);
                        for (int k : Ke_[e]) so.add(heek_.at(en, k, en2, lev, t), P().region_ref(en, k) * w);
                        for (int lc : Lce_[e])
                            so.add(henl_.at(en, lc, en2, lev, t), P().region_new_dc(en, lc) * w);
                        for (int l : Le_[e]) so.add(heel_.at(en, l, en2, lev, t), P().region_dc(en, l) * w);
                    }
        return so;
    }

    void register_objectives() {
        LinExpr profit_all, pollution_all, social_all;
        std::vector<LinExpr> profit_e(static_cast<std::size_t>(nE_));
        std::vector<LinExpr> pollution_e(static_cast<std::size_t>(nE_));
        std::vector<LinExpr> social_e(static_cast<std::size_t>(nE_));
        for (int e = 0; e < nE_; ++e) {
            LinExpr pr = revenue_expr(e);
            pr += cost_expr(e) * -1.0;
            profit_e[static_cast<std::size_t>(e)] = pr;
            pollution_e[static_cast<std::size_t>(e)] = pollution_expr(e);
            social_e[static_cast<std::size_t>(e)] = social_expr(e);
            profit_all += profit_e[static_cast<std::size_t>(e)];
            pollution_all += pollution_e[static_cast<std::size_t>(e)];
            social_all += social_e[static_cast<std::size_t>(e)];
        }
        model_.set_objective("profit", std::move(profit_all), ObjSense::Maximize);
        model_.set_objective("pollution", std::move(pollution_all), ObjSense::Minimize);
        model_.set_objective("social", std::move(social_all), ObjSense::Maximize);
        for (int e = 0; e < nE_; ++e) {
            model_.set_objective(nm("profit", {sE(e)}), std::move(profit_e[static_cast<std::size_t>(e)]),
                                 ObjSense::Maximize);
            model_.set_objective(nm("pollution", {sE(e)}),
                                 std::move(pollution_e[static_cast<std::size_t>(e)]), ObjSense::Minimize);
            model_.set_objective(nm("social", {sE(e)}), std::move(social_e[static_cast<std::size_t>(e)]),
                                 ObjSense::Maximize);
        }
        model_.set_active_objective("profit");
    }

    void fill_report(BuildReport& rep) const {
        rep.var_families.clear();
        rep.con_families.clear();
        const std::pair<const char*, const detail::VarTable*> fams[] = {
            {"xk", &xk_},     {"xl", &xl_},       {"tk", &tk_},     {"tl", &tl_},     {"ykl", &ykl_},
            {"ylpl", &ylpl_}, {"z", &z_},         {"psik", &psik_}, {"s", &s_},       {"xi", &xi_},
            {"rkl", &rkl_},   {"rklx", &rklx_},   {"rlpl", &rlpl_}, {"rlplx", &rlplx_}, {"n", &n_},
            {"nkl", &nkl_},   {"nlpl", &nlpl_},   {"nlm", &nlm_},   {"henk", &henk_}, {"heek", &heek_},
            {"henl", &henl_}, {"heel", &heel_},   {"qkl", &qkl_},   {"qlpl", &qlpl_}, {"qlm", &qlm_},
            {"imp", &imp_},   {"ep", &ep_},       {"vl", &vl_},     {"vk", &vk_},     {"rlab", &rlab_},
            {"alab", &alab_}};
        for (const auto& [name, tab] : fams) rep.var_families[name] = tab->size();
        static const char* kTags[] = {
            "eq6",    "eq7",    "eq8",  "eq9",  "eq10", "eq11", "eq12", "eq13", "eq14", "eq15", "eq16",
            "eq17",   "eq18",   "eq19", "eq20lo", "eq20hi", "eq21lo", "eq21hi", "eq22", "eq23", "eq24",
            "eq25",   "eq26",   "eq27", "eq28", "eq29", "eq30", "eq31", "eq32", "eq33", "eq34", "eq35",
            "eq36",   "eq37",   "eq38", "eq39", "eq40", "eq41", "eq42", "eq43", "eq44", "eq45", "eq46",
            "eq47",   "eq48",   "eq49", "eq50", "eq51", "eq52", "eq53", "eq54", "eq55", "eq56", "eq57",
            "eq58",   "eq59",   "eq60", "eq61", "eq62", "eq63", "eq64", "eq65", "eq66", "eq67", "eq68",
            "eq69",   "eq70",   "eq71", "eq72", "eq73", "eq74", "eq75", "eq76", "eq77", "eq78", "eq79",
            "eq80",   "eq81",   "eq82", "eq83", "eq84", "eq85", "eq86", "eq87", "eq88"};
        for (const char* tag : kTags) rep.con_families[tag] = 0;
        for (const auto& [tag, cnt] : con_count_) rep.con_families[tag] = cnt;
        rep.num_vars = model_.num_vars();
        rep.num_constraints = model_.num_constraints();
        rep.num_free_discrete = model_.num_free_discrete();
    }
};

inline MilpModel build_model(const ModelInstance& inst, const BuildOptions& opts = {},
                             BuildReport* report = nullptr) {
    ModelBuilder b(inst, opts);
    return b.build(report);
}

} // namespace dscpsc

#endif
