// Sensitivity harness: scale one cost-parameter group at a time, re-run the
// fuzzy pipeline, and report per-stakeholder percent changes of a chosen
// metric.  Also renders the per-stakeholder cost decomposition of a solved
// report.
#ifndef DSCPSC_SENSITIVITY_HPP
#define DSCPSC_SENSITIVITY_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dscpsc/builder.hpp"
#include "dscpsc/errors.hpp"
#include "dscpsc/fuzzy.hpp"
#include "dscpsc/instance.hpp"
#include "dscpsc/milp.hpp"
#include "dscpsc/solver.hpp"

namespace dscpsc {

// ------------------------------------------------------------------ groups

/* A named bundle of cost tables that are scaled together. */
struct ParameterGroup {
    std::string name;
    std::vector<std::string> tables; /* registry keys, scaled as one */
};

/* The eight perturbation groups.  Each cost table belongs to at most one
 * group; cost-like tables outside every group (icost, wcost, clcostk,
 * crude_price and the sale prices) stay fixed during a sweep —
 * docs/groups.md lists the membership and the deliberate leftovers. */
inline const std::vector<ParameterGroup>& parameter_groups() {
    static const std::vector<ParameterGroup> kGroups = {
        {"pipeline-transport-costs", {"qcostkl", "qcostlpl"}},
        {"non-pipeline-transport-costs", {"ncostkl", "ncostlm", "ncostlpl"}},
        {"facility-expansion-costs", {"ucostk", "ucostl"}},
        {"inventory-costs", {"hcostk", "hcostl"}},
        {"variable-costs", {"pcostk", "pcostl"}},
        {"route-install-and-expansion-costs", {"rcostkl", "rcostlpl", "ycostkl", "ycostlpl"}},
        {"facility-installation-costs", {"xcostk", "xcostl", "tank_cost"}},
        {"fixed-costs", {"fcostk", "fcostl"}},
    };
    return kGroups;
}

inline const ParameterGroup& find_group(const std::string& name) {
    for (const ParameterGroup& g : parameter_groups())
        if (g.name == name) return g;
    std::string known;
    for (const ParameterGroup& g : parameter_groups()) {
        if (!known.empty()) known += ", ";
        known += g.name;
    }
    throw Error("unknown parameter group '" + name + "' (known: " + known + ")");
}

/* Copy the instance with every member table of `group` scaled by
 * (1 + level_pct/100).  Nothing else changes; the field-level diff is part
 * of the regression suite. */
inline ModelInstance perturb(const ModelInstance& base, const std::string& group,
                             double level_pct) {
    const ParameterGroup& g = find_group(group);
    ModelInstance out = base;
    const double factor = 1.0 + level_pct / 100.0;
    for (const std::string& key : g.tables) {
        const TableInfo* info = nullptr;
        for (const TableInfo& ti : table_registry())
            if (key == ti.key) {
                info = &ti;
                break;
            }
        if (!info) throw Error("parameter group '" + group + "' names unknown table '" + key + "'");
        Table& tab = out.params.*(info->member);
        for (double& v : tab.data) v *= factor;
    }
    return out;
}

// ------------------------------------------------------------ cost report

/* Cost side of each stakeholder's profit objective, split into the
 * kCostCategories buckets, evaluated at a solved report's compromise. */
struct CostBreakdown {
    std::vector<std::string> stakeholders; /* labels, instance order */
    /* stakeholder -> category -> money; every category key is present */
    std::map<std::string, std::map<std::string, double>> categories;
    std::map<std::string, double> total;     /* sum of the 12 buckets */
    std::map<std::string, double> cost_eval; /* the one-shot cost expression */

    std::string csv() const {
        std::ostringstream os;
        os << "stakeholder,category,value\n";
        for (const std::string& e : stakeholders) {
            for (const char* key : kCostCategories)
                os << e << "," << key << "," << fmt(categories.at(e).at(key)) << "\n";
            os << e << ",total," << fmt(total.at(e)) << "\n";
        }
        return os.str();
    }

    std::string to_json(int indent = 2) const {
        nlohmann::json j;
        j["stakeholders"] = stakeholders;
        for (const std::string& e : stakeholders) {
            nlohmann::json row;
            for (const char* key : kCostCategories) row[key] = categories.at(e).at(key);
            j["categories"][e] = row;
            j["total"][e] = total.at(e);
            j["cost_eval"][e] = cost_eval.at(e);
        }
        return j.dump(indent);
    }

    std::string text() const {
        std::ostringstream os;
        os << std::left << std::setw(18) << "category";
        for (const std::string& e : stakeholders) os << std::right << std::setw(16) << e;
        os << "\n";
        for (const char* key : kCostCategories) {
            os << std::left << std::setw(18) << key;
            for (const std::string& e : stakeholders)
                os << std::right << std::setw(16) << fmt(categories.at(e).at(key));
            os << "\n";
        }
        os << std::left << std::setw(18) << "total";
        for (const std::string& e : stakeholders)
            os << std::right << std::setw(16) << fmt(total.at(e));
        os << "\n";
        return os.str();
    }

private:
    static std::string fmt(double v) {
        if (v == 0.0) v = 0.0; /* normalize -0 */
        std::ostringstream os;
        os << std::setprecision(12) << v;
        return os.str();
    }
};

/* Rebuild the model for `inst` (builds are deterministic, so variable ids
 * match the ones behind the report's solution) and evaluate the categories
 * at the compromise point.  Pass the same build options the report's solve
 * used. */
inline CostBreakdown cost_breakdown_report(const ModelInstance& inst, const FuzzyReport& rep,
                                           const BuildOptions& build_opts = {}) {
    if (!rep.solved())
        throw Error(std::string("cost breakdown requires a solved report; status is ") +
                    status_str(rep.status));
    ModelBuilder builder(inst, build_opts);
    (void)builder.build();

    CostBreakdown out;
    out.stakeholders = inst.sets.stakeholders;
    for (std::size_t e = 0; e < out.stakeholders.size(); ++e) {
        const std::string& label = out.stakeholders[e];
        double sum = 0.0;
        for (auto& [key, expr] : builder.cost_categories(static_cast<int>(e))) {
            const double v = eval(expr, rep.solution);
            out.categories[label][key] = v;
            sum += v;
        }
        out.total[label] = sum;
        out.cost_eval[label] = eval(builder.stakeholder_cost(static_cast<int>(e)), rep.solution);
    }
    return out;
}

// ------------------------------------------------------------------ sweep

enum class SensMetric { Profit, Lambda, Cost };

inline const char* metric_str(SensMetric m) {
    switch (m) {
        case SensMetric::Profit: return "profit";
        case SensMetric::Lambda: return "lambda";
        default: return "cost";
    }
}

inline SensMetric metric_from_str(const std::string& s) {
    if (s == "profit") return SensMetric::Profit;
    if (s == "lambda") return SensMetric::Lambda;
    if (s == "cost") return SensMetric::Cost;
    throw Error("unknown metric '" + s + "' (choose profit, lambda or cost)");
}

/* Per-stakeholder value of the chosen metric at a solved report.  Lambda is
 * a single number; it is repeated per stakeholder to keep the grid shape. */
inline std::map<std::string, double> metric_values(SensMetric metric, const ModelInstance& inst,
                                                   const FuzzyReport& rep,
                                                   const BuildOptions& build_opts = {}) {
    std::map<std::string, double> out;
    switch (metric) {
        case SensMetric::Profit:
            for (const std::string& e : rep.stakeholders) out[e] = rep.per_stakeholder.at(e)[0];
            break;
        case SensMetric::Lambda:
            for (const std::string& e : rep.stakeholders) out[e] = rep.lambda;
            break;
        case SensMetric::Cost:
            out = cost_breakdown_report(inst, rep, build_opts).total;
            break;
    }
    return out;
}

struct SensitivityOptions {
    std::vector<std::string> groups;                          /* empty: all eight */
    std::vector<double> levels = {-30, -20, -10, 10, 20, 30}; /* percent */
    SensMetric metric = SensMetric::Profit;
    /* Reuse the base anchors for every cell instead of re-anchoring; much
     * cheaper and clearly labeled approximate in the output. */
    bool freeze_bounds = false;
    int jobs = 1; /* concurrently evaluated cells */
    FuzzyOptions fuzzy;
    BuildOptions build;
};

/* One (group, level) cell of the sweep. */
struct SensitivityCell {
    std::string group;
    double level_pct = 0.0;
    SolveStatus status = SolveStatus::Error;
    std::string error;                   /* non-empty iff the cell threw */
    std::size_t solver_calls = 0;
    std::map<std::string, double> value; /* metric per stakeholder */
    /* percent change vs the base; empty optional marks an undefined cell
     * (base metric is 0) — rendered as "undefined", never NaN */
    std::map<std::string, std::optional<double>> pct_change;

    bool solved() const {
        return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
    }
};

struct SensitivityReport {
    SensMetric metric = SensMetric::Profit;
    bool frozen_bounds = false;
    std::vector<std::string> stakeholders;
    FuzzyReport base;
    std::map<std::string, double> base_value;
    std::vector<SensitivityCell> cells; /* sorted by (group, level) */

    /* One row per cell and stakeholder. */
    std::string csv() const {
        std::ostringstream os;
        os << "group,level_pct,stakeholder,metric,pct_change,status\n";
        for (const SensitivityCell& c : cells)
            for (const std::string& e : stakeholders) {
                os << c.group << "," << fmt(c.level_pct) << "," << e << "," << metric_str(metric)
                   << ",";
                const auto it = c.pct_change.find(e);
                if (it != c.pct_change.end() && it->second)
                    os << fmt(*it->second);
                else
                    os << "undefined";
                os << "," << (c.error.empty() ? status_str(c.status) : "error") << "\n";
            }
        return os.str();
    }

    std::string to_json(int indent = 2) const {
        nlohmann::json j;
        j["metric"] = metric_str(metric);
        j["frozen_bounds"] = frozen_bounds;
        j["stakeholders"] = stakeholders;
        j["base"] = nlohmann::json::parse(base.to_json());
        j["base_value"] = base_value;
        j["cells"] = nlohmann::json::array();
        for (const SensitivityCell& c : cells) {
            nlohmann::json jc;
            jc["group"] = c.group;
            jc["level_pct"] = c.level_pct;
            jc["status"] = status_str(c.status);
            jc["error"] = c.error.empty() ? nlohmann::json() : nlohmann::json(c.error);
            jc["solver_calls"] = c.solver_calls;
            jc["value"] = c.value;
            nlohmann::json pc;
            for (const std::string& e : stakeholders) {
                const auto it = c.pct_change.find(e);
                if (it != c.pct_change.end() && it->second)
                    pc[e] = *it->second;
                else
                    pc[e] = nullptr;
            }
            jc["pct_change"] = pc;
            j["cells"].push_back(std::move(jc));
        }
        return j.dump(indent);
    }

    /* Terminal table: one row per (group, level), one percent column per
     * stakeholder. */
    std::string text() const {
        std::ostringstream os;
        os << "sensitivity sweep (metric: " << metric_str(metric)
           << (frozen_bounds ? ", bounds frozen to base — approximate" : "") << ")\n";
        os << std::left << std::setw(36) << "group" << std::right << std::setw(8) << "level%";
        for (const std::string& e : stakeholders) os << std::setw(14) << (e + " %");
        os << std::setw(12) << "status" << "\n";
        for (const SensitivityCell& c : cells) {
            os << std::left << std::setw(36) << c.group << std::right << std::setw(8)
               << fmt(c.level_pct);
            for (const std::string& e : stakeholders) {
                const auto it = c.pct_change.find(e);
                if (it != c.pct_change.end() && it->second) {
                    std::ostringstream cell;
                    cell << std::fixed << std::setprecision(2) << *it->second;
                    os << std::setw(14) << cell.str();
                } else {
                    os << std::setw(14) << "undefined";
                }
            }
            os << std::setw(12) << (c.error.empty() ? status_str(c.status) : "error") << "\n";
        }
        return os.str();
    }

private:
    static std::string fmt(double v) {
        if (v == 0.0) v = 0.0;
        std::ostringstream os;
        os << std::setprecision(12) << v;
        return os.str();
    }
};

/* Run the full sweep.  The base solve must succeed; a failing cell is
 * recorded with its diagnostic and never aborts the grid.  Cells always come
 * out sorted by (group name, level). */
inline SensitivityReport run_sensitivity(const ModelInstance& inst, const SolverBackend& backend,
                                         const SensitivityOptions& opts = {}) {
    std::vector<std::string> groups = opts.groups;
    if (groups.empty())
        for (const ParameterGroup& g : parameter_groups()) groups.push_back(g.name);
    else
        for (const std::string& g : groups) find_group(g); /* validate up front */
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

    std::vector<double> levels = opts.levels;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    SensitivityReport rep;
    rep.metric = opts.metric;
    rep.frozen_bounds = opts.freeze_bounds;
    rep.stakeholders = inst.sets.stakeholders;
    rep.base = solve_fuzzy(inst, backend, opts.fuzzy, opts.build);
    if (!rep.base.solved())
        throw Error(std::string("sensitivity base solve failed: status is ") +
                    status_str(rep.base.status));
    rep.base_value = metric_values(opts.metric, inst, rep.base, opts.build);

    FuzzyOptions cell_fuzzy = opts.fuzzy;
    if (opts.freeze_bounds) cell_fuzzy.reuse_bounds = rep.base.bounds;

    rep.cells.resize(groups.size() * levels.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t li = 0; li < levels.size(); ++li) {
            SensitivityCell& cell = rep.cells[gi * levels.size() + li];
            cell.group = groups[gi];
            cell.level_pct = levels[li];
        }

    auto run_cell = [&](SensitivityCell& cell) {
        try {
            const ModelInstance pert = perturb(inst, cell.group, cell.level_pct);
            const FuzzyReport fr = solve_fuzzy(pert, backend, cell_fuzzy, opts.build);
            cell.status = fr.status;
            cell.solver_calls = fr.solver_invocations;
            if (!fr.solved()) return; /* a gap, not an error: status says why */
            cell.value = metric_values(opts.metric, pert, fr, opts.build);
            for (const std::string& e : rep.stakeholders) {
                const double base = rep.base_value.at(e);
                if (base == 0.0) {
                    cell.pct_change[e] = std::nullopt;
                } else {
                    double pct = 100.0 * (cell.value.at(e) - base) / std::abs(base);
                    if (pct == 0.0) pct = 0.0; /* normalize -0 */
                    cell.pct_change[e] = pct;
                }
            }
        } catch (const std::exception& ex) {
            cell.status = SolveStatus::Error;
            cell.error = ex.what();
        }
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || rep.cells.size() <= 1) {
        for (SensitivityCell& cell : rep.cells) run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t width =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), rep.cells.size());
        pool.reserve(width);
        for (std::size_t w = 0; w < width; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= rep.cells.size()) return;
                    run_cell(rep.cells[i]);
                }
            });
        for (std::thread& th : pool) th.join();
    }
    return rep;
}

} // namespace dscpsc

#endif
