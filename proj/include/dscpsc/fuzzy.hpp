// Max-min scalarization of the multi-objective model: each objective is
// turned into a degree-of-satisfaction between its best and worst attainable
// values, and a single run maximizes the smallest degree.
#ifndef DSCPSC_FUZZY_HPP
#define DSCPSC_FUZZY_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dscpsc/builder.hpp"
#include "dscpsc/errors.hpp"
#include "dscpsc/milp.hpp"
#include "dscpsc/solver.hpp"

namespace dscpsc {

/* Two anchor solves per objective make the satisfaction scale meaningful;
 * spans this flat (relative) are treated as constant objectives. */
inline constexpr double kFlatSpanTol = 1e-9;
/* The reported lambda must not exceed any recomputed membership by more. */
inline constexpr double kLambdaTol = 1e-6;

inline const char* kLambdaName = "lambda";

/* Range of one objective over the feasible set, from one maximizing and one
 * minimizing solve. */
struct ObjectiveBound {
    ObjSense sense = ObjSense::Maximize;
    double lo = 0.0; /* minimum over the feasible set */
    double hi = 0.0; /* maximum over the feasible set */

    double ideal() const { return sense == ObjSense::Maximize ? hi : lo; }
    double anti_ideal() const { return sense == ObjSense::Maximize ? lo : hi; }
    bool degenerate() const {
        return std::abs(hi - lo) <= kFlatSpanTol * std::max({1.0, std::abs(lo), std::abs(hi)});
    }
};

struct ObjectiveBounds {
    std::vector<std::string> order; /* the objectives, in scalarization order */
    std::map<std::string, ObjectiveBound> by_name;
    std::size_t solves = 0; /* solver invocations spent computing the anchors */

    const ObjectiveBound& at(const std::string& name) const {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw Error("no bounds recorded for objective: " + name);
        return it->second;
    }
};

struct BoundsOptions {
    int jobs = 1; /* anchor solves are independent; >1 runs them on threads */
};

namespace detail {

inline double anchor_solve(const MilpModel& model, const std::string& objective, ObjSense dir,
                           const SolverBackend& backend) {
    auto it = model.objectives().find(objective);
    if (it == model.objectives().end()) throw Error("unknown objective: " + objective);
    MilpModel probe = model;
    probe.unfreeze();
    probe.set_objective("__probe", it->second.expr, dir);
    probe.freeze();
    probe.set_active_objective("__probe");
    const Solution sol = solve(probe, backend);
    const char* what = dir == ObjSense::Maximize ? "maximizing" : "minimizing";
    if (sol.status == SolveStatus::Infeasible)
        throw InfeasibleModel(std::string("while ") + what + " objective '" + objective + "'");
    if (sol.status == SolveStatus::Unbounded)
        throw UnboundedObjective(std::string(what) + " objective '" + objective + "'");
    if (sol.status != SolveStatus::Optimal)
        throw Error(std::string("anchor solve ") + what + " objective '" + objective +
                    "' did not prove optimality");
    return sol.objective_values.at("__probe");
}

} // namespace detail

/* Bound every listed objective over the model's feasible set: one maximizing
 * and one minimizing run each. */
inline ObjectiveBounds compute_bounds(const MilpModel& model,
                                      const std::vector<std::string>& objectives,
                                      const SolverBackend& backend,
                                      const BoundsOptions& opts = {}) {
    struct Task {
        std::string name;
        ObjSense dir;
    };
    std::vector<Task> tasks;
    for (const std::string& name : objectives) {
        if (!model.objectives().count(name)) throw Error("unknown objective: " + name);
        tasks.push_back({name, ObjSense::Maximize});
        tasks.push_back({name, ObjSense::Minimize});
    }

    std::vector<double> results(tasks.size(), 0.0);
    const int jobs = std::clamp<int>(opts.jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            results[i] = detail::anchor_solve(model, tasks[i].name, tasks[i].dir, backend);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex mu;
        std::exception_ptr first_error;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    results[i] = detail::anchor_solve(model, tasks[i].name, tasks[i].dir, backend);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    ObjectiveBounds out;
    out.order = objectives;
    out.solves = tasks.size();
    for (std::size_t i = 0; i < tasks.size(); i += 2) {
        ObjectiveBound b;
        b.sense = model.objectives().at(tasks[i].name).sense;
        b.hi = results[i];
        b.lo = results[i + 1];
        out.by_name[tasks[i].name] = b;
    }
    return out;
}

/* Satisfaction degree of one objective value: 0 at the worst anchor, 1 at the
 * best, linear between, clamped outside.  A flat range satisfies trivially. */
inline double membership(double value, const ObjectiveBound& b) {
    if (b.degenerate()) return 1.0;
    const double span = b.hi - b.lo;
    const double raw =
        b.sense == ObjSense::Maximize ? (value - b.lo) / span : (b.hi - value) / span;
    return std::clamp(raw, 0.0, 1.0);
}

/* Augment the model with a satisfaction level `lambda` in [0,1], one linkage
 * row per bounded objective, and the objective max lambda:
 *   maximize-sense f:  f(x) - (hi-lo) lambda >= lo
 *   minimize-sense g:  g(x) + (hi-lo) lambda <= hi
 * Everything already in the model is carried over untouched. */
inline MilpModel scalarize(const MilpModel& model, const ObjectiveBounds& bounds) {
    for (const std::string& name : bounds.order)
        if (bounds.at(name).degenerate())
            throw DegenerateBounds("objective '" + name +
                                   "' has a flat range; drop it before scalarizing");
    MilpModel m = model;
    m.unfreeze();
    const VarId lam = m.add_var(kLambdaName, VarKind::Continuous, 0.0, 1.0);
    for (const std::string& name : bounds.order) {
        const ObjectiveBound& b = bounds.at(name);
        LinExpr row = model.objectives().at(name).expr;
        const double span = b.hi - b.lo;
        if (b.sense == ObjSense::Maximize) {
            row.add(lam, -span);
            m.add_constraint("link[" + name + "]", std::move(row), Sense::GE, b.lo);
        } else {
            row.add(lam, span);
            m.add_constraint("link[" + name + "]", std::move(row), Sense::LE, b.hi);
        }
    }
    LinExpr lamex;
    lamex.add(lam, 1.0);
    m.set_objective(kLambdaName, std::move(lamex), ObjSense::Maximize);
    m.freeze();
    m.set_active_objective(kLambdaName);
    return m;
}

/* Seam for other ways of collapsing the objectives; only the max-min form is
 * implemented. */
struct ScalarizationStrategy {
    virtual ~ScalarizationStrategy() = default;
    virtual MilpModel apply(const MilpModel& model, const ObjectiveBounds& bounds) const = 0;
};

struct MaxMinScalarization final : ScalarizationStrategy {
    MilpModel apply(const MilpModel& model, const ObjectiveBounds& bounds) const override {
        return scalarize(model, bounds);
    }
};

/* Which objective set enters the scalarization. */
enum class ScalarizeMode {
    Chain,          /* the three chain-wide objectives (default) */
    PerStakeholder, /* one triple per stakeholder */
};

inline const char* scalarize_mode_str(ScalarizeMode m) {
    return m == ScalarizeMode::Chain ? "chain" : "per-stakeholder";
}

struct FuzzyOptions {
    ScalarizeMode mode = ScalarizeMode::Chain;
    int jobs = 1; /* parallelism of the anchor solves */
    /* When set, the anchor solves are skipped and these bounds are reused.
     * Memberships are then approximate for any instance whose true anchors
     * moved; the report says so in its warnings. */
    std::optional<ObjectiveBounds> reuse_bounds;
};

/* Outcome of the whole pipeline: anchors, satisfaction degrees, the final
 * compromise, and the per-stakeholder objective values at that point. */
struct FuzzyReport {
    SolveStatus status = SolveStatus::Error;
    ScalarizeMode mode = ScalarizeMode::Chain;
    ObjectiveBounds bounds;
    double lambda = 0.0;
    std::map<std::string, double> memberships; /* scalarized objectives only */
    std::vector<std::string> stakeholders;     /* labels, instance order */
    /* per stakeholder: profit, pollution, social value at the compromise */
    std::map<std::string, std::array<double, 3>> per_stakeholder;
    std::vector<std::string> warnings;
    std::size_t solver_invocations = 0;
    Solution solution;

    bool solved() const {
        return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
    }

    std::string text() const {
        std::ostringstream os;
        os << "fuzzy solve (" << scalarize_mode_str(mode) << " mode): " << status_str(status)
           << ", " << solver_invocations << " solver calls\n";
        if (solved()) os << "lambda = " << std::setprecision(6) << std::fixed << lambda << "\n";
        os.unsetf(std::ios::floatfield);
        os << std::setprecision(6);
        if (!bounds.order.empty()) {
            os << "\n";
            os << std::left << std::setw(18) << "objective" << std::setw(6) << "sense"
               << std::right << std::setw(14) << "anti-ideal" << std::setw(14) << "ideal"
               << std::setw(14) << "membership" << "\n";
            for (const std::string& name : bounds.order) {
                const ObjectiveBound& b = bounds.at(name);
                os << std::left << std::setw(18) << name << std::setw(6)
                   << (b.sense == ObjSense::Maximize ? "max" : "min") << std::right
                   << std::setw(14) << b.anti_ideal() << std::setw(14) << b.ideal();
                if (memberships.count(name))
                    os << std::setw(14) << memberships.at(name);
                else
                    os << std::setw(14) << "-";
                if (b.degenerate()) os << "  (flat)";
                os << "\n";
            }
        }
        if (!per_stakeholder.empty()) {
            os << "\n";
            os << std::left << std::setw(14) << "stakeholder" << std::right << std::setw(16)
               << "profit" << std::setw(16) << "pollution" << std::setw(16) << "social" << "\n";
            for (const std::string& e : stakeholders) {
                const auto& v = per_stakeholder.at(e);
                os << std::left << std::setw(14) << e << std::right << std::setw(16) << v[0]
                   << std::setw(16) << v[1] << std::setw(16) << v[2] << "\n";
            }
        }
        for (const std::string& w : warnings) os << "warning: " << w << "\n";
        return os.str();
    }

    std::string to_json(int indent = 2) const {
        nlohmann::json j;
        j["status"] = status_str(status);
        j["mode"] = scalarize_mode_str(mode);
        j["solver_invocations"] = solver_invocations;
        if (solved()) j["lambda"] = lambda;
        nlohmann::json jb = nlohmann::json::object();
        for (const std::string& name : bounds.order) {
            const ObjectiveBound& b = bounds.at(name);
            jb[name] = {{"sense", b.sense == ObjSense::Maximize ? "max" : "min"},
                        {"lo", b.lo},
                        {"hi", b.hi},
                        {"ideal", b.ideal()},
                        {"anti_ideal", b.anti_ideal()},
                        {"degenerate", b.degenerate()}};
        }
        j["bounds"] = jb;
        j["memberships"] = memberships;
        nlohmann::json je = nlohmann::json::array();
        for (const std::string& e : stakeholders) {
            if (!per_stakeholder.count(e)) continue;
            const auto& v = per_stakeholder.at(e);
            je.push_back(
                {{"stakeholder", e}, {"profit", v[0]}, {"pollution", v[1]}, {"social", v[2]}});
        }
        j["stakeholders"] = je;
        j["warnings"] = warnings;
        return j.dump(indent);
    }
};

/* Names of the objectives the chosen mode scalarizes over. */
inline std::vector<std::string> scalarized_objectives(const ModelInstance& inst,
                                                      ScalarizeMode mode) {
    if (mode == ScalarizeMode::Chain) return {"profit", "pollution", "social"};
    std::vector<std::string> names;
    for (const std::string& e : inst.sets.stakeholders)
        for (const char* fam : {"profit", "pollution", "social"})
            names.push_back(std::string(fam) + "[" + e + "]");
    return names;
}

/* End to end: construct the model, anchor each objective, scalarize, solve,
 * and report.  An infeasible instance yields a report, not an exception. */
inline FuzzyReport solve_fuzzy(const ModelInstance& inst, const SolverBackend& backend,
                               const FuzzyOptions& opts = {},
                               const BuildOptions& build_opts = {}) {
    const MilpModel model = build_model(inst, build_opts);
    const std::vector<std::string> names = scalarized_objectives(inst, opts.mode);

    FuzzyReport rep;
    rep.mode = opts.mode;
    rep.stakeholders = inst.sets.stakeholders;
    if (opts.reuse_bounds) {
        rep.bounds = *opts.reuse_bounds;
        for (const std::string& name : names)
            rep.bounds.at(name); /* fail loudly if the donor lacks an objective */
        rep.warnings.push_back("objective bounds reused from a prior solve; memberships are approximate");
        rep.solver_invocations = 0;
    } else {
        try {
            rep.bounds = compute_bounds(model, names, backend, {opts.jobs});
        } catch (const InfeasibleModel& ex) {
            rep.status = SolveStatus::Infeasible;
            rep.warnings.push_back(ex.what());
            return rep;
        }
        rep.solver_invocations = rep.bounds.solves;
    }

    ObjectiveBounds active;
    for (const std::string& name : names) {
        const ObjectiveBound& b = rep.bounds.at(name);
        if (b.degenerate()) {
            rep.memberships[name] = 1.0;
            rep.warnings.push_back("objective '" + name +
                                   "' is constant over the feasible set; satisfied trivially");
            continue;
        }
        active.order.push_back(name);
        active.by_name[name] = b;
    }

    const MilpModel scal = scalarize(model, active);
    Solution sol = solve(scal, backend);
    rep.status = sol.status;
    rep.solver_invocations += 1;
    if (!rep.solved()) return rep;

    rep.lambda = sol.at(*scal.find_var(kLambdaName));
    for (const std::string& name : active.order)
        rep.memberships[name] = membership(sol.objective_values.at(name), rep.bounds.at(name));
    for (const std::string& e : rep.stakeholders)
        rep.per_stakeholder[e] = {sol.objective_values.at("profit[" + e + "]"),
                                  sol.objective_values.at("pollution[" + e + "]"),
                                  sol.objective_values.at("social[" + e + "]")};
    rep.solution = std::move(sol);
    return rep;
}

} // namespace dscpsc

#endif
