#ifndef DSCPSC_EXACT_SOLVER_HPP
#define DSCPSC_EXACT_SOLVER_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "dscpsc/errors.hpp"
#include "dscpsc/milp.hpp"
#include "dscpsc/simplex.hpp"

namespace dscpsc {

struct ExactConfig {
    std::size_t discrete_budget = 24;   /* refuse models with more free discrete vars */
    std::uint64_t node_cap = 20'000'000;
    int threads = 1;                    /* >1 splits the first branch level into blocks */
};

struct SolveLog {
    std::string backend;
    std::uint64_t nodes = 0;
    std::uint64_t lp_solves = 0;
    double wall_seconds = 0.0;
    std::string termination;
};

namespace detail {

struct NodeLp {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;            /* full objective incl. fixed/constant part */
    std::vector<double> x;         /* full variable vector when Optimal */
};

/* Depth-first enumeration of the discrete variables in declaration order,
 * values ascending, with an LP relaxation bound at every node.  The first
 * optimum encountered is therefore the lexicographically smallest one, and
 * pruning on "bound cannot strictly improve" keeps exactly that property:
 * a subtree is discarded only when it cannot beat the incumbent by more
 * than the tie tolerance, so the earliest optimal assignment survives. */
class EnumSearch {
public:
    EnumSearch(const MilpModel& model, const ExactConfig& cfg)
        : model_(model), cfg_(cfg) {
        const Objective& obj = model_.active_objective();
        minimize_ = obj.expr;
        if (obj.sense == ObjSense::Maximize) minimize_ *= -1.0;

        for (std::uint32_t i = 0; i < model_.num_vars(); ++i) {
            const VarDef& v = model_.var(VarId{i});
            if (v.is_discrete() && !v.is_fixed()) {
                if (!std::isfinite(v.ub))
                    throw BudgetExceeded("discrete variable '" + v.name +
                                         "' has no finite upper bound");
                disc_.push_back(i);
            }
        }
        if (disc_.size() > cfg_.discrete_budget)
            throw BudgetExceeded(std::to_string(disc_.size()) + " free discrete variables, budget " +
                                 std::to_string(cfg_.discrete_budget));
        fixed_val_.assign(disc_.size(), 0.0);
    }

    Solution run(SolveLog* log) {
        const auto t0 = std::chrono::steady_clock::now();
        Solution sol;
        unbounded_ = false;
        if (cfg_.threads > 1 && !disc_.empty())
            search_parallel();
        else
            dfs(0);
        if (unbounded_) {
            sol.status = SolveStatus::Unbounded;
        } else if (!have_incumbent_) {
            sol.status = SolveStatus::Infeasible;
        } else {
            sol.status = SolveStatus::Optimal;
            for (std::uint32_t i = 0; i < model_.num_vars(); ++i) {
                double v = best_x_[i];
                const VarDef& def = model_.var(VarId{i});
                if (def.is_discrete()) v = std::round(v);
                sol.set(VarId{i}, v);
            }
            const Objective& obj = model_.active_objective();
            const double val = obj.sense == ObjSense::Maximize ? -incumbent_ : incumbent_;
            sol.objective_values[model_.active_objective_name()] = val;
        }
        if (log) {
            log->backend = "embedded-exact";
            log->nodes = nodes_;
            log->lp_solves = lps_;
            log->wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            log->termination = status_str(sol.status);
        }
        return sol;
    }

private:
    double tie_eps() const {
        return 1e-9 * std::max(1.0, std::abs(incumbent_));
    }

    /* Solve the LP restriction at the current depth: discrete variables below
     * `depth` take their fixed values, the rest are relaxed to their bound
     * intervals.  Variables fixed by bounds are substituted everywhere. */
    NodeLp node_lp(std::size_t depth) {
        ++lps_;
        const std::size_t nv = model_.num_vars();
        std::vector<int> col(nv, -1);
        std::vector<double> fixed(nv, 0.0);
        std::vector<bool> is_fixed(nv, false);
        for (std::size_t d = 0; d < depth; ++d) {
            fixed[disc_[d]] = fixed_val_[d];
            is_fixed[disc_[d]] = true;
        }
        std::vector<std::uint32_t> free_ids;
        for (std::uint32_t i = 0; i < nv; ++i) {
            if (is_fixed[i]) continue;
            const VarDef& v = model_.var(VarId{i});
            if (v.is_fixed()) {
                fixed[i] = v.lb;
                is_fixed[i] = true;
                continue;
            }
            col[i] = static_cast<int>(free_ids.size());
            free_ids.push_back(i);
        }

        DenseLp lp;
        lp.n = free_ids.size();
        lp.cost.assign(lp.n, 0.0);
        double cost_const = minimize_.constant();
        for (const auto& [id, c] : minimize_.terms()) {
            if (is_fixed[id.v]) {
                cost_const += c * fixed[id.v];
            } else {
                lp.cost[col[id.v]] += c;
                cost_const += c * model_.var(id).lb; /* shift x = lb + y */
            }
        }
        for (const auto& con : model_.constraints()) {
            std::vector<double> row(lp.n, 0.0);
            double shift = con.expr.constant();
            bool any_free = false;
            for (const auto& [id, c] : con.expr.terms()) {
                if (is_fixed[id.v]) {
                    shift += c * fixed[id.v];
                } else {
                    row[col[id.v]] += c;
                    shift += c * model_.var(id).lb;
                    any_free = true;
                }
            }
            const double b = con.rhs - shift;
            if (!any_free) {
                /* fully substituted row: check it directly */
                bool ok = true;
                switch (con.sense) {
                    case Sense::LE: ok = b >= -1e-9; break;
                    case Sense::GE: ok = b <= 1e-9; break;
                    case Sense::EQ: ok = std::abs(b) <= 1e-9; break;
                }
                if (!ok) return NodeLp{LpStatus::Infeasible, 0.0, {}};
                continue;
            }
            lp.add_row(std::move(row), con.sense, b);
        }
        /* finite upper bounds of free variables become rows in shifted space */
        for (std::size_t j = 0; j < free_ids.size(); ++j) {
            const VarDef& v = model_.var(VarId{free_ids[j]});
            if (std::isfinite(v.ub)) {
                std::vector<double> row(lp.n, 0.0);
                row[j] = 1.0;
                lp.add_row(std::move(row), Sense::LE, v.ub - v.lb);
            }
        }

        const LpResult r = solve_dense_lp(lp);
        NodeLp out;
        if (r.status == LpStatus::Infeasible) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        if (r.status == LpStatus::Unbounded) {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.status = LpStatus::Optimal;
        out.value = r.objective + cost_const;
        out.x.assign(nv, 0.0);
        for (std::uint32_t i = 0; i < nv; ++i) {
            if (is_fixed[i])
                out.x[i] = fixed[i];
            else
                out.x[i] = model_.var(VarId{i}).lb + r.x[col[i]];
        }
        return out;
    }

    void dfs(std::size_t depth) {
        if (++nodes_ > cfg_.node_cap)
            throw BudgetExceeded("node cap exceeded (" + std::to_string(cfg_.node_cap) + ")");
        NodeLp node = node_lp(depth);
        if (node.status == LpStatus::Infeasible) return;
        if (node.status == LpStatus::Unbounded) { unbounded_ = true; return; }
        if (have_incumbent_ && node.value >= incumbent_ - tie_eps()) return;
        if (shared_best_ && node.value > shared_best_->load() + 1e-9) return;
        if (depth == disc_.size()) {
            incumbent_ = node.value;
            best_x_ = std::move(node.x);
            have_incumbent_ = true;
            if (shared_best_) {
                double cur = shared_best_->load();
                while (incumbent_ < cur &&
                       !shared_best_->compare_exchange_weak(cur, incumbent_)) {}
            }
            return;
        }
        const VarDef& v = model_.var(VarId{disc_[depth]});
        const long lo = static_cast<long>(std::ceil(v.lb - 1e-9));
        const long hi = static_cast<long>(std::floor(v.ub + 1e-9));
        for (long val = lo; val <= hi; ++val) {
            fixed_val_[depth] = static_cast<double>(val);
            dfs(depth + 1);
            if (unbounded_) return;
        }
    }

    /* Split the first branch variable's values into blocks, one worker each.
     * Workers prune against the shared best strictly (never on ties), so every
     * block still reports its lexicographically first optimum; the reduction
     * prefers strictly better values and lower block index on ties. */
    void search_parallel() {
        const VarDef& v0 = model_.var(VarId{disc_[0]});
        const long lo = static_cast<long>(std::ceil(v0.lb - 1e-9));
        const long hi = static_cast<long>(std::floor(v0.ub + 1e-9));
        std::vector<long> vals;
        for (long val = lo; val <= hi; ++val) vals.push_back(val);

        std::atomic<double> shared(kInf);
        struct BlockResult {
            bool have = false, unbounded = false;
            double value = 0.0;
            std::vector<double> x;
            std::uint64_t nodes = 0, lps = 0;
        };
        std::vector<BlockResult> results(vals.size());
        std::atomic<std::size_t> next(0);
        const int nw = std::min<int>(cfg_.threads, static_cast<int>(vals.size()));
        std::vector<std::thread> workers;
        for (int w = 0; w < nw; ++w) {
            workers.emplace_back([&]() {
                for (;;) {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= vals.size()) return;
                    EnumSearch sub(model_, ExactConfig{cfg_.discrete_budget, cfg_.node_cap, 1});
                    sub.shared_best_ = &shared;
                    sub.fixed_val_[0] = static_cast<double>(vals[b]);
                    sub.dfs(1);
                    BlockResult& r = results[b];
                    r.have = sub.have_incumbent_;
                    r.unbounded = sub.unbounded_;
                    r.value = sub.incumbent_;
                    r.x = std::move(sub.best_x_);
                    r.nodes = sub.nodes_;
                    r.lps = sub.lps_;
                }
            });
        }
        for (auto& t : workers) t.join();
        for (std::size_t b = 0; b < results.size(); ++b) {
            const BlockResult& r = results[b];
            nodes_ += r.nodes;
            lps_ += r.lps;
            if (r.unbounded) unbounded_ = true;
            if (!r.have) continue;
            if (!have_incumbent_ || r.value < incumbent_ - tie_eps()) {
                incumbent_ = r.value;
                best_x_ = r.x;
                have_incumbent_ = true;
            }
        }
    }

    const MilpModel& model_;
    ExactConfig cfg_;
    LinExpr minimize_;
    std::vector<std::uint32_t> disc_;
    std::vector<double> fixed_val_;
    double incumbent_ = kInf;
    std::vector<double> best_x_;
    bool have_incumbent_ = false;
    bool unbounded_ = false;
    std::uint64_t nodes_ = 0, lps_ = 0;
    std::atomic<double>* shared_best_ = nullptr;
};

} // namespace detail

/* Exact optimization of a tiny MILP by exhaustive enumeration of the discrete
 * variables (with relaxation-bound pruning) and a dense two-phase simplex for
 * each continuous completion. */
inline Solution solve_exact_tiny(const MilpModel& model,
                                 const ExactConfig& cfg = {},
                                 SolveLog* log = nullptr) {
    detail::EnumSearch search(model, cfg);
    return search.run(log);
}

} // namespace dscpsc

#endif
