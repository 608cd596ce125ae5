#ifndef DSCPSC_MILP_HPP
#define DSCPSC_MILP_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dscpsc/errors.hpp"

namespace dscpsc {

/* Strongly typed handle into a MilpModel's variable list. */
struct VarId {
    std::uint32_t v = std::numeric_limits<std::uint32_t>::max();

    bool valid() const { return v != std::numeric_limits<std::uint32_t>::max(); }
    bool operator==(const VarId& o) const { return v == o.v; }
    bool operator!=(const VarId& o) const { return v != o.v; }
    bool operator<(const VarId& o) const { return v < o.v; }
};

struct VarIdHash {
    std::size_t operator()(const VarId& id) const { return std::hash<std::uint32_t>()(id.v); }
};

enum class VarKind { Binary, Integer, Continuous };

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarDef {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf; /* Binary is forced to [0,1] at add time. */

    bool is_discrete() const { return kind != VarKind::Continuous; }
    /* A variable whose bounds admit a single value does not branch. */
    bool is_fixed() const { return lb == ub; }
};

/* Sparse linear expression: sum of coefficient*var plus a constant.
 * Terms are kept keyed by VarId so iteration order is deterministic;
 * inserting an existing id merges additively and zero coefficients are
 * dropped on normalize(). */
class LinExpr {
public:
    LinExpr() = default;
    explicit LinExpr(double c) : constant_(c) {}

    void add(VarId id, double coeff) {
        if (coeff == 0.0) return;
        auto [it, fresh] = terms_.try_emplace(id, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0.0) terms_.erase(it);
        }
    }
    void add_constant(double c) { constant_ += c; }

    LinExpr& operator+=(const LinExpr& o) {
        for (const auto& [id, c] : o.terms_) add(id, c);
        constant_ += o.constant_;
        return *this;
    }
    LinExpr& operator*=(double s) {
        if (s == 0.0) { terms_.clear(); constant_ = 0.0; return *this; }
        for (auto& [id, c] : terms_) c *= s;
        constant_ *= s;
        return *this;
    }

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0.0) it = terms_.erase(it); else ++it;
        }
    }

    const std::map<VarId, double>& terms() const { return terms_; }
    double constant() const { return constant_; }
    std::size_t size() const { return terms_.size(); }
    double coeff(VarId id) const {
        auto it = terms_.find(id);
        return it == terms_.end() ? 0.0 : it->second;
    }

private:
    std::map<VarId, double> terms_;
    double constant_ = 0.0;
};

inline LinExpr operator*(LinExpr e, double s) {
    e *= s;
    return e;
}
inline LinExpr operator*(double s, LinExpr e) {
    e *= s;
    return e;
}
inline LinExpr operator+(LinExpr a, const LinExpr& b) {
    a += b;
    return a;
}

enum class Sense { LE, EQ, GE };

inline const char* sense_str(Sense s) {
    switch (s) {
        case Sense::LE: return "<=";
        case Sense::EQ: return "=";
        default: return ">=";
    }
}

struct Constraint {
    std::string name; /* family tag + index tuple, e.g. "eq23[p1,k1,l1,road,t1,e1]" */
    LinExpr expr;
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

enum class ObjSense { Maximize, Minimize };

struct Objective {
    LinExpr expr;
    ObjSense sense = ObjSense::Maximize;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Error };

inline const char* status_str(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        default: return "error";
    }
}

struct Solution {
    std::unordered_map<VarId, double, VarIdHash> values;
    SolveStatus status = SolveStatus::Error;
    std::map<std::string, double> objective_values;

    void set(VarId id, double v) { values[id] = v; }
    bool has(VarId id) const { return values.count(id) != 0; }
    double at(VarId id) const {
        auto it = values.find(id);
        if (it == values.end()) throw MissingValue("var#" + std::to_string(id.v));
        return it->second;
    }
};

struct ViolatedConstraint {
    std::string name;
    Sense sense;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0; /* positive amount by which the row is broken */
};

/* Ordered collection of variables, constraints and named objectives.
 * Construction is additive; freeze() makes the model immutable so it can be
 * shared across solver backends and report writers. */
class MilpModel {
public:
    VarId add_var(const VarDef& def) {
        check_frozen("add_var");
        if (def.name.empty()) throw Error("variable name must be non-empty");
        if (var_index_.count(def.name)) throw DuplicateName(def.name);
        VarDef d = def;
        if (d.kind == VarKind::Binary) { d.lb = 0.0; d.ub = 1.0; }
        if (d.lb > d.ub)
            throw Error("variable '" + d.name + "' has empty bound interval");
        VarId id{static_cast<std::uint32_t>(vars_.size())};
        var_index_.emplace(d.name, id);
        vars_.push_back(std::move(d));
        return id;
    }

    VarId add_var(const std::string& name, VarKind kind, double lb = 0.0, double ub = kInf) {
        return add_var(VarDef{name, kind, lb, ub});
    }

    /* Tighten (or relax) a variable's box after declaration.  Binaries stay
     * within {0,1}; use [0,0] / [1,1] to pin one. */
    void set_var_bounds(VarId id, double lb, double ub) {
        check_frozen("set_var_bounds");
        VarDef& d = vars_.at(id.v);
        if (lb > ub)
            throw Error("variable '" + d.name + "' has empty bound interval");
        if (d.kind == VarKind::Binary && (lb < 0.0 || ub > 1.0))
            throw Error("variable '" + d.name + "' is binary; bounds must stay in [0,1]");
        d.lb = lb;
        d.ub = ub;
    }

    void add_constraint(Constraint c) {
        check_frozen("add_constraint");
        if (c.name.empty()) throw Error("constraint name must be non-empty");
        if (con_names_.count(c.name)) throw DuplicateName(c.name);
        c.expr.normalize();
        /* fold any affine part into the rhs so every stored row is a pure
         * linear form; keeps the MPS image and the solvers in agreement */
        if (c.expr.constant() != 0.0) {
            c.rhs -= c.expr.constant();
            c.expr.add_constant(-c.expr.constant());
        }
        con_names_.insert(c.name);
        cons_.push_back(std::move(c));
    }

    void add_constraint(std::string name, LinExpr expr, Sense sense, double rhs) {
        add_constraint(Constraint{std::move(name), std::move(expr), sense, rhs});
    }

    void set_objective(const std::string& name, LinExpr expr, ObjSense sense) {
        check_frozen("set_objective");
        expr.normalize();
        objectives_[name] = Objective{std::move(expr), sense};
        if (active_objective_.empty()) active_objective_ = name;
    }

    void set_active_objective(const std::string& name) {
        /* switching the active objective is allowed on frozen models: it does
         * not change the feasible set, only which named objective a backend
         * optimizes next. */
        if (!objectives_.count(name)) throw Error("unknown objective: " + name);
        active_objective_ = name;
    }

    void freeze() { frozen_ = true; }
    /* Deliberate opt-out, e.g. to append scalarization rows to a copy. */
    void unfreeze() { frozen_ = false; }
    bool frozen() const { return frozen_; }

    /* Drop trailing variables/constraints down to the given counts.  Supports
     * undoing a scalarization (which only appends); throws if the counts are
     * larger than what is present. */
    void truncate(std::size_t var_count, std::size_t con_count) {
        check_frozen("truncate");
        if (var_count > vars_.size() || con_count > cons_.size())
            throw Error("truncate: counts exceed current sizes");
        while (cons_.size() > con_count) {
            con_names_.erase(cons_.back().name);
            cons_.pop_back();
        }
        while (vars_.size() > var_count) {
            var_index_.erase(vars_.back().name);
            vars_.pop_back();
        }
    }

    void remove_objective(const std::string& name) {
        check_frozen("remove_objective");
        objectives_.erase(name);
        if (active_objective_ == name)
            active_objective_ = objectives_.empty() ? std::string() : objectives_.begin()->first;
    }

    const std::vector<VarDef>& vars() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    const std::map<std::string, Objective>& objectives() const { return objectives_; }
    const std::string& active_objective_name() const { return active_objective_; }

    const Objective& active_objective() const {
        auto it = objectives_.find(active_objective_);
        if (it == objectives_.end()) throw Error("model has no active objective");
        return it->second;
    }

    const VarDef& var(VarId id) const { return vars_.at(id.v); }
    std::optional<VarId> find_var(const std::string& name) const {
        auto it = var_index_.find(name);
        if (it == var_index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t num_vars() const { return vars_.size(); }
    std::size_t num_constraints() const { return cons_.size(); }

    std::size_t num_discrete() const {
        std::size_t n = 0;
        for (const auto& v : vars_) if (v.is_discrete()) ++n;
        return n;
    }
    /* Discrete variables whose bounds still admit more than one value. */
    std::size_t num_free_discrete() const {
        std::size_t n = 0;
        for (const auto& v : vars_) if (v.is_discrete() && !v.is_fixed()) ++n;
        return n;
    }

private:
    void check_frozen(const char* op) const {
        if (frozen_) throw FrozenModel(op);
    }

    std::vector<VarDef> vars_;
    std::unordered_map<std::string, VarId> var_index_;
    std::vector<Constraint> cons_;
    std::unordered_set<std::string> con_names_;
    std::map<std::string, Objective> objectives_;
    std::string active_objective_;
    bool frozen_ = false;
};

/* Evaluate a linear expression at a point using Neumaier compensated
 * summation.  Terms are visited in VarId order, so the result is identical
 * across runs for the same expression and point. */
inline double eval(const LinExpr& expr, const Solution& sol) {
    double sum = expr.constant();
    double comp = 0.0;
    for (const auto& [id, c] : expr.terms()) {
        const double term = c * sol.at(id);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

/* Same, against a dense point indexed by VarId. */
inline double eval(const LinExpr& expr, const std::vector<double>& x) {
    double sum = expr.constant();
    double comp = 0.0;
    for (const auto& [id, c] : expr.terms()) {
        if (id.v >= x.size()) throw MissingValue("var#" + std::to_string(id.v));
        const double term = c * x[id.v];
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

/* Check every constraint and variable bound of a model at a candidate point.
 * Returns the violated rows with their residuals; empty means feasible at
 * tolerance `tol`. */
inline std::vector<ViolatedConstraint> check_feasible(const MilpModel& model,
                                                      const Solution& sol,
                                                      double tol = 1e-6,
                                                      double int_tol = 1e-6) {
    std::vector<ViolatedConstraint> out;
    for (const auto& c : model.constraints()) {
        const double lhs = eval(c.expr, sol);
        double resid = 0.0;
        switch (c.sense) {
            case Sense::LE: resid = lhs - c.rhs; break;
            case Sense::GE: resid = c.rhs - lhs; break;
            case Sense::EQ: resid = std::abs(lhs - c.rhs); break;
        }
        if (resid > tol)
            out.push_back({c.name, c.sense, lhs, c.rhs, resid});
    }
    for (std::size_t i = 0; i < model.num_vars(); ++i) {
        const VarDef& v = model.var(VarId{static_cast<std::uint32_t>(i)});
        const double x = sol.at(VarId{static_cast<std::uint32_t>(i)});
        if (x < v.lb - tol)
            out.push_back({"bound_lo(" + v.name + ")", Sense::GE, x, v.lb, v.lb - x});
        if (x > v.ub + tol)
            out.push_back({"bound_up(" + v.name + ")", Sense::LE, x, v.ub, x - v.ub});
        if (v.is_discrete()) {
            const double frac = std::abs(x - std::round(x));
            if (frac > int_tol)
                out.push_back({"integrality(" + v.name + ")", Sense::EQ, x, std::round(x), frac});
        }
    }
    return out;
}

} // namespace dscpsc

#endif
