#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "dscpsc/exact_solver.hpp"

using namespace dscpsc;

namespace {

struct Knapsack {
    std::vector<double> value, weight;
    double cap = 0.0;
};

Knapsack random_knapsack(unsigned seed, int n) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> vdist(1, 30), wdist(1, 20);
    Knapsack k;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        k.value.push_back(vdist(rng));
        k.weight.push_back(wdist(rng));
        total += k.weight.back();
    }
    k.cap = std::floor(total / 2.0);
    return k;
}

/* Exhaustive reference: best value, and the lexicographically first subset
 * (x1 major, 0 before 1) attaining it -- the same tie-break the solver's
 * declaration-order DFS guarantees. */
void knapsack_oracle(const Knapsack& k, double* best_value, std::vector<int>* best_pick) {
    const int n = static_cast<int>(k.value.size());
    *best_value = -1.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double v = 0.0, w = 0.0;
        std::vector<int> pick(n, 0);
        for (int i = 0; i < n; ++i) {
            /* bit i corresponds to x_{i+1}; lexicographic order over
             * (x1,...,xn) = counting order when x1 is the high bit */
            if (mask & (1u << (n - 1 - i))) {
                pick[i] = 1;
                v += k.value[i];
                w += k.weight[i];
            }
        }
        if (w <= k.cap && v > *best_value) {
            *best_value = v;
            *best_pick = pick;
        }
    }
}

} // namespace

TEST_CASE("exact solver matches exhaustive knapsack enumeration") {
    for (unsigned seed : {11u, 22u, 33u}) {
        const Knapsack k = random_knapsack(seed, 10);
        double want_value = 0.0;
        std::vector<int> want_pick;
        knapsack_oracle(k, &want_value, &want_pick);

        MilpModel m;
        std::vector<VarId> xs;
        LinExpr wrow, vrow;
        for (std::size_t i = 0; i < k.value.size(); ++i) {
            VarId x = m.add_var({"x" + std::to_string(i + 1), VarKind::Binary});
            xs.push_back(x);
            wrow.add(x, k.weight[i]);
            vrow.add(x, k.value[i]);
        }
        m.add_constraint({"weight", wrow, Sense::LE, k.cap});
        m.set_objective("value", vrow, ObjSense::Maximize);
        m.freeze();

        SolveLog log;
        Solution sol = solve_exact_tiny(m, {}, &log);
        REQUIRE(sol.status == SolveStatus::Optimal);
        REQUIRE(sol.objective_values.at("value") == Catch::Approx(want_value).margin(1e-9));
        for (std::size_t i = 0; i < xs.size(); ++i)
            REQUIRE(sol.at(xs[i]) == Catch::Approx(want_pick[i]).margin(1e-9));
        REQUIRE(log.backend == "embedded-exact");
        REQUIRE(log.nodes > 0);
        REQUIRE(check_feasible(m, sol).empty());
    }
}

TEST_CASE("ties break toward the first optimum in declaration order") {
    /* max x + y st x + y <= 1: (0,1) and (1,0) tie; DFS tries x=0 first */
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Binary});
    VarId y = m.add_var({"y", VarKind::Binary});
    LinExpr row;
    row.add(x, 1.0);
    row.add(y, 1.0);
    m.add_constraint({"pick_one", row, Sense::LE, 1.0});
    m.set_objective("total", row, ObjSense::Maximize);
    m.freeze();

    Solution sol = solve_exact_tiny(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.at(x) == 0.0);
    REQUIRE(sol.at(y) == 1.0);
}

TEST_CASE("integer rounding and negative bounds") {
    /* max x st 2x <= 7, x integer in [-3, 10] -> 3 */
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Integer, -3.0, 10.0});
    LinExpr row;
    row.add(x, 2.0);
    m.add_constraint({"half", row, Sense::LE, 7.0});
    LinExpr obj;
    obj.add(x, 1.0);
    m.set_objective("x", obj, ObjSense::Maximize);
    m.freeze();
    Solution sol = solve_exact_tiny(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.at(x) == 3.0);

    /* min x over the same domain -> -3 */
    MilpModel m2;
    VarId x2 = m2.add_var({"x", VarKind::Integer, -3.0, 10.0});
    LinExpr obj2;
    obj2.add(x2, 1.0);
    m2.set_objective("x", obj2, ObjSense::Minimize);
    m2.freeze();
    Solution sol2 = solve_exact_tiny(m2);
    REQUIRE(sol2.status == SolveStatus::Optimal);
    REQUIRE(sol2.at(x2) == -3.0);
}

TEST_CASE("continuous variables with shifted bounds") {
    /* min y st y in [-5, -1] -> -5; exercises the x = lb + shift mapping */
    MilpModel m;
    VarId y = m.add_var({"y", VarKind::Continuous, -5.0, -1.0});
    LinExpr obj;
    obj.add(y, 1.0);
    m.set_objective("y", obj, ObjSense::Minimize);
    m.freeze();
    Solution sol = solve_exact_tiny(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.at(y) == Catch::Approx(-5.0).margin(1e-9));
}

TEST_CASE("objective constants are carried through") {
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Continuous, 0.0, 4.0});
    LinExpr obj(7.0);
    obj.add(x, 2.0);
    m.set_objective("shifted", obj, ObjSense::Maximize);
    m.freeze();
    Solution sol = solve_exact_tiny(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.objective_values.at("shifted") == Catch::Approx(15.0).margin(1e-9));
}

TEST_CASE("bound-fixed discrete variables do not branch") {
    MilpModel m;
    VarId a = m.add_var({"a", VarKind::Integer, 3.0, 3.0});
    VarId b = m.add_var({"b", VarKind::Binary});
    LinExpr obj;
    obj.add(a, 1.0);
    obj.add(b, 1.0);
    m.set_objective("sum", obj, ObjSense::Maximize);
    m.freeze();
    REQUIRE(m.num_free_discrete() == 1);
    Solution sol = solve_exact_tiny(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.at(a) == 3.0);
    REQUIRE(sol.at(b) == 1.0);
}

TEST_CASE("infeasible and unbounded models are classified") {
    {
        MilpModel m;
        VarId x = m.add_var({"x", VarKind::Binary});
        VarId y = m.add_var({"y", VarKind::Binary});
        LinExpr row;
        row.add(x, 1.0);
        row.add(y, 1.0);
        m.add_constraint({"impossible", row, Sense::GE, 3.0});
        LinExpr obj;
        obj.add(x, 1.0);
        m.set_objective("x", obj, ObjSense::Maximize);
        m.freeze();
        REQUIRE(solve_exact_tiny(m).status == SolveStatus::Infeasible);
    }
    {
        MilpModel m;
        VarId y = m.add_var({"y", VarKind::Continuous, 0.0, kInf});
        m.add_var({"flag", VarKind::Binary});
        LinExpr obj;
        obj.add(y, 1.0);
        m.set_objective("y", obj, ObjSense::Maximize);
        m.freeze();
        REQUIRE(solve_exact_tiny(m).status == SolveStatus::Unbounded);
    }
}

TEST_CASE("enumeration budgets are enforced") {
    {
        MilpModel m;
        for (int i = 0; i < 25; ++i)
            m.add_var({"b" + std::to_string(i), VarKind::Binary});
        LinExpr obj;
        obj.add(VarId{0}, 1.0);
        m.set_objective("o", obj, ObjSense::Maximize);
        m.freeze();
        REQUIRE_THROWS_AS(solve_exact_tiny(m), BudgetExceeded);
        /* a raised budget accepts the same model */
        ExactConfig wide;
        wide.discrete_budget = 32;
        REQUIRE(solve_exact_tiny(m, wide).status == SolveStatus::Optimal);
    }
    {
        MilpModel m;
        m.add_var({"n", VarKind::Integer, 0.0, kInf});
        LinExpr obj;
        obj.add(VarId{0}, 1.0);
        m.set_objective("o", obj, ObjSense::Minimize);
        m.freeze();
        REQUIRE_THROWS_AS(solve_exact_tiny(m), BudgetExceeded);
    }
}

TEST_CASE("parallel search returns the identical solution") {
    const Knapsack k = random_knapsack(77u, 12);
    MilpModel m;
    /* first variable is a wide integer so the block split has work to share */
    VarId lead = m.add_var({"lead", VarKind::Integer, 0.0, 6.0});
    LinExpr wrow, vrow;
    wrow.add(lead, 2.0);
    vrow.add(lead, 3.0);
    std::vector<VarId> xs{lead};
    for (std::size_t i = 0; i < k.value.size(); ++i) {
        VarId x = m.add_var({"x" + std::to_string(i + 1), VarKind::Binary});
        xs.push_back(x);
        wrow.add(x, k.weight[i]);
        vrow.add(x, k.value[i]);
    }
    m.add_constraint({"weight", wrow, Sense::LE, k.cap});
    m.set_objective("value", vrow, ObjSense::Maximize);
    m.freeze();

    ExactConfig serial;
    serial.discrete_budget = 16;
    ExactConfig par = serial;
    par.threads = 4;

    Solution s1 = solve_exact_tiny(m, serial);
    Solution s2 = solve_exact_tiny(m, par);
    REQUIRE(s1.status == SolveStatus::Optimal);
    REQUIRE(s2.status == SolveStatus::Optimal);
    REQUIRE(s1.objective_values.at("value") == s2.objective_values.at("value"));
    for (VarId x : xs) REQUIRE(s1.at(x) == s2.at(x));
}
