#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "dscpsc/solver.hpp"
#include "support.hpp"

using namespace dscpsc;

namespace {

ExternalConfig tool_config() {
    return default_external_config(DSCPSC_TOOLS_DIR);
}

MilpModel toy_max_model(VarId* px, VarId* py) {
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Integer, 0.0, 10.0});
    VarId y = m.add_var({"y", VarKind::Integer, 0.0, 10.0});
    LinExpr cap;
    cap.add(x, 1.0);
    cap.add(y, 1.0);
    m.add_constraint({"cap", cap, Sense::LE, 4.0});
    LinExpr xr;
    xr.add(x, 1.0);
    m.add_constraint({"xcap", xr, Sense::LE, 2.0});
    LinExpr obj;
    obj.add(x, 3.0);
    obj.add(y, 2.0);
    m.set_objective("profit", obj, ObjSense::Maximize);
    m.freeze();
    *px = x;
    *py = y;
    return m;
}

} // namespace

TEST_CASE("external backend solves a toy model") {
    VarId x, y;
    MilpModel m = toy_max_model(&x, &y);
    SolveLog log;
    Solution sol = solve_external(m, tool_config(), &log);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.objective_values.at("profit") == Catch::Approx(10.0).margin(1e-6));
    REQUIRE(sol.at(x) == Catch::Approx(2.0).margin(1e-6));
    REQUIRE(sol.at(y) == Catch::Approx(2.0).margin(1e-6));
    REQUIRE(log.backend == "external");
}

TEST_CASE("external backend reports infeasible and unbounded models") {
    {
        MilpModel m;
        VarId x = m.add_var({"x", VarKind::Binary});
        LinExpr row;
        row.add(x, 1.0);
        m.add_constraint({"impossible", row, Sense::GE, 2.0});
        m.set_objective("o", row, ObjSense::Maximize);
        m.freeze();
        REQUIRE(solve_external(m, tool_config()).status == SolveStatus::Infeasible);
    }
    {
        MilpModel m;
        VarId y = m.add_var({"y", VarKind::Continuous, 0.0, kInf});
        LinExpr obj;
        obj.add(y, 1.0);
        m.set_objective("o", obj, ObjSense::Maximize);
        m.freeze();
        REQUIRE(solve_external(m, tool_config()).status == SolveStatus::Unbounded);
    }
}

TEST_CASE("objective constants survive the mps round trip") {
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Continuous, 0.0, 4.0});
    LinExpr obj(7.0);
    obj.add(x, 2.0);
    m.set_objective("shifted", obj, ObjSense::Maximize);
    m.freeze();
    Solution sol = solve_external(m, tool_config());
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.objective_values.at("shifted") == Catch::Approx(15.0).margin(1e-6));
}

TEST_CASE("both backends agree on random tiny milps") {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> rhs(2, 20);
    std::uniform_int_distribution<int> kind_pick(0, 2);

    int optimal_seen = 0;
    for (int rep = 0; rep < 10; ++rep) {
        MilpModel m;
        std::vector<VarId> ids;
        for (int j = 0; j < 4; ++j) {
            const int kp = kind_pick(rng);
            VarDef d;
            d.name = "v" + std::to_string(j);
            if (kp == 0) d = {d.name, VarKind::Binary};
            else if (kp == 1) d = {d.name, VarKind::Integer, 0.0, 6.0};
            else d = {d.name, VarKind::Continuous, 0.0, 12.0};
            ids.push_back(m.add_var(d));
        }
        for (int r = 0; r < 3; ++r) {
            LinExpr row;
            for (VarId id : ids) row.add(id, coeff(rng));
            m.add_constraint({"r" + std::to_string(r), row, Sense::LE, static_cast<double>(rhs(rng))});
        }
        LinExpr obj;
        for (VarId id : ids) obj.add(id, coeff(rng));
        m.set_objective("score", obj, ObjSense::Maximize);
        m.freeze();

        Solution mine = solve(m, SolverBackend::embedded());
        Solution theirs = solve(m, SolverBackend::external_solver(tool_config()));
        REQUIRE(mine.status == theirs.status);
        if (mine.status == SolveStatus::Optimal) {
            ++optimal_seen;
            const double a = mine.objective_values.at("score");
            const double b = theirs.objective_values.at("score");
            REQUIRE(std::abs(a - b) <= std::max(1e-6, 1e-6 * std::abs(a)));
            REQUIRE(check_feasible(m, theirs).empty());
        }
    }
    REQUIRE(optimal_seen >= 5); /* the family is mostly feasible by design */
}

TEST_CASE("solver facade evaluates every named objective") {
    VarId x, y;
    MilpModel m = toy_max_model(&x, &y);
    m.unfreeze();
    LinExpr usage;
    usage.add(x, 1.0);
    usage.add(y, 1.0);
    m.set_objective("usage", usage, ObjSense::Minimize);
    m.set_active_objective("profit");
    m.freeze();

    for (auto backend : {SolverBackend::embedded(), SolverBackend::external_solver(tool_config())}) {
        Solution sol = solve(m, backend);
        REQUIRE(sol.status == SolveStatus::Optimal);
        REQUIRE(sol.objective_values.count("profit") == 1);
        REQUIRE(sol.objective_values.count("usage") == 1);
        REQUIRE(sol.objective_values.at("profit") == Catch::Approx(10.0).margin(1e-6));
        REQUIRE(sol.objective_values.at("usage") == Catch::Approx(4.0).margin(1e-6));
    }
}

TEST_CASE("environment override shapes the command template") {
    setenv("DSCPSC_SOLVER", "mysolver --fast {model}", 1);
    ExternalConfig cfg = default_external_config("/unused");
    unsetenv("DSCPSC_SOLVER");
    REQUIRE(cfg.argv.size() == 4);
    REQUIRE(cfg.argv[0] == "mysolver");
    REQUIRE(cfg.argv[1] == "--fast");
    REQUIRE(cfg.argv[2] == "{model}");
    REQUIRE(cfg.argv[3] == "{solution}"); /* appended because absent */
}

TEST_CASE("crashed or misconfigured solvers raise typed errors") {
    MilpModel m;
    VarId x = m.add_var({"x", VarKind::Continuous, 0.0, 1.0});
    LinExpr obj;
    obj.add(x, 1.0);
    m.set_objective("o", obj, ObjSense::Maximize);
    m.freeze();

    {
        ExternalConfig cfg;
        cfg.argv = {"/bin/false", "{model}", "{solution}"};
        REQUIRE_THROWS_AS(solve_external(m, cfg), SolverCrashed);
    }
    {
        ExternalConfig cfg;
        cfg.argv = {"/nonexistent/solver-binary", "{model}", "{solution}"};
        REQUIRE_THROWS_AS(solve_external(m, cfg), SolverCrashed);
    }
    {
        ExternalConfig cfg = tool_config();
        cfg.dialect = "esoteric";
        REQUIRE_THROWS_AS(solve_external(m, cfg), SolutionParseError);
    }
    {
        ExternalConfig cfg;
        cfg.argv = {};
        REQUIRE_THROWS_AS(solve_external(m, cfg), SolverCrashed);
    }
}
