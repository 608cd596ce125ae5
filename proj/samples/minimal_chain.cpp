// Smallest end-to-end use of the library: build a tiny plan-or-buy model by
// hand and solve it with the embedded solver.
#include <cstdio>

#include "dscpsc/exact_solver.hpp"
#include "dscpsc/milp.hpp"

int main() {
    using namespace dscpsc;
    MilpModel m;

    // One refinery (capacity 80), one customer (demand 100); shortfall is
    // covered by imports at a premium.  Expanding the refinery by 40 units
    // costs a lump sum.
    auto expand = m.add_var("expand", VarKind::Binary);
    auto produce = m.add_var("produce", VarKind::Continuous, 0.0, kInf);
    auto import = m.add_var("import", VarKind::Continuous, 0.0, kInf);

    {
        LinExpr cap;
        cap.add(produce, 1.0);
        cap.add(expand, -40.0);
        m.add_constraint("capacity", cap, Sense::LE, 80.0);
    }
    {
        LinExpr bal;
        bal.add(produce, 1.0);
        bal.add(import, 1.0);
        m.add_constraint("demand", bal, Sense::GE, 100.0);
    }
    {
        LinExpr cost;                       // min 3*produce + 9*import + 150*expand
        cost.add(produce, 3.0);
        cost.add(import, 9.0);
        cost.add(expand, 150.0);
        m.set_objective("cost", cost, ObjSense::Minimize);
    }
    m.freeze();

    SolveLog log;
    Solution sol = solve_exact_tiny(m, {}, &log);
    std::printf("status: %s\n", status_str(sol.status));
    std::printf("expand=%g produce=%g import=%g cost=%g (nodes=%lld)\n",
                sol.at(expand), sol.at(produce), sol.at(import),
                sol.objective_values.at("cost"), static_cast<long long>(log.nodes));
    return sol.status == SolveStatus::Optimal ? 0 : 1;
}
