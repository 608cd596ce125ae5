#ifndef DSCPSC_SOLVER_HPP
#define DSCPSC_SOLVER_HPP

#include <string>

#include "dscpsc/exact_solver.hpp"
#include "dscpsc/external_solver.hpp"
#include "dscpsc/milp.hpp"

namespace dscpsc {

/* Backend selector.  "embedded" enumerates exactly and refuses big models;
 * "external" shells out to a subprocess solver via MPS files. */
struct SolverBackend {
    enum class Kind { Embedded, External };
    Kind kind = Kind::Embedded;
    ExactConfig exact;
    ExternalConfig external;

    static SolverBackend embedded(ExactConfig cfg = {}) {
        SolverBackend b;
        b.kind = Kind::Embedded;
        b.exact = cfg;
        return b;
    }
    static SolverBackend external_solver(ExternalConfig cfg) {
        SolverBackend b;
        b.kind = Kind::External;
        b.external = std::move(cfg);
        return b;
    }
};

/* Optimize the model's active objective with the chosen backend.  On success
 * every named objective of the model is evaluated at the returned point. */
inline Solution solve(const MilpModel& model, const SolverBackend& backend,
                      SolveLog* log = nullptr) {
    Solution sol = backend.kind == SolverBackend::Kind::Embedded
                       ? solve_exact_tiny(model, backend.exact, log)
                       : solve_external(model, backend.external, log);
    if (sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible) {
        for (const auto& [name, obj] : model.objectives())
            sol.objective_values[name] = eval(obj.expr, sol);
    }
    return sol;
}

} // namespace dscpsc

#endif
