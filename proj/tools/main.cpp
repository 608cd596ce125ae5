// dscpsc command line front end.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dscpsc/builder.hpp"
#include "dscpsc/errors.hpp"
#include "dscpsc/fuzzy.hpp"
#include "dscpsc/instance.hpp"
#include "dscpsc/instance_io.hpp"
#include "dscpsc/mps.hpp"
#include "dscpsc/sensitivity.hpp"
#include "dscpsc/solver.hpp"

namespace {

constexpr int kExitOk = 0;         /* did what was asked */
constexpr int kExitValidation = 1; /* the instance file is no good */
constexpr int kExitSolver = 2;     /* solving failed or proved infeasible */
constexpr int kExitUsage = 64;     /* bad command line */

int env_jobs() {
    if (const char* env = std::getenv("DSCPSC_JOBS"); env && *env) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

dscpsc::SolverBackend make_backend(const std::string& name, const std::string& dialect) {
    if (name == "embedded") return dscpsc::SolverBackend::embedded();
    dscpsc::ExternalConfig cfg = dscpsc::default_external_config(DSCPSC_TOOLS_DIR);
    cfg.dialect = dialect;
    return dscpsc::SolverBackend::external_solver(cfg);
}

dscpsc::BuildOptions make_build_options(const std::string& labor_weight) {
    dscpsc::BuildOptions opts;
    opts.labor_weight =
        labor_weight == "uniform" ? dscpsc::LaborWeight::Uniform : dscpsc::LaborWeight::AsPrinted;
    return opts;
}

bool emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::fputs(payload.c_str(), stdout);
        return true;
    }
    std::ofstream os(out_path, std::ios::binary);
    os << payload;
    if (!os) {
        std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
        return false;
    }
    return true;
}

int load_or_complain(const std::string& path, dscpsc::ModelInstance& inst) {
    try {
        inst = dscpsc::load_instance(path);
    } catch (const dscpsc::Error& ex) {
        std::fprintf(stderr, "invalid: %s\n", ex.what());
        return kExitValidation;
    }
    for (const auto& w : dscpsc::instance_warnings(inst))
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    dscpsc::ModelInstance inst;
    if (const int rc = load_or_complain(path, inst); rc != kExitOk) return rc;
    std::printf("ok: %s (%zu refineries, %zu dcs, %zu stakeholders, %zu periods)\n",
                inst.name.c_str(), inst.nK() + inst.nKc(), inst.nL() + inst.nLc(), inst.nE(),
                inst.nT());
    return kExitOk;
}

int cmd_build(const std::string& path, const std::string& mps_path,
              const std::string& report_path, const std::string& labor_weight) {
    dscpsc::ModelInstance inst;
    if (const int rc = load_or_complain(path, inst); rc != kExitOk) return rc;
    dscpsc::BuildReport report;
    const dscpsc::MilpModel model =
        dscpsc::build_model(inst, make_build_options(labor_weight), &report);
    if (!mps_path.empty()) {
        dscpsc::write_mps(model, mps_path, inst.name.empty() ? "DSCPSC" : inst.name);
        std::printf("wrote %s\n", mps_path.c_str());
    }
    if (!report_path.empty()) {
        if (!emit(report_path, report.text())) return kExitValidation;
        std::printf("wrote %s\n", report_path.c_str());
    }
    std::printf("model: %zu vars (%zu free discrete), %zu constraints\n", report.num_vars,
                report.num_free_discrete, report.num_constraints);
    return kExitOk;
}

dscpsc::FuzzyOptions make_fuzzy_options(const std::string& mode, int jobs) {
    dscpsc::FuzzyOptions opts;
    opts.mode = mode == "per-stakeholder" ? dscpsc::ScalarizeMode::PerStakeholder
                                          : dscpsc::ScalarizeMode::Chain;
    opts.jobs = jobs;
    return opts;
}

int cmd_solve(const std::string& path, const std::string& backend_name,
              const std::string& dialect, const std::string& mode, int jobs,
              const std::string& labor_weight, const std::string& format,
              const std::string& save_report) {
    dscpsc::ModelInstance inst;
    if (const int rc = load_or_complain(path, inst); rc != kExitOk) return rc;
    const dscpsc::SolverBackend backend = make_backend(backend_name, dialect);
    const dscpsc::FuzzyReport rep = dscpsc::solve_fuzzy(inst, backend,
                                                        make_fuzzy_options(mode, jobs),
                                                        make_build_options(labor_weight));
    if (!emit("", format == "json" ? rep.to_json() + "\n" : rep.text())) return kExitSolver;
    if (!save_report.empty() && !emit(save_report, rep.to_json() + "\n")) return kExitSolver;
    return rep.solved() ? kExitOk : kExitSolver;
}

int cmd_sensitivity(const std::string& path, const std::string& backend_name,
                    const std::string& dialect, const std::string& mode,
                    const std::vector<std::string>& groups, const std::vector<double>& levels,
                    const std::string& metric, bool freeze_bounds, int jobs,
                    const std::string& labor_weight, const std::string& format,
                    const std::string& out_path) {
    dscpsc::ModelInstance inst;
    if (const int rc = load_or_complain(path, inst); rc != kExitOk) return rc;
    for (const std::string& g : groups) {
        try {
            dscpsc::find_group(g);
        } catch (const dscpsc::Error& ex) {
            std::fprintf(stderr, "error: %s\n", ex.what());
            return kExitUsage;
        }
    }
    dscpsc::SensitivityOptions opts;
    opts.groups = groups;
    if (!levels.empty()) opts.levels = levels;
    opts.metric = dscpsc::metric_from_str(metric);
    opts.freeze_bounds = freeze_bounds;
    opts.jobs = jobs;
    opts.fuzzy = make_fuzzy_options(mode, 1);
    opts.build = make_build_options(labor_weight);
    const dscpsc::SensitivityReport rep =
        dscpsc::run_sensitivity(inst, make_backend(backend_name, dialect), opts);
    const std::string payload = format == "csv"    ? rep.csv()
                                : format == "json" ? rep.to_json() + "\n"
                                                   : rep.text();
    return emit(out_path, payload) ? kExitOk : kExitSolver;
}

int cmd_report(const std::string& path, const std::string& backend_name,
               const std::string& dialect, const std::string& mode, int jobs,
               const std::string& labor_weight, const std::string& format,
               const std::string& out_path) {
    dscpsc::ModelInstance inst;
    if (const int rc = load_or_complain(path, inst); rc != kExitOk) return rc;
    const dscpsc::SolverBackend backend = make_backend(backend_name, dialect);
    const dscpsc::BuildOptions build = make_build_options(labor_weight);
    const dscpsc::FuzzyReport rep =
        dscpsc::solve_fuzzy(inst, backend, make_fuzzy_options(mode, jobs), build);
    if (!rep.solved()) {
        std::fprintf(stderr, "error: solve ended %s; nothing to decompose\n",
                     dscpsc::status_str(rep.status));
        return kExitSolver;
    }
    const dscpsc::CostBreakdown bd = dscpsc::cost_breakdown_report(inst, rep, build);
    const std::string payload = format == "csv"    ? bd.csv()
                                : format == "json" ? bd.to_json() + "\n"
                                                   : bd.text();
    return emit(out_path, payload) ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dscpsc - petroleum supply chain planning toolkit"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string backend_name = "embedded";
    std::string dialect = "highs";
    std::string objective_mode = "chain";
    std::string labor_weight = "printed";
    std::string format = "table";
    std::string out_path;
    int jobs = env_jobs();

    auto add_backend_flags = [&](CLI::App* cmd) {
        cmd->add_option("--backend", backend_name, "solver backend")
            ->check(CLI::IsMember({"embedded", "external"}))
            ->capture_default_str();
        cmd->add_option("--dialect", dialect, "external solution dialect")
            ->check(CLI::IsMember({"highs", "cbc"}))
            ->capture_default_str();
        cmd->add_option("--objective-mode", objective_mode, "scalarized objective set")
            ->check(CLI::IsMember({"chain", "per-stakeholder"}))
            ->capture_default_str();
        cmd->add_option("--labor-weight", labor_weight, "labor transfer weighting")
            ->check(CLI::IsMember({"printed", "uniform"}))
            ->capture_default_str();
        cmd->add_option("--jobs", jobs, "parallel solves (default: DSCPSC_JOBS or 1)")
            ->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "check an instance file");
    validate->add_option("instance", instance_path, "instance JSON file")->required();

    std::string mps_path, report_path;
    auto* build = app.add_subcommand("build", "construct the model without solving");
    build->add_option("instance", instance_path, "instance JSON file")->required();
    build->add_option("--emit-mps", mps_path, "write the model in MPS format");
    build->add_option("--report", report_path, "write the family tally");
    build->add_option("--labor-weight", labor_weight, "labor transfer weighting")
        ->check(CLI::IsMember({"printed", "uniform"}));

    auto* solve = app.add_subcommand("solve", "run the fuzzy compromise pipeline");
    solve->add_option("instance", instance_path, "instance JSON file")->required();
    add_backend_flags(solve);
    std::string save_report;
    solve->add_option("--save-report", save_report, "also write the JSON report here");
    solve->add_option("--format", format, "stdout rendering")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    std::vector<std::string> groups;
    std::vector<double> levels;
    std::string metric = "profit";
    bool freeze_bounds = false;
    auto* sens = app.add_subcommand("sensitivity", "perturb cost groups and re-solve");
    sens->add_option("instance", instance_path, "instance JSON file")->required();
    add_backend_flags(sens);
    sens->add_option("--groups", groups, "parameter groups (default: all)")->delimiter(',');
    sens->add_option("--levels", levels, "percent levels, e.g. --levels=-30,-10,10,30")
        ->delimiter(',');
    sens->add_option("--metric", metric, "reported quantity")
        ->check(CLI::IsMember({"profit", "lambda", "cost"}))
        ->capture_default_str();
    sens->add_flag("--freeze-bounds", freeze_bounds,
                   "reuse the base anchors everywhere (approximate)");
    sens->add_option("--format", format, "rendering")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    sens->add_option("--out", out_path, "write here instead of stdout");

    auto* report = app.add_subcommand("report", "solve and decompose the stakeholder costs");
    report->add_option("instance", instance_path, "instance JSON file")->required();
    add_backend_flags(report);
    report->add_option("--format", format, "rendering")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    report->add_option("--out", out_path, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); /* --help and friends */
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(instance_path);
        if (app.got_subcommand("build"))
            return cmd_build(instance_path, mps_path, report_path, labor_weight);
        if (app.got_subcommand("solve"))
            return cmd_solve(instance_path, backend_name, dialect, objective_mode, jobs,
                             labor_weight, format, save_report);
        if (app.got_subcommand("sensitivity"))
            return cmd_sensitivity(instance_path, backend_name, dialect, objective_mode, groups,
                                   levels, metric, freeze_bounds, jobs, labor_weight, format,
                                   out_path);
        if (app.got_subcommand("report"))
            return cmd_report(instance_path, backend_name, dialect, objective_mode, jobs,
                              labor_weight, format, out_path);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitSolver;
    }
    return kExitOk;
}
