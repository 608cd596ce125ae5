#ifndef DSCPSC_EXTERNAL_SOLVER_HPP
#define DSCPSC_EXTERNAL_SOLVER_HPP

#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>
#include <signal.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dscpsc/errors.hpp"
#include "dscpsc/exact_solver.hpp"
#include "dscpsc/milp.hpp"
#include "dscpsc/mps.hpp"

namespace dscpsc {

/* Configuration for a subprocess MILP solver.  The argv template is expanded
 * per solve: "{model}" and "{solution}" become the temp file paths, a token
 * containing "{time_limit}" gets the limit in seconds substituted (or is
 * dropped entirely when no limit is set). */
struct ExternalConfig {
    std::vector<std::string> argv;      /* e.g. {"python3", ".../mps_tool.py", "solve",
                                           "{model}", "{solution}", "--time-limit={time_limit}"} */
    std::string dialect = "highs";      /* solution file layout: "highs" or "cbc" */
    double time_limit_s = 0.0;          /* 0 = unlimited */
    bool keep_files = false;            /* leave the temp dir behind for debugging */
};

/* Default configuration: honours the DSCPSC_SOLVER environment variable
 * (whitespace-separated argv template; "{model}"/"{solution}" appended when
 * absent), otherwise runs the bundled python adapter from `tools_dir`. */
inline ExternalConfig default_external_config(const std::string& tools_dir) {
    ExternalConfig cfg;
    if (const char* env = std::getenv("DSCPSC_SOLVER"); env && *env) {
        std::istringstream is(env);
        std::string tok;
        bool saw_model = false, saw_solution = false;
        while (is >> tok) {
            if (tok.find("{model}") != std::string::npos) saw_model = true;
            if (tok.find("{solution}") != std::string::npos) saw_solution = true;
            cfg.argv.push_back(tok);
        }
        if (!saw_model) cfg.argv.push_back("{model}");
        if (!saw_solution) cfg.argv.push_back("{solution}");
        return cfg;
    }
    cfg.argv = {"python3", tools_dir + "/mps_tool.py", "solve",
                "{model}", "{solution}", "--time-limit={time_limit}"};
    return cfg;
}

namespace detail {

struct ParsedSolution {
    SolveStatus status = SolveStatus::Error;
    bool has_values = false;
    std::vector<std::pair<std::string, double>> values; /* mangled name -> value */
};

inline ParsedSolution parse_solution_highs(const std::string& text) {
    ParsedSolution out;
    std::istringstream is(text);
    std::string line;
    std::string status_line;
    bool after_status_header = false;
    while (std::getline(is, line)) {
        if (line == "Model status") { after_status_header = true; continue; }
        if (after_status_header && !line.empty()) { status_line = line; break; }
    }
    if (status_line.empty())
        throw SolutionParseError("no 'Model status' section found");
    if (status_line == "Optimal") out.status = SolveStatus::Optimal;
    else if (status_line == "Infeasible") out.status = SolveStatus::Infeasible;
    else if (status_line == "Unbounded") out.status = SolveStatus::Unbounded;
    else if (status_line == "Time limit reached") out.status = SolveStatus::Feasible;
    else out.status = SolveStatus::Error;

    while (std::getline(is, line)) {
        if (line.rfind("# Columns", 0) == 0) {
            std::istringstream hs(line.substr(9));
            long n = 0;
            hs >> n;
            for (long i = 0; i < n; ++i) {
                if (!std::getline(is, line))
                    throw SolutionParseError("column section truncated");
                std::istringstream ls(line);
                std::string name;
                double v = 0.0;
                if (!(ls >> name >> v))
                    throw SolutionParseError("bad column line: '" + line + "'");
                out.values.emplace_back(name, v);
            }
            out.has_values = true;
            break;
        }
    }
    return out;
}

inline ParsedSolution parse_solution_cbc(const std::string& text) {
    ParsedSolution out;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line))
        throw SolutionParseError("empty solution file");
    if (line.rfind("Optimal", 0) == 0) out.status = SolveStatus::Optimal;
    else if (line.rfind("Infeasible", 0) == 0) out.status = SolveStatus::Infeasible;
    else if (line.rfind("Unbounded", 0) == 0) out.status = SolveStatus::Unbounded;
    else if (line.rfind("Stopped", 0) == 0) out.status = SolveStatus::Feasible;
    else out.status = SolveStatus::Error;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        long idx = 0;
        std::string name;
        double v = 0.0;
        if (ls >> idx >> name >> v) {
            out.values.emplace_back(name, v);
            out.has_values = true;
        }
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string tail_of(const std::string& s, std::size_t max_len = 800) {
    if (s.size() <= max_len) return s;
    return "..." + s.substr(s.size() - max_len);
}

/* fork/exec with stderr captured and a hard wall-clock kill. */
inline int run_subprocess(const std::vector<std::string>& argv,
                          const std::string& stderr_path,
                          double hard_deadline_s,
                          bool* killed) {
    *killed = false;
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    const pid_t pid = fork();
    if (pid < 0) throw SolverCrashed(std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        FILE* err = std::fopen(stderr_path.c_str(), "w");
        if (err) { dup2(fileno(err), 2); std::fclose(err); }
        execvp(cargv[0], cargv.data());
        std::fprintf(stderr, "execvp(%s) failed: %s\n", cargv[0], std::strerror(errno));
        _exit(127);
    }
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        int wstatus = 0;
        const pid_t r = waitpid(pid, &wstatus, WNOHANG);
        if (r == pid) {
            if (WIFEXITED(wstatus)) return WEXITSTATUS(wstatus);
            if (WIFSIGNALED(wstatus)) return 128 + WTERMSIG(wstatus);
            return -1;
        }
        if (r < 0) throw SolverCrashed(std::string("waitpid failed: ") + std::strerror(errno));
        if (hard_deadline_s > 0.0) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (elapsed > hard_deadline_s) {
                kill(pid, SIGKILL);
                waitpid(pid, &wstatus, 0);
                *killed = true;
                return -1;
            }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
}

} // namespace detail

/* Solve by writing the model to MPS, invoking the configured subprocess and
 * parsing its solution file.  Claimed-feasible solutions are re-checked with
 * check_feasible before being returned. */
inline Solution solve_external(const MilpModel& model,
                               const ExternalConfig& cfg,
                               SolveLog* log = nullptr) {
    if (cfg.argv.empty())
        throw SolverCrashed("external solver argv template is empty");
    const auto t0 = std::chrono::steady_clock::now();

    char tmpl[] = "/tmp/dscpsc-XXXXXX";
    if (!mkdtemp(tmpl)) throw IoError(std::string("mkdtemp failed: ") + std::strerror(errno));
    const std::string dir = tmpl;
    const std::string model_path = dir + "/model.mps";
    const std::string sol_path = dir + "/solution.sol";
    const std::string err_path = dir + "/stderr.txt";

    struct Cleanup {
        std::string dir;
        bool keep;
        ~Cleanup() {
            if (keep) return;
            std::remove((dir + "/model.mps").c_str());
            std::remove((dir + "/solution.sol").c_str());
            std::remove((dir + "/stderr.txt").c_str());
            rmdir(dir.c_str());
        }
    } cleanup{dir, cfg.keep_files};

    write_mps(model, model_path);

    std::vector<std::string> argv;
    for (const auto& arg : cfg.argv) {
        std::string a = arg;
        auto subst = [&a](const std::string& key, const std::string& val) {
            for (std::size_t p; (p = a.find(key)) != std::string::npos;)
                a.replace(p, key.size(), val);
        };
        if (a.find("{time_limit}") != std::string::npos) {
            if (cfg.time_limit_s <= 0.0) continue; /* drop the token entirely */
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", cfg.time_limit_s);
            subst("{time_limit}", buf);
        }
        subst("{model}", model_path);
        subst("{solution}", sol_path);
        argv.push_back(std::move(a));
    }

    const double hard_deadline = cfg.time_limit_s > 0.0 ? cfg.time_limit_s * 2.0 + 30.0 : 0.0;
    bool killed = false;
    const int rc = detail::run_subprocess(argv, err_path, hard_deadline, &killed);
    if (killed)
        throw TimeLimit("external solver exceeded the hard deadline and was killed");
    if (rc != 0)
        throw SolverCrashed("exit code " + std::to_string(rc) + "; stderr: " +
                            detail::tail_of(detail::read_text_file(err_path)));

    const std::string text = detail::read_text_file(sol_path);
    if (text.empty())
        throw SolutionParseError("solver wrote no solution file");
    detail::ParsedSolution parsed;
    if (cfg.dialect == "highs") parsed = detail::parse_solution_highs(text);
    else if (cfg.dialect == "cbc") parsed = detail::parse_solution_cbc(text);
    else throw SolutionParseError("unknown solution dialect '" + cfg.dialect + "'");

    Solution sol;
    sol.status = parsed.status;
    if (parsed.status == SolveStatus::Optimal || parsed.status == SolveStatus::Feasible) {
        if (!parsed.has_values)
            throw SolutionParseError("status claims a solution but no values present");
        std::unordered_map<std::string, VarId> mangled_to_id;
        for (std::uint32_t i = 0; i < model.num_vars(); ++i)
            mangled_to_id.emplace(mangle_name(model.var(VarId{i}).name), VarId{i});
        for (const auto& [name, v] : parsed.values) {
            auto it = mangled_to_id.find(name);
            if (it != mangled_to_id.end()) sol.set(it->second, v);
        }
        for (std::uint32_t i = 0; i < model.num_vars(); ++i)
            if (!sol.has(VarId{i}))
                throw SolutionParseError("solution file lacks a value for column '" +
                                         mangle_name(model.var(VarId{i}).name) + "'");
        const auto violations = check_feasible(model, sol);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "external solution failed feasibility re-check; " << violations.size()
                << " violated rows, first: " << violations.front().name << " residual "
                << violations.front().residual;
            throw NumericalFailure(msg.str());
        }
        const Objective& obj = model.active_objective();
        sol.objective_values[model.active_objective_name()] = eval(obj.expr, sol);
    }
    if (log) {
        log->backend = "external";
        log->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log->termination = status_str(sol.status);
    }
    return sol;
}

} // namespace dscpsc

#endif
