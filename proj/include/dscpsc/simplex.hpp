#ifndef DSCPSC_SIMPLEX_HPP
#define DSCPSC_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dscpsc/errors.hpp"
#include "dscpsc/milp.hpp"

namespace dscpsc {

/* A dense LP in the form
 *     minimize c'x   subject to   A x (<=|=|>=) b,   x >= 0.
 * Upper bounds are expected to be expressed as rows by the caller. */
struct DenseLp {
    std::size_t n = 0;                      /* structural variables */
    std::vector<std::vector<double>> rows;  /* each of size n */
    std::vector<Sense> senses;
    std::vector<double> rhs;
    std::vector<double> cost;               /* size n, minimized */

    void add_row(std::vector<double> coeffs, Sense s, double b) {
        rows.push_back(std::move(coeffs));
        senses.push_back(s);
        rhs.push_back(b);
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x; /* structural values, size n */
};

/* Two-phase primal simplex on a dense tableau.
 *
 * Pivoting starts with Dantzig's rule and switches to Bland's rule once the
 * pivot count passes 3*m, which guarantees termination on degenerate models.
 * All tie-breaks are by lowest index so repeated runs produce identical
 * bases and identical vertices. */
class SimplexSolver {
public:
    explicit SimplexSolver(const DenseLp& lp) : lp_(lp) {}

    LpResult solve() {
        build_tableau();
        /* Phase 1: minimize the sum of artificials. */
        if (num_art_ > 0) {
            load_phase1_objective();
            run(true);
            if (obj_value() > 1e-7)
                return LpResult{LpStatus::Infeasible, 0.0, {}};
            drive_out_artificials();
        }
        load_phase2_objective();
        const bool bounded = run(false);
        if (!bounded)
            return LpResult{LpStatus::Unbounded, 0.0, {}};
        LpResult res;
        res.status = LpStatus::Optimal;
        res.x.assign(lp_.n, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < lp_.n) res.x[basis_[i]] = tab_[i][ncols_];
        res.objective = 0.0;
        {   /* compensated dot product for a stable reported objective */
            double comp = 0.0;
            for (std::size_t j = 0; j < lp_.n; ++j) {
                const double term = lp_.cost[j] * res.x[j];
                const double t = res.objective + term;
                if (std::abs(res.objective) >= std::abs(term))
                    comp += (res.objective - t) + term;
                else
                    comp += (term - t) + res.objective;
                res.objective = t;
            }
            res.objective += comp;
        }
        return res;
    }

private:
    static constexpr double kCostEps = 1e-9;
    static constexpr double kPivotEps = 1e-11;

    void build_tableau() {
        m_ = lp_.rows.size();
        /* Column layout: [structural | slack/surplus | artificial]; the last
         * column of the tableau holds the rhs. */
        std::size_t num_slack = 0;
        for (Sense s : lp_.senses)
            if (s != Sense::EQ) ++num_slack;
        num_art_ = 0;
        std::vector<double> b = lp_.rhs;
        std::vector<int> row_sign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i)
            if (b[i] < 0.0) { row_sign[i] = -1; b[i] = -b[i]; }
        /* after sign normalization decide which rows need an artificial */
        std::vector<bool> needs_art(m_, false);
        for (std::size_t i = 0; i < m_; ++i) {
            Sense s = lp_.senses[i];
            if (row_sign[i] < 0) {
                if (s == Sense::LE) s = Sense::GE;
                else if (s == Sense::GE) s = Sense::LE;
            }
            eff_sense_.push_back(s);
            if (s != Sense::LE) { needs_art[i] = true; ++num_art_; }
        }
        ncols_ = lp_.n + num_slack + num_art_;
        art_begin_ = lp_.n + num_slack;
        tab_.assign(m_ + 1, std::vector<double>(ncols_ + 1, 0.0));
        basis_.assign(m_, 0);

        std::size_t slack_at = lp_.n;
        std::size_t art_at = art_begin_;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < lp_.n; ++j)
                tab_[i][j] = row_sign[i] * lp_.rows[i][j];
            tab_[i][ncols_] = b[i];
            const Sense s = eff_sense_[i];
            if (s == Sense::LE) {
                tab_[i][slack_at] = 1.0;
                basis_[i] = slack_at++;
            } else if (s == Sense::GE) {
                tab_[i][slack_at] = -1.0;
                ++slack_at;
                tab_[i][art_at] = 1.0;
                basis_[i] = art_at++;
            } else {
                tab_[i][art_at] = 1.0;
                basis_[i] = art_at++;
            }
        }
    }

    void load_phase1_objective() {
        /* Reduced costs for min(sum of artificials) with artificials basic:
         * objective row = -(sum of rows that own an artificial). */
        auto& z = tab_[m_];
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= art_begin_) {
                for (std::size_t j = 0; j <= ncols_; ++j)
                    z[j] -= tab_[i][j];
            }
        }
        for (std::size_t j = art_begin_; j < ncols_; ++j)
            z[j] = 0.0; /* artificial columns are basic: reduced cost 0 */
        phase1_ = true;
    }

    void load_phase2_objective() {
        auto cost_of = [&](std::size_t j) -> double {
            return j < lp_.n ? lp_.cost[j] : 0.0;
        };
        auto& z = tab_[m_];
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t j = 0; j < ncols_; ++j) z[j] = cost_of(j);
        z[ncols_] = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost_of(basis_[i]);
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j)
                z[j] -= cb * tab_[i][j];
        }
        phase1_ = false;
    }

    double obj_value() const { return -tab_[m_][ncols_]; }

    /* After a successful phase 1 every artificial sits at value zero, but a
     * basic artificial can climb back above zero under later pivots.  Pivot
     * each one out on any usable column; rows with no such column are
     * redundant and stay inert. */
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            std::size_t col = ncols_;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (std::abs(tab_[i][j]) > kPivotEps) { col = j; break; }
            }
            if (col != ncols_) pivot(i, col);
        }
    }

    /* Returns false when the LP is unbounded (phase 2 only). */
    bool run(bool phase1) {
        const std::size_t bland_after = 3 * std::max<std::size_t>(m_, 1);
        const std::size_t cap = 2000 + 200 * (m_ + ncols_);
        std::size_t pivots = 0;
        while (true) {
            const bool bland = pivots >= bland_after;
            std::size_t enter = ncols_;
            if (bland) {
                for (std::size_t j = 0; j < ncols_; ++j) {
                    if (is_blocked(j, phase1)) continue;
                    if (tab_[m_][j] < -kCostEps) { enter = j; break; }
                }
            } else {
                double best = -kCostEps;
                for (std::size_t j = 0; j < ncols_; ++j) {
                    if (is_blocked(j, phase1)) continue;
                    if (tab_[m_][j] < best) { best = tab_[m_][j]; enter = j; }
                }
            }
            if (enter == ncols_) return true; /* optimal for this phase */

            /* ratio test */
            std::size_t leave = m_;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = tab_[i][enter];
                if (a <= kPivotEps) continue;
                const double ratio = tab_[i][ncols_] / a;
                if (leave == m_ || ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) {
                if (phase1)
                    throw NumericalFailure("phase-1 column unbounded");
                return false;
            }
            pivot(leave, enter);
            if (++pivots > cap)
                throw NumericalFailure("pivot cap exceeded (" + std::to_string(cap) + ")");
        }
    }

    bool is_blocked(std::size_t j, bool phase1) const {
        /* artificials may never re-enter once phase 1 is done */
        return !phase1 && j >= art_begin_;
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& row = tab_[r];
        const double p = row[c];
        for (std::size_t j = 0; j <= ncols_; ++j) row[j] /= p;
        row[c] = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = tab_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j)
                tab_[i][j] -= f * row[j];
            tab_[i][c] = 0.0;
        }
        basis_[r] = c;
    }

    const DenseLp& lp_;
    std::size_t m_ = 0, ncols_ = 0, num_art_ = 0, art_begin_ = 0;
    std::vector<std::vector<double>> tab_;
    std::vector<std::size_t> basis_;
    std::vector<Sense> eff_sense_;
    bool phase1_ = false;
};

inline LpResult solve_dense_lp(const DenseLp& lp) {
    SimplexSolver s(lp);
    return s.solve();
}

} // namespace dscpsc

#endif
