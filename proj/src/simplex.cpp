#include "recopt/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "recopt/error.hpp"
#include "recopt/kernels.hpp"

namespace recopt::lp {
namespace {

enum class Status : unsigned char { Basic, AtLower, AtUpper };

class Tableau {
public:
    Tableau(const Problem& problem, const Options& options) : opt_(options) {
        const std::size_t m = problem.rows.size();
        const std::size_t n0 = problem.num_vars();
        rows_ = m;
        structural_ = n0;

        // Column layout: structural | slack/surplus | artificial.
        std::size_t slacks = 0;
        for (const auto& row : problem.rows)
            if (row.sense != RowSense::Equal) ++slacks;

        std::vector<double> sign(m, 1.0);
        std::vector<bool> needs_artificial(m, false);
        std::size_t artificials = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Row& row = problem.rows[i];
            if (row.rhs < 0.0) sign[i] = -1.0;
            double slack_coef = 0.0;
            if (row.sense == RowSense::LessEqual) slack_coef = 1.0;
            if (row.sense == RowSense::GreaterEqual) slack_coef = -1.0;
            if (slack_coef * sign[i] <= 0.0) {
                needs_artificial[i] = true;
                ++artificials;
            }
        }

        first_artificial_ = n0 + slacks;
        cols_ = first_artificial_ + artificials;
        stride_ = (cols_ + 3) / 4 * 4;
        tab_.assign(rows_ * stride_, 0.0);
        reduced_.assign(stride_, 0.0);
        beta_.assign(rows_, 0.0);
        basis_.assign(rows_, 0);
        status_.assign(cols_, Status::AtLower);
        upper_.assign(cols_, kInfinity);
        for (std::size_t j = 0; j < n0; ++j) upper_[j] = problem.upper.empty() ? kInfinity
                                                                               : problem.upper[j];

        std::size_t next_slack = n0;
        std::size_t next_art = first_artificial_;
        for (std::size_t i = 0; i < m; ++i) {
            const Row& row = problem.rows[i];
            double* r = row_ptr(i);
            for (std::size_t k = 0; k < row.index.size(); ++k) r[row.index[k]] += sign[i] * row.coef[k];
            beta_[i] = sign[i] * row.rhs;
            std::size_t slack_col = cols_;
            if (row.sense != RowSense::Equal) {
                slack_col = next_slack++;
                r[slack_col] = sign[i] * (row.sense == RowSense::LessEqual ? 1.0 : -1.0);
            }
            if (needs_artificial[i]) {
                const std::size_t a = next_art++;
                r[a] = 1.0;
                basis_[i] = a;
            } else {
                basis_[i] = slack_col;
            }
            status_[basis_[i]] = Status::Basic;
        }

        max_iterations_ = options.max_iterations ? options.max_iterations : 50 * (rows_ + cols_) + 100;
    }

    void run_phase_one() {
        std::fill(reduced_.begin(), reduced_.end(), 0.0);
        for (std::size_t j = first_artificial_; j < cols_; ++j) reduced_[j] = 1.0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (is_artificial(basis_[i])) kernels::subtract_scaled(reduced_, 1.0, row_span(i));
        iterate(/*allow_artificial=*/true);

        double infeasibility = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (is_artificial(basis_[i])) infeasibility += std::max(beta_[i], 0.0);
            scale = std::max(scale, std::abs(beta_[i]));
        }
        if (infeasibility > 1e3 * opt_.feasibility_tolerance * scale)
            throw Error(ErrorCode::Infeasible,
                        "linear program is infeasible (phase-one residual " +
                            std::to_string(infeasibility) + ")");

        // Drive zero-valued artificials out of the basis where possible and pin
        // the rest at zero so they can never re-enter.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            const double* r = row_ptr(i);
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (status_[j] != Status::Basic && std::abs(r[j]) > 1e-7) {
                    const double value = status_[j] == Status::AtUpper ? upper_[j] : 0.0;
                    const std::size_t leaving = basis_[i];
                    pivot(i, j);
                    status_[leaving] = Status::AtLower;
                    beta_[i] = value;
                    break;
                }
            }
        }
        for (std::size_t j = first_artificial_; j < cols_; ++j) upper_[j] = 0.0;
    }

    void run_phase_two(const std::vector<double>& cost) {
        std::fill(reduced_.begin(), reduced_.end(), 0.0);
        std::copy(cost.begin(), cost.end(), reduced_.begin());
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::size_t b = basis_[i];
            const double cb = b < structural_ ? cost[b] : 0.0;
            if (cb != 0.0) kernels::subtract_scaled(reduced_, cb, row_span(i));
        }
        iterate(/*allow_artificial=*/false);
    }

    std::vector<double> structural_values() const {
        std::vector<double> x(structural_, 0.0);
        for (std::size_t j = 0; j < structural_; ++j)
            if (status_[j] == Status::AtUpper) x[j] = upper_[j];
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < structural_) x[basis_[i]] = beta_[i];
        return x;
    }

    std::size_t iterations() const noexcept { return iterations_; }

private:
    bool is_artificial(std::size_t j) const noexcept { return j >= first_artificial_; }
    double* row_ptr(std::size_t i) noexcept { return tab_.data() + i * stride_; }
    const double* row_ptr(std::size_t i) const noexcept { return tab_.data() + i * stride_; }
    std::span<double> row_span(std::size_t i) noexcept { return {row_ptr(i), stride_}; }

    std::size_t choose_entering(bool allow_artificial, bool bland) const {
        const std::size_t limit = allow_artificial ? cols_ : first_artificial_;
        const double tol = opt_.optimality_tolerance;
        std::size_t best = cols_;
        double best_gain = 0.0;
        for (std::size_t j = 0; j < limit; ++j) {
            double gain = 0.0;
            if (status_[j] == Status::AtLower) {
                if (upper_[j] <= 0.0) continue;
                gain = -reduced_[j];
            } else if (status_[j] == Status::AtUpper) {
                gain = reduced_[j];
            } else {
                continue;
            }
            if (gain <= tol) continue;
            if (bland) return j;
            if (gain > best_gain) {
                best_gain = gain;
                best = j;
            }
        }
        return best;
    }

    void iterate(bool allow_artificial) {
        const bool dantzig = opt_.rule == PivotRule::Dantzig;
        std::size_t degenerate_run = 0;
        for (;;) {
            if (iterations_ >= max_iterations_)
                throw Error(ErrorCode::IterationLimit,
                            "simplex exceeded " + std::to_string(max_iterations_) + " iterations");
            const bool bland = !dantzig || degenerate_run > 50;
            const std::size_t j = choose_entering(allow_artificial, bland);
            if (j == cols_) return;
            ++iterations_;

            const double direction = status_[j] == Status::AtLower ? 1.0 : -1.0;
            double theta = kInfinity;
            std::size_t leave = rows_;
            bool leave_to_upper = false;
            for (std::size_t i = 0; i < rows_; ++i) {
                const double a = row_ptr(i)[j];
                const double delta = -direction * a;  // change of basic i per unit step
                double limit = kInfinity;
                bool to_upper = false;
                if (delta < -opt_.pivot_tolerance) {
                    limit = std::max(beta_[i], 0.0) / -delta;
                } else if (delta > opt_.pivot_tolerance && std::isfinite(upper_[basis_[i]])) {
                    limit = std::max(upper_[basis_[i]] - beta_[i], 0.0) / delta;
                    to_upper = true;
                } else {
                    continue;
                }
                if (limit < theta - 1e-12 ||
                    (limit <= theta + 1e-12 && leave < rows_ && basis_[i] < basis_[leave])) {
                    theta = limit;
                    leave = i;
                    leave_to_upper = to_upper;
                }
            }

            const double flip = upper_[j];
            if (std::isfinite(flip) && flip <= theta) {
                for (std::size_t i = 0; i < rows_; ++i) beta_[i] += flip * direction * -row_ptr(i)[j];
                status_[j] = direction > 0 ? Status::AtUpper : Status::AtLower;
                degenerate_run = flip <= opt_.feasibility_tolerance ? degenerate_run + 1 : 0;
                continue;
            }
            if (leave == rows_)
                throw Error(ErrorCode::Unbounded, "linear program is unbounded");

            for (std::size_t i = 0; i < rows_; ++i) beta_[i] += theta * direction * -row_ptr(i)[j];
            const double entering_value = direction > 0 ? theta : upper_[j] - theta;
            const std::size_t leaving = basis_[leave];
            pivot(leave, j);
            status_[leaving] = leave_to_upper ? Status::AtUpper : Status::AtLower;
            beta_[leave] = entering_value;
            degenerate_run = theta <= opt_.feasibility_tolerance ? degenerate_run + 1 : 0;
        }
    }

    // Makes column j basic in row r. beta is updated by the caller.
    void pivot(std::size_t r, std::size_t j) {
        double* pr = row_ptr(r);
        kernels::scale(row_span(r), 1.0 / pr[j]);
        pr[j] = 1.0;
        const std::span<const double> pivot_row(pr, stride_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            double* ri = row_ptr(i);
            const double factor = ri[j];
            if (factor == 0.0) continue;
            kernels::subtract_scaled(row_span(i), factor, pivot_row);
            ri[j] = 0.0;
        }
        const double dj = reduced_[j];
        if (dj != 0.0) {
            kernels::subtract_scaled(reduced_, dj, pivot_row);
            reduced_[j] = 0.0;
        }
        status_[basis_[r]] = Status::AtLower;
        basis_[r] = j;
        status_[j] = Status::Basic;
    }

    Options opt_;
    std::size_t rows_ = 0;
    std::size_t structural_ = 0;
    std::size_t first_artificial_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> tab_;
    std::vector<double> reduced_;
    std::vector<double> beta_;
    std::vector<std::size_t> basis_;
    std::vector<Status> status_;
    std::vector<double> upper_;
    std::size_t iterations_ = 0;
    std::size_t max_iterations_ = 0;
};

}  // namespace

double max_violation(const Problem& problem, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, -x[j]);
        if (!problem.upper.empty() && std::isfinite(problem.upper[j]))
            worst = std::max(worst, x[j] - problem.upper[j]);
    }
    for (const auto& row : problem.rows) {
        double lhs = 0.0;
        for (std::size_t k = 0; k < row.index.size(); ++k) lhs += row.coef[k] * x[row.index[k]];
        switch (row.sense) {
            case RowSense::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
            case RowSense::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
            case RowSense::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

Solution solve(const Problem& problem, const Options& options) {
    if (!problem.upper.empty() && problem.upper.size() != problem.num_vars())
        throw Error(ErrorCode::LengthMismatch, "upper bounds do not match the variable count");
    for (const auto& row : problem.rows) {
        if (row.index.size() != row.coef.size())
            throw Error(ErrorCode::LengthMismatch, "row index/coefficient length mismatch");
        for (std::size_t idx : row.index)
            if (idx >= problem.num_vars())
                throw Error(ErrorCode::IndexOutOfRange, "row references unknown variable");
    }

    Tableau tableau(problem, options);
    tableau.run_phase_one();
    tableau.run_phase_two(problem.cost);

    Solution sol;
    sol.x = tableau.structural_values();
    sol.iterations = tableau.iterations();
    for (std::size_t j = 0; j < sol.x.size(); ++j) sol.objective += problem.cost[j] * sol.x[j];
    sol.max_residual = max_violation(problem, sol.x);
    return sol;
}

}  // namespace recopt::lp
