#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace recopt::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

// Sparse row: sum of coef * x[index] (sense) rhs.
struct Row {
    std::vector<std::size_t> index;
    std::vector<double> coef;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

// minimise c^T x  s.t.  rows,  0 <= x <= upper
struct Problem {
    std::vector<double> cost;
    std::vector<double> upper;  // kInfinity for unbounded above
    std::vector<Row> rows;

    std::size_t num_vars() const noexcept { return cost.size(); }
};

enum class PivotRule {
    Bland,    // smallest eligible index; guaranteed to terminate
    Dantzig,  // most negative reduced cost, falls back to Bland while stalling
};

struct Options {
    PivotRule rule = PivotRule::Bland;
    double feasibility_tolerance = 1e-9;
    double optimality_tolerance = 1e-9;
    double pivot_tolerance = 1e-9;
    std::size_t max_iterations = 0;  // 0: 50 * (rows + columns)
};

struct Solution {
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
    double max_residual = 0.0;  // largest row/bound violation of x
};

// Two-phase bounded-variable primal simplex on a dense tableau. Nonbasic
// variables sit at either bound; bound flips happen without a pivot.
// Throws Error(Infeasible | Unbounded | IterationLimit).
Solution solve(const Problem& problem, const Options& options = {});

// Largest violation of rows and bounds at x.
double max_violation(const Problem& problem, const std::vector<double>& x);

}  // namespace recopt::lp
