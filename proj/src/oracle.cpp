#include "recopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "recopt/error.hpp"

namespace recopt {

std::string LpModel::variable_name(std::size_t j) const {
    if (j < horizon) return "charge[" + std::to_string(j) + "]";
    if (j < 2 * horizon) return "discharge[" + std::to_string(j - horizon) + "]";
    if (j < 3 * horizon) return "selfcons[" + std::to_string(j - 2 * horizon) + "]";
    return "level[" + std::to_string(j - 3 * horizon) + "]";
}

LpModel build_lp(const CommunityAggregate& agg, const StorageParams& storage, const Tariff& tariff) {
    validate_storage(storage);
    const std::size_t T = agg.horizon();
    const double eta = storage.efficiency;

    LpModel model;
    model.horizon = T;
    lp::Problem& p = model.problem;
    p.cost.assign(model.num_vars(), 0.0);
    p.upper.assign(model.num_vars(), lp::kInfinity);

    // G(t) = R - Ec + Ed eliminated: -c_s G contributes +c_s Ec - c_s Ed.
    for (std::size_t t = 0; t < T; ++t) {
        p.cost[model.charge(t)] = tariff.sell_price;
        p.cost[model.discharge(t)] = -tariff.sell_price;
        p.cost[model.selfconsumption(t)] = -tariff.incentive;
    }
    for (std::size_t t = 0; t < T; ++t)
        model.objective_constant +=
            tariff.purchase_price * agg.load[t] - tariff.sell_price * agg.generation[t];

    auto add = [&](std::string name, std::vector<std::size_t> idx, std::vector<double> coef,
                   lp::RowSense sense, double rhs) {
        p.rows.push_back({std::move(idx), std::move(coef), sense, rhs});
        model.row_names.push_back(std::move(name));
    };
    for (std::size_t t = 0; t < T; ++t) {
        add("dynamics[" + std::to_string(t) + "]",
            {model.level(t + 1), model.level(t), model.charge(t), model.discharge(t)},
            {1.0, -1.0, -eta, 1.0 / eta}, lp::RowSense::Equal, 0.0);
    }
    add("initial_level", {model.level(0)}, {1.0}, lp::RowSense::Equal, 0.0);
    add("terminal_level", {model.level(T)}, {1.0}, lp::RowSense::Equal, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        const std::string s = "[" + std::to_string(t) + "]";
        add("charge_headroom" + s, {model.charge(t)}, {1.0}, lp::RowSense::LessEqual,
            agg.charge_bound[t]);
        add("discharge_stored" + s, {model.discharge(t), model.level(t)}, {1.0, -eta},
            lp::RowSense::LessEqual, 0.0);
        add("selfcons_load" + s, {model.selfconsumption(t)}, {1.0}, lp::RowSense::LessEqual,
            agg.load[t]);
        add("selfcons_injection" + s,
            {model.selfconsumption(t), model.charge(t), model.discharge(t)}, {1.0, 1.0, -1.0},
            lp::RowSense::LessEqual, agg.generation[t]);
    }
    return model;
}

LpResult solve_lp(const LpModel& model, const lp::Options& options) {
    const lp::Solution sol = lp::solve(model.problem, options);
    const std::size_t T = model.horizon;

    LpResult out;
    out.objective = model.objective_constant + sol.objective;
    out.iterations = sol.iterations;
    out.max_residual = sol.max_residual;
    out.schedule = Schedule::zero(T);
    out.selfconsumption = EnergySeries(T);
    for (std::size_t t = 0; t < T; ++t) {
        out.schedule.charge[t] = sol.x[model.charge(t)];
        out.schedule.discharge[t] = sol.x[model.discharge(t)];
        out.selfconsumption[t] = sol.x[model.selfconsumption(t)];
    }
    for (std::size_t t = 0; t <= T; ++t) out.schedule.soc[t] = sol.x[model.level(t)];
    return out;
}

namespace {

std::vector<double> grid_points(double upper, double step) {
    std::vector<double> pts;
    if (upper <= 0.0) {
        pts.push_back(0.0);
        return pts;
    }
    const auto steps = static_cast<std::size_t>(std::floor(upper / step + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) pts.push_back(std::min(static_cast<double>(i) * step, upper));
    if (upper - pts.back() > 1e-12) pts.push_back(upper);
    return pts;
}

struct Search {
    const CommunityAggregate& agg;
    const Tariff& tariff;
    double eta;
    double step;
    std::vector<std::vector<double>> candidates;
    std::vector<bool> deficit;
    std::vector<double> deficit_after;  // remaining deficit from t onwards

    std::vector<double> chosen;
    std::vector<double> best_choice;
    double best = std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;

    double slot_cost(std::size_t t, double value) const {
        const double c = deficit[t] ? 0.0 : value;
        const double d = deficit[t] ? value : 0.0;
        const double injected = agg.generation[t] - c + d;
        const double self = std::min(agg.load[t], injected);
        return tariff.purchase_price * agg.load[t] - tariff.sell_price * injected -
               tariff.incentive * self;
    }

    void visit(std::size_t t, double soc, double cost) {
        const std::size_t T = candidates.size();
        if (t == T) {
            ++evaluated;
            if (soc <= step && cost < best) {
                best = cost;
                best_choice = chosen;
            }
            return;
        }
        // Storage that cannot be drained by the remaining deficits never ends near zero.
        if (soc > deficit_after[t] / eta + step) return;
        for (double v : candidates[t]) {
            double next = soc;
            if (deficit[t]) {
                if (v > eta * soc + 1e-12) break;
                next = std::max(soc - v / eta, 0.0);
            } else {
                next = soc + eta * v;
            }
            chosen[t] = v;
            visit(t + 1, next, cost + slot_cost(t, v));
        }
    }
};

}  // namespace

BruteForceResult brute_force(const CommunityAggregate& agg, const StorageParams& storage,
                             const Tariff& tariff, double grid_step) {
    validate_storage(storage);
    const std::size_t T = agg.horizon();
    if (!(grid_step > 0.0))
        throw Error(ErrorCode::TooLarge, "grid step must be positive");
    if (T > kBruteForceMaxHorizon)
        throw Error(ErrorCode::TooLarge, "brute force supports at most " +
                                             std::to_string(kBruteForceMaxHorizon) + " slots, got " +
                                             std::to_string(T));

    Search search{agg, tariff, storage.efficiency, grid_step, {}, {}, {}, {}, {}};
    search.candidates.resize(T);
    search.deficit.resize(T);
    search.deficit_after.assign(T + 1, 0.0);
    double combinations = 1.0;
    for (std::size_t t = 0; t < T; ++t) {
        const double gap = agg.load[t] - agg.generation[t];
        search.deficit[t] = gap > 0.0;
        const double upper = gap > 0.0 ? gap : std::min(agg.charge_bound[t], -gap);
        search.candidates[t] = grid_points(upper, grid_step);
        combinations *= static_cast<double>(search.candidates[t].size());
    }
    if (combinations > kBruteForceMaxCombinations)
        throw Error(ErrorCode::TooLarge, "brute force grid has " + std::to_string(combinations) +
                                             " points, limit " +
                                             std::to_string(kBruteForceMaxCombinations));
    for (std::size_t t = T; t-- > 0;)
        search.deficit_after[t] =
            search.deficit_after[t + 1] + std::max(agg.load[t] - agg.generation[t], 0.0);

    search.chosen.assign(T, 0.0);
    search.visit(0, 0.0, 0.0);

    BruteForceResult out;
    out.objective = search.best;
    out.evaluated = search.evaluated;
    EnergySeries charge(T);
    EnergySeries discharge(T);
    for (std::size_t t = 0; t < T; ++t) {
        (search.deficit[t] ? discharge : charge)[t] = search.best_choice[t];
    }
    out.schedule = Schedule::from_controls(std::move(charge), std::move(discharge), storage);
    return out;
}

void write_lp(std::ostream& out, const LpModel& model) {
    const lp::Problem& p = model.problem;
    char buf[64];
    auto num = [&](double v) -> const char* {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    };
    out << "# recopt-lp 1\n";
    out << "# minimise constant + sum cost_j x_j subject to rows, 0 <= x_j <= upper_j\n";
    out << "variables " << p.num_vars() << "\n";
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        out << j << ' ' << model.variable_name(j) << ' ' << num(p.upper[j]);
        out << ' ' << num(p.cost[j]) << "\n";
    }
    out << "constant " << num(model.objective_constant) << "\n";
    out << "rows " << p.rows.size() << "\n";
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const lp::Row& r = p.rows[i];
        const char* sense = r.sense == lp::RowSense::LessEqual ? "<="
                            : r.sense == lp::RowSense::Equal   ? "="
                                                               : ">=";
        out << i << ' ' << model.row_names[i] << ' ' << sense << ' ' << num(r.rhs) << ' '
            << r.index.size();
        for (std::size_t k = 0; k < r.index.size(); ++k) {
            out << ' ' << r.index[k] << ':';
            out << num(r.coef[k]);
        }
        out << "\n";
    }
    out << "end\n";
}

namespace {

[[noreturn]] void bad_dump(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "LP dump line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& token, std::size_t line) {
    if (token == "inf") return lp::kInfinity;
    if (token == "-inf") return -lp::kInfinity;
    try {
        std::size_t used = 0;
        double v = std::stod(token, &used);
        if (used != token.size()) bad_dump(line, "bad number '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        bad_dump(line, "bad number '" + token + "'");
    }
}

}  // namespace

LpDump read_lp(std::istream& in) {
    LpDump dump;
    std::string text;
    std::size_t line_no = 0;
    auto next_line = [&](std::istringstream& ss) {
        while (std::getline(in, text)) {
            ++line_no;
            if (text.empty() || text[0] == '#') continue;
            ss = std::istringstream(text);
            return true;
        }
        return false;
    };

    std::istringstream ss;
    std::string key;
    std::size_t count = 0;
    if (!next_line(ss) || !(ss >> key >> count) || key != "variables")
        bad_dump(line_no, "expected 'variables <n>'");
    dump.problem.cost.resize(count);
    dump.problem.upper.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        std::size_t idx = 0;
        std::string name, upper, cost;
        if (!next_line(ss) || !(ss >> idx >> name >> upper >> cost) || idx != j)
            bad_dump(line_no, "bad variable line");
        dump.variable_names.push_back(name);
        dump.problem.upper[j] = parse_number(upper, line_no);
        dump.problem.cost[j] = parse_number(cost, line_no);
    }
    std::string constant;
    if (!next_line(ss) || !(ss >> key >> constant) || key != "constant")
        bad_dump(line_no, "expected 'constant <value>'");
    dump.objective_constant = parse_number(constant, line_no);
    if (!next_line(ss) || !(ss >> key >> count) || key != "rows")
        bad_dump(line_no, "expected 'rows <m>'");
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx = 0, nnz = 0;
        std::string name, sense, rhs;
        if (!next_line(ss) || !(ss >> idx >> name >> sense >> rhs >> nnz) || idx != i)
            bad_dump(line_no, "bad row line");
        lp::Row row;
        if (sense == "<=") row.sense = lp::RowSense::LessEqual;
        else if (sense == "=") row.sense = lp::RowSense::Equal;
        else if (sense == ">=") row.sense = lp::RowSense::GreaterEqual;
        else bad_dump(line_no, "bad sense '" + sense + "'");
        row.rhs = parse_number(rhs, line_no);
        for (std::size_t k = 0; k < nnz; ++k) {
            std::string entry;
            if (!(ss >> entry)) bad_dump(line_no, "missing coefficient");
            const auto colon = entry.find(':');
            if (colon == std::string::npos) bad_dump(line_no, "bad coefficient '" + entry + "'");
            const double col = parse_number(entry.substr(0, colon), line_no);
            if (col < 0 || col >= static_cast<double>(dump.problem.cost.size()))
                bad_dump(line_no, "column out of range");
            row.index.push_back(static_cast<std::size_t>(col));
            row.coef.push_back(parse_number(entry.substr(colon + 1), line_no));
        }
        dump.row_names.push_back(name);
        dump.problem.rows.push_back(std::move(row));
    }
    if (!next_line(ss) || !(ss >> key) || key != "end") bad_dump(line_no, "expected 'end'");
    return dump;
}

}  // namespace recopt
