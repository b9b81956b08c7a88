#include "recopt/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "recopt/error.hpp"
#include "recopt/oracle.hpp"

namespace recopt {
namespace {

double cents(double value) { return std::round(value * 100.0) / 100.0; }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, path.string() + ": cannot write file");
    return out;
}

}  // namespace

PipelineResult run_pipeline(const ValidatedScenario& scenario, const PipelineOptions& options) {
    const StorageParams& storage = scenario.storage();
    const Tariff& tariff = scenario.tariff();

    PipelineResult r;
    r.balanced = balance_community(scenario.entities(), storage);
    r.bounds = post_balance_charge_bound(r.balanced);
    r.aggregate = aggregate(r.balanced, r.bounds, scenario.horizon());
    r.schedule = optimal_schedule(r.aggregate, storage, tariff);
    r.certificate = check_certificate(r.schedule, r.aggregate, options.tolerance);
    r.feasibility = check_feasibility(r.schedule, r.aggregate, storage, options.tolerance);
    r.report = compare(r.aggregate, r.schedule, tariff, storage);
    r.entity_schedules = disaggregate(r.schedule, r.bounds, storage);

    if (options.verify || options.brute) {
        VerifyResult v;
        v.closed_form_bill = r.report.bill_optimal;
        const LpResult lp = solve_lp(build_lp(r.aggregate, storage, tariff));
        v.lp_objective = lp.objective;
        v.abs_diff = std::abs(v.closed_form_bill - v.lp_objective);
        v.lp_residual = lp.max_residual;
        v.lp_iterations = lp.iterations;
        v.lp_complementarity_ok =
            check_certificate(lp.schedule, r.aggregate, 1e-7).complementarity_ok;
        v.ok = v.abs_diff <= options.verify_tolerance && v.lp_residual <= 1e-8;
        if (options.brute) {
            const BruteForceResult bf = brute_force(r.aggregate, storage, tariff, options.grid_step);
            BruteCheck b;
            b.objective = bf.objective;
            b.bound = options.grid_step * static_cast<double>(scenario.horizon()) *
                      (tariff.purchase_price + tariff.sell_price + tariff.incentive);
            b.ok = std::abs(bf.objective - v.lp_objective) <= b.bound &&
                   std::abs(bf.objective - v.closed_form_bill) <= b.bound;
            v.ok = v.ok && b.ok;
            v.brute = b;
        }
        r.verify = v;
    }
    return r;
}

nlohmann::json certificate_json(const OptimalityCertificate& c) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : c.violations)
        violations.push_back(
            {{"slot", v.slot}, {"rule", std::string(to_string(v.rule))}, {"magnitude", v.magnitude}});
    return {{"ok", c.ok()},
            {"complementarity_ok", c.complementarity_ok},
            {"sign_pattern_ok", c.sign_pattern_ok},
            {"magnitude_bound_ok", c.magnitude_bound_ok},
            {"selfconsumption_identity_ok", c.selfconsumption_identity_ok},
            {"violations", violations}};
}

nlohmann::json report_json(const ValidatedScenario& scenario, const PipelineResult& r) {
    const CostReport& c = r.report;
    nlohmann::json j;
    j["horizon"] = scenario.horizon();
    j["slot_minutes"] = scenario.slot_minutes();
    j["alpha"] = c.alpha;
    j["storage_convenient"] = c.storage_convenient;
    j["bill_no_storage"] = cents(c.bill_no_storage);
    j["bill_optimal"] = cents(c.bill_optimal);
    j["incentive_no_storage"] = cents(c.incentive_no_storage);
    j["incentive_optimal"] = cents(c.incentive_optimal);
    j["relative_cost_reduction"] = c.relative_cost_reduction();
    j["incentive_ratio"] = c.incentive_ratio();
    j["total_charge"] = r.schedule.charge.total();
    j["total_discharge"] = r.schedule.discharge.total();
    j["grid_injection"] = c.grid_injection.values();
    j["selfconsumption"] = c.selfconsumption.values();
    j["certificate"] = certificate_json(r.certificate);
    nlohmann::json feas = nlohmann::json::array();
    for (const auto& f : r.feasibility)
        feas.push_back({{"slot", f.slot}, {"constraint", f.constraint}, {"magnitude", f.magnitude}});
    j["feasibility_violations"] = feas;
    if (r.verify) {
        const VerifyResult& v = *r.verify;
        nlohmann::json vj{{"ok", v.ok},
                          {"closed_form_bill", v.closed_form_bill},
                          {"lp_objective", v.lp_objective},
                          {"abs_diff", v.abs_diff},
                          {"lp_residual", v.lp_residual},
                          {"lp_iterations", v.lp_iterations},
                          {"lp_complementarity_ok", v.lp_complementarity_ok}};
        if (v.brute)
            vj["brute_force"] = {
                {"objective", v.brute->objective}, {"bound", v.brute->bound}, {"ok", v.brute->ok}};
        j["verify"] = vj;
    }
    j["ok"] = r.ok();
    return j;
}

void write_timeseries_csv(std::ostream& out, const PipelineResult& r) {
    const CommunityAggregate& a = r.aggregate;
    out << "t,L,R,A0,As,Ec,Ed,S,G\n";
    for (std::size_t t = 0; t < a.horizon(); ++t) {
        out << t << ',' << num(a.load[t]) << ',' << num(a.generation[t]) << ','
            << num(a.baseline_selfconsumption[t]) << ',' << num(r.report.selfconsumption[t]) << ','
            << num(r.schedule.charge[t]) << ',' << num(r.schedule.discharge[t]) << ','
            << num(r.schedule.soc[t]) << ',' << num(r.report.grid_injection[t]) << '\n';
    }
}

void write_soc_csv(std::ostream& out, const Schedule& schedule) {
    out << "t,S\n";
    for (std::size_t t = 0; t < schedule.soc.size(); ++t) out << t << ',' << num(schedule.soc[t]) << '\n';
}

void write_entities_csv(std::ostream& out, const std::vector<EntitySchedule>& schedules) {
    out << "entity,t,charge,discharge,soc\n";
    for (const auto& e : schedules) {
        const Schedule& s = e.schedule;
        for (std::size_t t = 0; t < s.horizon(); ++t)
            out << e.entity_id << ',' << t << ',' << num(s.charge[t]) << ',' << num(s.discharge[t])
                << ',' << num(s.soc[t]) << '\n';
        out << e.entity_id << ',' << s.horizon() << ",,," << num(s.soc[s.horizon()]) << '\n';
    }
}

void write_balance_csv(std::ostream& out, const ValidatedScenario& scenario,
                       const std::vector<BalancedEntity>& balanced) {
    out << "entity,kind,t,rho,rho_prime\n";
    for (std::size_t i = 0; i < balanced.size(); ++i) {
        const EnergySeries rho = net_profile(scenario.entities()[i]);
        const BalancedEntity& b = balanced[i];
        for (std::size_t t = 0; t < rho.size(); ++t)
            out << b.entity_id << ',' << to_string(b.kind) << ',' << t << ',' << num(rho[t]) << ','
                << num(b.rho_prime[t]) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const CommunityAggregate& a) {
    out << "t,L,R,Ebar,A0,P,slot_set\n";
    for (std::size_t t = 0; t < a.horizon(); ++t)
        out << t << ',' << num(a.load[t]) << ',' << num(a.generation[t]) << ','
            << num(a.charge_bound[t]) << ',' << num(a.baseline_selfconsumption[t]) << ','
            << num(a.surplus(t)) << ',' << (a.is_deficit_slot(t) ? "deficit" : "surplus") << '\n';
}

void write_artifacts(const std::filesystem::path& out_dir, const ValidatedScenario& scenario,
                     const PipelineResult& r) {
    std::filesystem::create_directories(out_dir);
    open_out(out_dir / "report.json") << report_json(scenario, r).dump(2) << '\n';
    auto ts = open_out(out_dir / "timeseries.csv");
    write_timeseries_csv(ts, r);
    auto soc = open_out(out_dir / "soc.csv");
    write_soc_csv(soc, r.schedule);
    auto ent = open_out(out_dir / "entities.csv");
    write_entities_csv(ent, r.entity_schedules);
}

}  // namespace recopt
