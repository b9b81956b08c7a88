// recopt: optimal storage scheduling for renewable energy communities.
//
// Exit codes: 0 ok, 1 certificate or verification failure, 2 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "recopt/error.hpp"
#include "recopt/generator.hpp"
#include "recopt/kernels.hpp"
#include "recopt/oracle.hpp"
#include "recopt/pipeline.hpp"
#include "recopt/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

using recopt::ValidatedScenario;
using nlohmann::json;

void emit_error(const std::string& code, const std::string& message,
                const std::optional<std::string>& entity = std::nullopt,
                const std::optional<std::size_t>& slot = std::nullopt) {
    json j{{"error", code}, {"message", message}};
    if (entity) j["entity"] = *entity;
    if (slot) j["slot"] = *slot;
    std::cerr << j.dump() << '\n';
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
    std::string scenario;
    std::string out_dir;
    double tolerance = recopt::kCertificateTolerance;
};

int cmd_validate(const Common& c) {
    const ValidatedScenario s = recopt::load_scenario(c.scenario);
    json entities = json::array();
    for (const auto& e : s.entities())
        entities.push_back({{"id", e.id}, {"kind", std::string(recopt::to_string(e.kind))}});
    print({{"ok", true}, {"horizon", s.horizon()}, {"entities", entities}});
    return kExitOk;
}

int cmd_balance(const Common& c) {
    const ValidatedScenario s = recopt::load_scenario(c.scenario);
    const auto balanced = recopt::balance_community(s.entities(), s.storage());
    json summary = json::array();
    for (std::size_t i = 0; i < balanced.size(); ++i) {
        const auto rho = recopt::net_profile(s.entities()[i]);
        summary.push_back({{"id", balanced[i].entity_id},
                           {"kind", std::string(recopt::to_string(balanced[i].kind))},
                           {"net_total", rho.total()},
                           {"balanced_total", balanced[i].rho_prime.total()}});
    }
    if (!c.out_dir.empty()) {
        std::filesystem::create_directories(c.out_dir);
        std::ofstream out(std::filesystem::path(c.out_dir) / "balance.csv");
        recopt::write_balance_csv(out, s, balanced);
    }
    print({{"entities", summary}});
    return kExitOk;
}

int cmd_aggregate(const Common& c) {
    const ValidatedScenario s = recopt::load_scenario(c.scenario);
    const auto balanced = recopt::balance_community(s.entities(), s.storage());
    const auto agg = recopt::aggregate(balanced, recopt::post_balance_charge_bound(balanced),
                                       s.horizon());
    if (!c.out_dir.empty()) {
        std::filesystem::create_directories(c.out_dir);
        std::ofstream out(std::filesystem::path(c.out_dir) / "aggregate.csv");
        recopt::write_aggregate_csv(out, agg);
    }
    print({{"horizon", agg.horizon()},
           {"total_load", agg.load.total()},
           {"total_generation", agg.generation.total()},
           {"total_charge_bound", agg.charge_bound.total()},
           {"total_baseline_selfconsumption", agg.baseline_selfconsumption.total()},
           {"surplus_slots", agg.surplus_slots.size()},
           {"deficit_slots", agg.deficit_slots.size()}});
    return kExitOk;
}

int run_and_report(const ValidatedScenario& s, const Common& c, recopt::PipelineOptions opts) {
    opts.tolerance = c.tolerance;
    const recopt::PipelineResult r = recopt::run_pipeline(s, opts);
    if (!c.out_dir.empty()) recopt::write_artifacts(c.out_dir, s, r);
    print(recopt::report_json(s, r));
    return r.ok() ? kExitOk : kExitFailed;
}

int cmd_report(const Common& c) {
    const ValidatedScenario s = recopt::load_scenario(c.scenario);
    const recopt::PipelineResult r = recopt::run_pipeline(s);
    const recopt::CostReport& rep = r.report;
    std::printf("%-14s %12s %12s\n", "", "no storage", "optimal");
    std::printf("%-14s %12.2f %12.2f\n", "cost", rep.bill_no_storage, rep.bill_optimal);
    std::printf("%-14s %12.2f %12.2f\n", "incentive", rep.incentive_no_storage,
                rep.incentive_optimal);
    std::printf("alpha %.4f per kWh, storage %s\n", rep.alpha,
                rep.storage_convenient ? "convenient" : "not convenient");
    std::printf("cost reduction %.1f%%, incentive x%.2f\n", 100.0 * rep.relative_cost_reduction(),
                rep.incentive_ratio());
    std::printf("certificate %s\n", r.certificate.ok() ? "clean" : "VIOLATED");
    return r.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal storage scheduling for incentive-based renewable energy communities"};
    app.require_subcommand(1);
    std::string simd;
    app.add_option("--simd", simd, "Force kernel backend (scalar|avx2)");

    Common common;
    auto add_scenario = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("scenario", common.scenario, "Scenario file");
        if (required) opt->required();
    };

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    add_scenario(validate);

    auto* balance = app.add_subcommand("balance", "Prosumer self-balancing");
    add_scenario(balance);
    balance->add_option("--out-dir", common.out_dir, "Directory for balance.csv");

    auto* aggregate = app.add_subcommand("aggregate", "Community aggregation");
    add_scenario(aggregate);
    aggregate->add_option("--out-dir", common.out_dir, "Directory for aggregate.csv");

    recopt::PipelineOptions popts;
    auto* optimize = app.add_subcommand("optimize", "Compute and certify the optimal schedule");
    add_scenario(optimize);
    optimize->add_flag("--verify", popts.verify, "Cross-check against the LP oracle");
    optimize->add_flag("--brute", popts.brute, "Also run exhaustive search (T <= 5)");
    optimize->add_option("--tolerance", common.tolerance, "Per-slot certificate tolerance");
    optimize->add_option("--grid-step", popts.grid_step, "Brute-force grid step (kWh)");
    optimize->add_option("--out-dir", common.out_dir, "Directory for report and CSV output");

    std::size_t gen_horizon = 0;
    std::uint64_t seed = 1;
    std::string dump_lp;
    auto* verify = app.add_subcommand(
        "verify", "Compare closed form, LP and optionally brute force; without a scenario file a "
                  "random one of --T slots is generated from --seed");
    add_scenario(verify, false);
    verify->add_flag("--brute", popts.brute, "Also run exhaustive search (T <= 5)");
    verify->add_option("--T", gen_horizon, "Horizon of the generated scenario");
    verify->add_option("--seed", seed, "Generator seed");
    verify->add_option("--tolerance", common.tolerance, "Per-slot certificate tolerance");
    verify->add_option("--grid-step", popts.grid_step, "Brute-force grid step (kWh)");
    verify->add_option("--dump-lp", dump_lp, "Write the LP in plain-text form to this file");
    verify->add_option("--out-dir", common.out_dir, "Directory for report and CSV output");

    auto* report = app.add_subcommand("report", "Print a cost/incentive summary table");
    add_scenario(report);

    recopt::GeneratorOptions gopts;
    std::string incentive = "convenient";
    std::string preset;
    std::string output;
    auto* generate = app.add_subcommand("generate", "Emit a random or bundled scenario");
    generate->add_option("--seed", seed, "Generator seed");
    generate->add_option("--T", gopts.horizon, "Horizon in slots");
    generate->add_option("--min-entities", gopts.min_entities);
    generate->add_option("--max-entities", gopts.max_entities);
    generate->add_option("--max-energy", gopts.max_energy, "Per-slot energy cap (kWh)");
    generate->add_option("--incentive", incentive, "convenient | inconvenient | threshold")
        ->check(CLI::IsMember({"convenient", "inconvenient", "threshold"}));
    generate->add_option("--preset", preset, "low | high: reconstructed day-long community")
        ->check(CLI::IsMember({"low", "high"}));
    generate->add_option("-o,--output", output, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (simd == "scalar") recopt::kernels::set_backend(recopt::kernels::Backend::Scalar);
        else if (simd == "avx2") recopt::kernels::set_backend(recopt::kernels::Backend::Avx2);
        else if (!simd.empty()) {
            emit_error("UsageError", "unknown --simd backend '" + simd + "'");
            return kExitInput;
        }

        if (*validate) return cmd_validate(common);
        if (*balance) return cmd_balance(common);
        if (*aggregate) return cmd_aggregate(common);
        if (*report) return cmd_report(common);
        if (*optimize) return run_and_report(recopt::load_scenario(common.scenario), common, popts);
        if (*verify) {
            popts.verify = true;
            std::optional<ValidatedScenario> s;
            if (!common.scenario.empty()) {
                s = recopt::load_scenario(common.scenario);
            } else {
                if (gen_horizon == 0) {
                    emit_error("UsageError", "verify needs a scenario file or --T");
                    return kExitInput;
                }
                recopt::GeneratorOptions g;
                g.horizon = gen_horizon;
                g.max_entities = 3;
                if (popts.brute) g.max_energy = 2.0;
                s = recopt::generate_scenario(g, seed);
            }
            if (!dump_lp.empty()) {
                const auto r = recopt::run_pipeline(*s);
                std::ofstream out(dump_lp);
                recopt::write_lp(out, recopt::build_lp(r.aggregate, s->storage(), s->tariff()));
            }
            return run_and_report(*s, common, popts);
        }
        if (*generate) {
            if (incentive == "inconvenient") gopts.incentive = recopt::IncentiveMode::Inconvenient;
            if (incentive == "threshold") gopts.incentive = recopt::IncentiveMode::AtThreshold;
            const ValidatedScenario s = preset.empty()
                                            ? recopt::generate_scenario(gopts, seed)
                                            : recopt::reconstructed_community(preset == "high");
            if (output.empty()) {
                std::cout << recopt::write_scenario(s);
            } else {
                recopt::save_scenario(output, s);
            }
            return kExitOk;
        }
    } catch (const recopt::Error& e) {
        emit_error(std::string(recopt::to_string(e.code())), e.what(), e.entity(), e.slot());
        return recopt::is_input_error(e.code()) ? kExitInput : kExitFailed;
    } catch (const std::exception& e) {
        emit_error("InternalError", e.what());
        return kExitFailed;
    }
    return kExitInput;
}
