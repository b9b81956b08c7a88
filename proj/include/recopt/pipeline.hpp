#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "recopt/aggregation.hpp"
#include "recopt/balancing.hpp"
#include "recopt/domain.hpp"
#include "recopt/economics.hpp"
#include "recopt/scheduler.hpp"

namespace recopt {

struct PipelineOptions {
    bool verify = false;  // cross-check against the LP oracle
    bool brute = false;   // also run exhaustive search (tiny horizons only)
    double tolerance = kCertificateTolerance;
    double verify_tolerance = 1e-6;  // |closed-form bill - LP optimum|
    double grid_step = 0.05;
};

struct BruteCheck {
    double objective = 0.0;
    double bound = 0.0;  // grid_step * T * (c_p + c_s + k)
    bool ok = false;
};

struct VerifyResult {
    double closed_form_bill = 0.0;
    double lp_objective = 0.0;
    double abs_diff = 0.0;
    double lp_residual = 0.0;
    std::size_t lp_iterations = 0;
    bool lp_complementarity_ok = false;
    std::optional<BruteCheck> brute;
    bool ok = false;
};

struct PipelineResult {
    std::vector<BalancedEntity> balanced;
    std::vector<ChargeBound> bounds;
    CommunityAggregate aggregate;
    Schedule schedule;
    OptimalityCertificate certificate;
    std::vector<FeasibilityViolation> feasibility;
    CostReport report;
    std::vector<EntitySchedule> entity_schedules;
    std::optional<VerifyResult> verify;

    bool ok() const { return certificate.ok() && feasibility.empty() && (!verify || verify->ok); }
};

// balance -> aggregate -> optimise -> certify -> (verify) -> report
PipelineResult run_pipeline(const ValidatedScenario& scenario, const PipelineOptions& options = {});

// Currency amounts rounded to cents; energies at full precision.
nlohmann::json report_json(const ValidatedScenario& scenario, const PipelineResult& result);
nlohmann::json certificate_json(const OptimalityCertificate& certificate);

// t,L,R,A0,As,Ec,Ed,S,G with one row per slot (S is the level at slot start).
void write_timeseries_csv(std::ostream& out, const PipelineResult& result);
// t,S with T+1 rows.
void write_soc_csv(std::ostream& out, const Schedule& schedule);
// entity,t,charge,discharge,soc; a final row per entity carries soc(T).
void write_entities_csv(std::ostream& out, const std::vector<EntitySchedule>& schedules);
// entity,kind,t,rho,rho_prime
void write_balance_csv(std::ostream& out, const ValidatedScenario& scenario,
                       const std::vector<BalancedEntity>& balanced);
// t,L,R,Ebar,A0,P,slot_set
void write_aggregate_csv(std::ostream& out, const CommunityAggregate& agg);

// report.json, timeseries.csv, soc.csv, entities.csv under out_dir.
void write_artifacts(const std::filesystem::path& out_dir, const ValidatedScenario& scenario,
                     const PipelineResult& result);

}  // namespace recopt
