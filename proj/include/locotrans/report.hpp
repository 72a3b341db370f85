#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "locotrans/bench.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/metrics.hpp"
#include "locotrans/pipeline.hpp"

namespace locotrans {

/// `t,state_before,kind,feature_value,fired`, one row per decision.
void write_decision_log(std::ostream& out, const std::vector<TransitionDecision>& log);

/// Inverse of write_decision_log. Throws SchemaError / RowError.
std::vector<TransitionDecision> read_decision_log(std::istream& in);

/// `transition,n_correct,n_total,accuracy_pct` plus a closing `total` row.
void write_accuracy_csv(std::ostream& out, const AccuracyReport& report);
nlohmann::json accuracy_to_json(const AccuracyReport& report);

/// Fixed-width table of the training summary.
std::string format_train_summary(const TrainResult& result);
nlohmann::json train_summary_to_json(const TrainResult& result);

/// One row per classifier x method (12), with the TH/ML median ratio.
void write_bench_csv(std::ostream& out, const BenchReport& report);
/// Summary plus raw latencies; includes the clock note and, when measured,
/// the whole-FSM replay timing.
nlohmann::json bench_to_json(const BenchReport& report);
std::string format_bench_table(const BenchReport& report);

}  // namespace locotrans
