#include "locotrans/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "locotrans/error.hpp"
#include "locotrans/serialization.hpp"

namespace locotrans {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* kClockNote =
    "steady_clock, single thread, default scheduler (no priority or affinity changes)";

}  // namespace

void write_decision_log(std::ostream& out, const std::vector<TransitionDecision>& log) {
  out << "t,state_before,kind,feature_value,fired\n";
  for (const TransitionDecision& d : log) {
    out << format_double(d.t) << ',' << to_string(d.mode_before) << ',' << to_string(d.kind)
        << ',' << format_double(d.feature.value) << ',' << (d.fired ? 1 : 0) << '\n';
  }
}

std::vector<TransitionDecision> read_decision_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("decision log is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,state_before,kind,feature_value,fired") {
    throw SchemaError("decision log header must be 't,state_before,kind,feature_value,fired'");
  }
  std::vector<TransitionDecision> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto cells = split_csv(line);
    if (cells.size() != 5) throw RowError(row, "expected 5 columns");
    TransitionDecision d;
    try {
      d.mode_before = parse_mode(cells[1]);
      d.kind = parse_transition(cells[2]);
    } catch (const ParseError& e) {
      throw RowError(row, e.what());
    }
    if (!parse_double(cells[0], d.t)) throw RowError(row, "bad t");
    d.feature.kind = feature_of(d.kind);
    if (!parse_double(cells[3], d.feature.value)) throw RowError(row, "bad feature_value");
    if (cells[4] != "0" && cells[4] != "1") throw RowError(row, "fired must be 0 or 1");
    d.fired = cells[4] == "1";
    out.push_back(d);
  }
  return out;
}

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report) {
  out << "transition,n_correct,n_total,accuracy_pct\n";
  auto row = [&](std::string_view name, const TransitionAccuracy& a) {
    out << name << ',' << a.n_correct << ',' << a.n_total << ','
        << (a.n_total ? format_double(a.accuracy_pct()) : std::string()) << '\n';
  };
  for (TransitionKind k : kAllTransitions) row(to_string(k), report.at(k));
  row("total", report.total());
}

json accuracy_to_json(const AccuracyReport& report) {
  json per = json::object();
  for (TransitionKind k : kAllTransitions) {
    const TransitionAccuracy& a = report.at(k);
    per[std::string(to_string(k))] = {{"n_correct", a.n_correct},
                                      {"n_total", a.n_total},
                                      {"accuracy_pct", number_or_null(a.accuracy_pct())}};
  }
  const TransitionAccuracy t = report.total();
  return {{"per_transition", per},
          {"total",
           {{"n_correct", t.n_correct},
            {"n_total", t.n_total},
            {"accuracy_pct", number_or_null(t.accuracy_pct())}}}};
}

std::string format_train_summary(const TrainResult& r) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-6s %-20s %10s %-6s %9s %9s %7s %7s\n", "edge", "algorithm",
                "threshold", "fires", "train%", "test%", "n_train", "n_test");
  out << buf;
  for (const TrainSummaryRow& row : r.summary) {
    const std::string test = row.test_accuracy ? fixed(100.0 * *row.test_accuracy, 2) : "-";
    std::snprintf(buf, sizeof buf, "%-6s %-20s %10s %-6s %9s %9s %7zu %7zu\n",
                  std::string(to_string(row.kind)).c_str(),
                  std::string(to_string(row.algorithm)).c_str(), fixed(row.threshold, 4).c_str(),
                  row.fire_above ? ">=" : "<=", fixed(100.0 * row.train_accuracy, 2).c_str(),
                  test.c_str(), row.n_train, row.n_test);
    out << buf;
  }
  out << "split: " << r.split.train.size() << " train / " << r.split.test.size() << " test / "
      << r.split.validation.size() << " validation trials (seed " << r.split.seed << ")\n";
  return out.str();
}

json train_summary_to_json(const TrainResult& r) {
  json rows = json::array();
  for (const TrainSummaryRow& row : r.summary) {
    rows.push_back({{"transition", std::string(to_string(row.kind))},
                    {"algorithm", std::string(to_string(row.algorithm))},
                    {"threshold", number_or_null(row.threshold)},
                    {"fire_above", row.fire_above},
                    {"train_accuracy", row.train_accuracy},
                    {"test_accuracy", row.test_accuracy ? json(*row.test_accuracy) : json(nullptr)},
                    {"logistic_train_accuracy", row.logistic_train_accuracy},
                    {"svm_train_accuracy", row.svm_train_accuracy},
                    {"n_train", row.n_train},
                    {"n_train_positive", row.n_train_positive},
                    {"n_test", row.n_test}});
  }
  return {{"classifiers", rows},
          {"split",
           {{"train", r.split.train},
            {"test", r.split.test},
            {"validation", r.split.validation},
            {"seed", r.split.seed},
            {"degenerate", r.split.degenerate}}}};
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "transition,method,cycles,median_s,q1_s,q3_s,th_ml_ratio\n";
  for (const BenchResult& r : report.results) {
    out << to_string(r.kind) << ',' << to_string(r.method) << ',' << r.cycles << ','
        << format_double(r.median) << ',' << format_double(r.q1) << ',' << format_double(r.q3)
        << ',' << format_double(report.ratio(r.kind)) << '\n';
  }
}

json bench_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const BenchResult& r : report.results) {
    rows.push_back({{"transition", std::string(to_string(r.kind))},
                    {"method", std::string(to_string(r.method))},
                    {"cycles", r.cycles},
                    {"median_s", r.median},
                    {"q1_s", r.q1},
                    {"q3_s", r.q3},
                    {"latencies_s", r.latencies}});
  }
  json ratios = json::object();
  for (TransitionKind k : kAllTransitions) {
    ratios[std::string(to_string(k))] = number_or_null(report.ratio(k));
  }
  json replay = json::array();
  for (const ReplayTiming& t : report.replay) {
    replay.push_back({{"method", std::string(to_string(t.method))},
                      {"cycles", t.cycles},
                      {"samples", t.samples},
                      {"median_s_per_sample", t.median},
                      {"q1_s_per_sample", t.q1},
                      {"q3_s_per_sample", t.q3}});
  }
  json j{{"clock",
          {{"resolution_s", report.clock.resolution},
           {"coarse", report.clock.coarse},
           {"note", kClockNote}}},
         {"options",
          {{"cycles", report.options.cycles},
           {"warmup", report.options.warmup},
           {"batch", report.options.batch},
           {"seed", report.options.seed}}},
         {"results", rows},
         {"th_ml_median_ratio", ratios},
         {"fsm_replay", replay}};
  if (report.clock.coarse) {
    j["warning"] = "clock resolution is coarser than 1 us; latencies are batch averages";
  }
  return j;
}

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  char buf[256];
  out << "# " << kClockNote << "; resolution " << fixed(report.clock.resolution * 1e9, 1)
      << " ns\n";
  if (report.clock.coarse) out << "# WARNING: clock resolution is coarser than 1 us\n";
  std::snprintf(buf, sizeof buf, "%-6s %-3s %7s %12s %12s %12s %8s\n", "edge", "m", "cycles",
                "median_ns", "q1_ns", "q3_ns", "TH/ML");
  out << buf;
  for (const BenchResult& r : report.results) {
    std::snprintf(buf, sizeof buf, "%-6s %-3s %7zu %12s %12s %12s %8s\n",
                  std::string(to_string(r.kind)).c_str(), std::string(to_string(r.method)).c_str(),
                  r.cycles, fixed(r.median * 1e9, 2).c_str(), fixed(r.q1 * 1e9, 2).c_str(),
                  fixed(r.q3 * 1e9, 2).c_str(),
                  r.method == Method::Threshold ? fixed(report.ratio(r.kind), 3).c_str() : "");
    out << buf;
  }
  for (const ReplayTiming& t : report.replay) {
    std::snprintf(buf, sizeof buf, "fsm    %-3s %7zu %12s %12s %12s  (per sample, %zu samples)\n",
                  std::string(to_string(t.method)).c_str(), t.cycles,
                  fixed(t.median * 1e9, 2).c_str(), fixed(t.q1 * 1e9, 2).c_str(),
                  fixed(t.q3 * 1e9, 2).c_str(), t.samples);
    out << buf;
  }
  return out.str();
}

}  // namespace locotrans
