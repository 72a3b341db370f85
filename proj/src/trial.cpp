#include "locotrans/trial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "locotrans/error.hpp"
#include "locotrans/serialization.hpp"

namespace locotrans {

namespace fs = std::filesystem;

double foot_height_to_load(double foot_height, const LoadProxy& proxy) {
  return foot_height <= proxy.contact_height ? proxy.contact_load : 0.0;
}

std::vector<GaitSample> derive_velocity(std::vector<GaitSample> s) {
  const std::size_t n = s.size();
  if (n < 2) throw InsufficientDataError("velocity needs at least 2 samples");
  std::vector<double> v(n);
  v[0] = (s[1].theta - s[0].theta) / (s[1].t - s[0].t);
  v[n - 1] = (s[n - 1].theta - s[n - 2].theta) / (s[n - 1].t - s[n - 2].t);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    v[i] = (s[i + 1].theta - s[i - 1].theta) / (s[i + 1].t - s[i - 1].t);
  }
  for (std::size_t i = 0; i < n; ++i) s[i].theta_dot = v[i];
  return s;
}

Mode mode_at(const std::vector<Annotation>& annotations, double t) {
  if (annotations.empty()) throw LabelingError("trial has no annotations");
  Mode m = annotations.front().mode;
  for (const Annotation& a : annotations) {
    if (a.t > t) break;
    m = a.mode;
  }
  return m;
}

void validate_trial(const Trial& trial) {
  const auto& s = trial.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t row = i + 1;
    if (!std::isfinite(s[i].t) || !std::isfinite(s[i].theta) ||
        !std::isfinite(s[i].theta_dot) || !std::isfinite(s[i].load)) {
      throw RowError(row, "non-finite value");
    }
    if (std::abs(s[i].theta) >= 180.0) throw RowError(row, "|theta_th| >= 180");
    if (i > 0 && !(s[i].t > s[i - 1].t)) {
      throw RowError(row, "t does not increase");
    }
  }
  const auto& a = trial.annotations;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i].t)) throw SchemaError("annotation time is not finite");
    if (i > 0 && a[i].t < a[i - 1].t) {
      throw SchemaError("annotation times decrease at entry " + std::to_string(i + 1));
    }
    if (!s.empty() && (a[i].t < s.front().t || a[i].t > s.back().t)) {
      throw SchemaError("annotation at t=" + format_double(a[i].t) +
                        " lies outside the sample range");
    }
  }
}

fs::path annotation_path(const fs::path& trial_csv) {
  fs::path p = trial_csv;
  p.replace_filename(trial_csv.stem().string() + ".annotations.csv");
  return p;
}

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) {
    v.remove_suffix(1);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

// A label cell holds a mode name, or a transition whose target is the new mode.
Mode parse_label(std::string_view cell) {
  try {
    return parse_mode(cell);
  } catch (const ParseError&) {
    try {
      return target(parse_transition(cell));
    } catch (const ParseError&) {
      throw ParseError("unknown label '" + std::string(cell) + "'");
    }
  }
}

std::vector<Annotation> read_annotations(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file");
  const auto header = split(line);
  if (header.size() != 2 || header[0] != "t" || header[1] != "mode") {
    throw SchemaError(path.string() + ": header must be 't,mode'");
  }
  std::vector<Annotation> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    ++row;
    const auto cells = split(line);
    if (cells.size() != 2) throw RowError(row, "expected 2 columns");
    Annotation a;
    if (!parse_double(cells[0], a.t)) throw RowError(row, "bad t");
    try {
      a.mode = parse_label(cells[1]);
    } catch (const ParseError& e) {
      throw RowError(row, e.what());
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace

Trial load_trial(const fs::path& path, const LoadProxy& proxy) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = split(line);
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto c_t = column("t");
  const auto c_theta = column("theta_th");
  const auto c_dot = column("theta_dot_th");
  const auto c_load = column("load");
  const auto c_foot = column("foot_height");
  const auto c_label = column("label");
  if (!c_t) throw SchemaError(path.string() + ": missing column 't'");
  if (!c_theta) throw SchemaError(path.string() + ": missing column 'theta_th'");
  if (!c_load && !c_foot) throw SchemaError(path.string() + ": missing column 'load'");

  Trial trial;
  trial.id = path.stem().string();
  std::vector<std::optional<Mode>> labels;
  std::size_t row = 0;
  auto number = [&](const std::vector<std::string_view>& cells, std::size_t col,
                    const char* name) {
    double v = 0.0;
    if (!parse_double(cells[col], v)) {
      throw RowError(row, std::string("cannot parse ") + name + " '" +
                              std::string(cells[col]) + "'");
    }
    if (!std::isfinite(v)) throw RowError(row, std::string(name) + " is not finite");
    return v;
  };
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    ++row;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw RowError(row, "expected " + std::to_string(header.size()) + " columns, got " +
                              std::to_string(cells.size()));
    }
    GaitSample s;
    s.t = number(cells, *c_t, "t");
    s.theta = number(cells, *c_theta, "theta_th");
    if (c_dot) s.theta_dot = number(cells, *c_dot, "theta_dot_th");
    s.load = c_load ? number(cells, *c_load, "load")
                    : foot_height_to_load(number(cells, *c_foot, "foot_height"), proxy);
    if (!trial.samples.empty() && !(s.t > trial.samples.back().t)) {
      throw RowError(row, "t does not increase");
    }
    if (std::abs(s.theta) >= 180.0) throw RowError(row, "|theta_th| >= 180");
    trial.samples.push_back(s);
    if (c_label && !cells[*c_label].empty()) {
      try {
        labels.push_back(parse_label(cells[*c_label]));
      } catch (const ParseError& e) {
        throw RowError(row, e.what());
      }
    } else {
      labels.push_back(std::nullopt);
    }
  }
  if (trial.samples.empty()) throw InsufficientDataError(path.string() + ": no data rows");
  if (!c_dot) trial.samples = derive_velocity(std::move(trial.samples));

  const fs::path sidecar = annotation_path(path);
  if (fs::exists(sidecar)) {
    trial.annotations = read_annotations(sidecar);
  } else {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i]) continue;
      if (trial.annotations.empty() || trial.annotations.back().mode != *labels[i]) {
        trial.annotations.push_back({trial.samples[i].t, *labels[i]});
      }
    }
  }
  validate_trial(trial);
  return trial;
}

void save_trial(const Trial& trial, const fs::path& path) {
  validate_trial(trial);
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << "t,theta_th,theta_dot_th,load,label\n";
    for (const GaitSample& s : trial.samples) {
      out << format_double(s.t) << ',' << format_double(s.theta) << ','
          << format_double(s.theta_dot) << ',' << format_double(s.load) << ',';
      if (trial.annotated()) out << to_string(mode_at(trial.annotations, s.t));
      out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
  }
  const fs::path sidecar = annotation_path(path);
  if (trial.annotated()) {
    std::ofstream out(sidecar, std::ios::binary);
    if (!out) throw DataError("cannot write " + sidecar.string());
    out << "t,mode\n";
    for (const Annotation& a : trial.annotations) {
      out << format_double(a.t) << ',' << to_string(a.mode) << '\n';
    }
  } else if (fs::exists(sidecar)) {
    fs::remove(sidecar);
  }
}

std::vector<Trial> load_trials(const fs::path& path, const LoadProxy& proxy) {
  if (!fs::exists(path)) throw DataError(path.string() + " does not exist");
  if (!fs::is_directory(path)) return {load_trial(path, proxy)};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".annotations.csv") || name.ends_with(".decisions.csv")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Trial> trials;
  trials.reserve(files.size());
  for (const auto& f : files) trials.push_back(load_trial(f, proxy));
  return trials;
}

}  // namespace locotrans
