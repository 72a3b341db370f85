#include "locotrans/serialization.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "locotrans/error.hpp"

namespace locotrans {

void to_json(json& j, Mode m) { j = std::string(to_string(m)); }
void from_json(const json& j, Mode& m) { m = parse_mode(j.get<std::string>()); }

void to_json(json& j, TransitionKind k) { j = std::string(to_string(k)); }
void from_json(const json& j, TransitionKind& k) {
  k = parse_transition(j.get<std::string>());
}

void to_json(json& j, EventKind k) { j = std::string(to_string(k)); }
void from_json(const json& j, EventKind& k) {
  k = parse_event_kind(j.get<std::string>());
}

void to_json(json& j, IcfKind k) { j = std::string(to_string(k)); }
void from_json(const json& j, IcfKind& k) {
  k = parse_icf_kind(j.get<std::string>());
}

void to_json(json& j, const GaitSample& s) {
  j = json{{"t", s.t},
           {"theta_th", s.theta},
           {"theta_dot_th", s.theta_dot},
           {"load", s.load}};
}

void from_json(const json& j, GaitSample& s) {
  j.at("t").get_to(s.t);
  j.at("theta_th").get_to(s.theta);
  j.at("theta_dot_th").get_to(s.theta_dot);
  j.at("load").get_to(s.load);
}

void to_json(json& j, const GaitEvent& e) {
  j = json{{"kind", e.kind},
           {"t", e.t},
           {"theta_th", e.theta},
           {"theta_dot_th", e.theta_dot}};
}

void from_json(const json& j, GaitEvent& e) {
  j.at("kind").get_to(e.kind);
  j.at("t").get_to(e.t);
  j.at("theta_th").get_to(e.theta);
  j.at("theta_dot_th").get_to(e.theta_dot);
}

void to_json(json& j, const IcfValue& v) {
  j = json{{"icf", v.kind}, {"value", v.value}};
}

void from_json(const json& j, IcfValue& v) {
  j.at("icf").get_to(v.kind);
  j.at("value").get_to(v.value);
  if (v.kind == IcfKind::Icf3 && v.value != -1.0 && v.value != 0.0 &&
      v.value != 1.0) {
    throw SchemaError("ICF-3 value must be -1, 0 or +1");
  }
}

void to_json(json& j, const TransitionDecision& d) {
  j = json{{"t", d.t},
           {"state_before", d.mode_before},
           {"kind", d.kind},
           {"feature", d.feature},
           {"fired", d.fired}};
}

void from_json(const json& j, TransitionDecision& d) {
  j.at("t").get_to(d.t);
  j.at("state_before").get_to(d.mode_before);
  j.at("kind").get_to(d.kind);
  j.at("feature").get_to(d.feature);
  j.at("fired").get_to(d.fired);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("cannot format double");
  return std::string(buf, end);
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace locotrans
