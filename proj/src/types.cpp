#include "locotrans/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "locotrans/error.hpp"

namespace locotrans {
namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trimmed(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Mode parse_mode(std::string_view name) {
  const std::string key = lowercase(trimmed(name));
  if (key == "sit") return Mode::Sit;
  if (key == "walk" || key == "stand" || key == "ramp") return Mode::Walk;
  if (key == "stair_ascent") return Mode::StairAscent;
  if (key == "stair_descent") return Mode::StairDescent;
  throw ParseError("unknown locomotion mode '" + std::string(name) + "'");
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Sit:
      return "sit";
    case Mode::Walk:
      return "walk";
    case Mode::StairAscent:
      return "stair_ascent";
    case Mode::StairDescent:
      return "stair_descent";
  }
  return "walk";
}

TransitionKind parse_transition(std::string_view name) {
  std::string key = trimmed(name);
  // Normalise the unicode arrow (UTF-8 E2 86 92) to "->".
  const std::string arrow = "\xE2\x86\x92";
  if (auto pos = key.find(arrow); pos != std::string::npos) {
    key.replace(pos, arrow.size(), "->");
  }
  key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (TransitionKind k : kAllTransitions) {
    if (key == to_string(k)) return k;
  }
  throw ParseError("unknown transition '" + std::string(name) + "'");
}

std::string_view to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::WalkToSit:
      return "W->S";
    case TransitionKind::SitToWalk:
      return "S->W";
    case TransitionKind::WalkToStairAscent:
      return "W->SA";
    case TransitionKind::StairAscentToWalk:
      return "SA->W";
    case TransitionKind::WalkToStairDescent:
      return "W->SD";
    case TransitionKind::StairDescentToWalk:
      return "SD->W";
  }
  return "W->S";
}

EventKind parse_event_kind(std::string_view name) {
  const std::string key = lowercase(trimmed(name));
  if (key == "mhf") return EventKind::MaxHipFlexion;
  if (key == "hs") return EventKind::HeelStrike;
  if (key == "band_crossing") return EventKind::BandCrossing;
  throw ParseError("unknown event kind '" + std::string(name) + "'");
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::MaxHipFlexion:
      return "mhf";
    case EventKind::HeelStrike:
      return "hs";
    case EventKind::BandCrossing:
      return "band_crossing";
  }
  return "mhf";
}

IcfKind parse_icf_kind(std::string_view name) {
  const std::string key = lowercase(trimmed(name));
  if (key == "icf1") return IcfKind::Icf1;
  if (key == "icf2") return IcfKind::Icf2;
  if (key == "icf3") return IcfKind::Icf3;
  throw ParseError("unknown ICF kind '" + std::string(name) + "'");
}

std::string_view to_string(IcfKind k) {
  switch (k) {
    case IcfKind::Icf1:
      return "icf1";
    case IcfKind::Icf2:
      return "icf2";
    case IcfKind::Icf3:
      return "icf3";
  }
  return "icf1";
}

}  // namespace locotrans
