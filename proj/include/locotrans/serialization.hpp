#pragma once

// JSON encoding of the core types. Used by the report files, the model bank
// and the python bindings' dict round-trips.

#include <string>

#include "json.hpp"
#include "locotrans/types.hpp"

namespace locotrans {

using nlohmann::json;

void to_json(json& j, Mode m);
void from_json(const json& j, Mode& m);
void to_json(json& j, TransitionKind k);
void from_json(const json& j, TransitionKind& k);
void to_json(json& j, EventKind k);
void from_json(const json& j, EventKind& k);
void to_json(json& j, IcfKind k);
void from_json(const json& j, IcfKind& k);

void to_json(json& j, const GaitSample& s);
void from_json(const json& j, GaitSample& s);
void to_json(json& j, const GaitEvent& e);
void from_json(const json& j, GaitEvent& e);
void to_json(json& j, const IcfValue& v);
void from_json(const json& j, IcfValue& v);
void to_json(json& j, const TransitionDecision& d);
void from_json(const json& j, TransitionDecision& d);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Strict decimal parse of a whole field; nullopt-like failure is signalled
/// by returning false.
bool parse_double(std::string_view text, double& out);

}  // namespace locotrans
