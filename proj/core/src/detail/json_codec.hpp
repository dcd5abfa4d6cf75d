#pragma once

// Value literals and TickRecords as JSON. Private to the library: the
// public headers never expose nlohmann types.

#include <json.hpp>

#include "dynes/engine/config.hpp"
#include "dynes/engine/engine.hpp"
#include "dynes/values/value.hpp"
#include "dynes/wm/working_memory.hpp"

namespace dynes::detail {

using ojson = nlohmann::ordered_json;

/// number, string (symbol or term), boolean, {"inexact":[c,h]},
/// {"set":[...]}, {"range":[lo,hi]}, {"mf":[[x,mu],...]}. Certainty other
/// than 1 wraps the literal: {"value": <literal>, "cf": c}.
ojson encode_value(const Value& v);
/// std::invalid_argument on anything that is not a value literal.
Value decode_value(const nlohmann::json& j);
Value decode_value(const ojson& j);

ojson encode_truth(TruthValue t);
ojson encode_fact(const Fact& f);
ojson encode_record(const TickRecord& rec);
ojson encode_config(const EngineConfig& c);
/// Keys absent from `j` keep their defaults; unknown keys are rejected.
EngineConfig decode_config(const nlohmann::json& j, EngineConfig base = {});

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace dynes::detail
