#pragma once

#include <cstdint>

#include <json.hpp>

#include "bethe_overlap/kernels.hpp"

namespace bethe_overlap {

using Json = nlohmann::ordered_json;

/// {"re": "p/q", "im": "p/q"} for exact values, decimal strings for floats.
Json scalar_to_json(const Scalar& x);
Json params_to_json(const ParamSet& s);
std::string real_to_string(const Real& x, int digits = 12);

/// Accepts "p/q" / decimal strings, numbers, or {"re": ..., "im": ...}.
/// Exact mode rejects decimals; float mode parses rationals exactly and rounds.
Scalar scalar_from_json(const Json& j, ScalarMode mode, unsigned bits);
ParamSet params_from_json(const Json& j, ScalarMode mode, unsigned bits, std::string label = {});

std::uint64_t fnv1a(const std::string& data);
/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace bethe_overlap
