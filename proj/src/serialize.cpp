#include "bethe_overlap/serialize.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace bethe_overlap {

namespace {

std::string component_string(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw ConfigError("scalar component must be a string or a number");
}

bool looks_rational(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+')) return false;
  }
  return true;
}

Scalar parse(const std::string& re, const std::string& im, ScalarMode mode, unsigned bits) {
  if (looks_rational(re) && looks_rational(im)) {
    Scalar x;
    try {
      x = Scalar::exact(re, im);
    } catch (const std::exception& e) {
      throw ConfigError("malformed rational '" + re + "', '" + im + "'");
    }
    return mode == ScalarMode::exact ? x : x.to_floating(bits);
  }
  if (mode == ScalarMode::exact) throw ConfigError("decimal value '" + re + "' is not allowed in exact mode");
  PrecisionScope scope(bits);
  try {
    return Scalar::floating(re, im, bits);
  } catch (const std::exception&) {
    throw ConfigError("malformed decimal '" + re + "', '" + im + "'");
  }
}

}  // namespace

std::string real_to_string(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

// "p/q" with the denominator always present.
std::string rational_string(const mpq_class& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

Json scalar_to_json(const Scalar& x) {
  Json j;
  if (x.is_exact()) {
    j["re"] = rational_string(x.as_exact().re);
    j["im"] = rational_string(x.as_exact().im);
  } else {
    const int digits = static_cast<int>(digits10_for_bits(x.precision_bits())) - 2;
    j["re"] = real_to_string(x.as_float().re, digits);
    j["im"] = real_to_string(x.as_float().im, digits);
  }
  return j;
}

Json params_to_json(const ParamSet& s) {
  Json arr = Json::array();
  for (const auto& x : s) arr.push_back(scalar_to_json(x));
  return arr;
}

Scalar scalar_from_json(const Json& j, ScalarMode mode, unsigned bits) {
  if (j.is_object()) {
    if (!j.contains("re")) throw ConfigError("complex scalar needs a 're' field");
    const std::string im = j.contains("im") ? component_string(j["im"]) : std::string("0");
    return parse(component_string(j["re"]), im, mode, bits);
  }
  return parse(component_string(j), "0", mode, bits);
}

ParamSet params_from_json(const Json& j, ScalarMode mode, unsigned bits, std::string label) {
  if (!j.is_array()) throw ConfigError("parameter set must be a JSON array");
  std::vector<Scalar> out;
  for (const auto& e : j) out.push_back(scalar_from_json(e, mode, bits));
  return ParamSet(std::move(out), std::move(label));
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a_hex(const std::string& data) {
  const std::uint64_t h = fnv1a(data);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bethe_overlap
