#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bethe_overlap/serialize.hpp"

namespace bethe_overlap {

inline constexpr const char* kReportSchema = "bethe-overlap/1";
inline constexpr const char* kVersion = "1.0.0";

struct VerifyConfig {
  ScalarMode mode = ScalarMode::exact;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::uint64_t seed = 1;
  std::size_t max_set_size = 3;
  std::size_t max_chain_length = 3;
  int instances = 3;
  /// Relative tolerance for float-mode comparisons.
  double float_tol = 1e-30;
  std::vector<std::string> suites;
};

/// One checked identity.
struct CheckRecord {
  std::string name;
  std::string identity;  ///< which relation the check exercises
  std::string inputs_digest;
  Json lhs;
  Json rhs;
  std::string residual;
  bool pass = false;
  std::string error;
};

struct Report {
  std::string command;
  Json config;
  std::vector<CheckRecord> records;

  std::size_t passed() const;
  std::size_t failed() const;
  bool all_pass() const { return failed() == 0; }
  /// Orders records by name.
  void finalize();
};

const std::vector<std::string>& known_suites();

/// exact: lhs == rhs; float: |lhs - rhs| <= tol max(|lhs|, |rhs|, scale).
CheckRecord compare_record(std::string name, std::string identity, const Json& inputs, const Scalar& lhs,
                           const Scalar& rhs, double tol, const Real& scale = 0);
CheckRecord error_record(std::string name, std::string identity, const Json& inputs, const std::string& what);
/// A pass/fail record carrying a single value (e.g. a solver residual).
CheckRecord value_record(std::string name, std::string identity, const Json& inputs, const Json& value, bool pass,
                         const std::string& residual = {});

/// Runs the selected suites sequentially. Unknown suite names raise ConfigError.
Report run_verify(const VerifyConfig& config);

Json report_to_json(const Report& report);

}  // namespace bethe_overlap
